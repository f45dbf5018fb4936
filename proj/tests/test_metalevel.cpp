#include <doctest.h>

#include <algorithm>
#include <random>

#include "bfclust/error.hpp"
#include "bfclust/metalevel.hpp"
#include "oracles.hpp"

using namespace bfclust;

namespace {

template <class Matrix>
Matrix uniform(std::size_t n, double v) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, v);
  return m;
}

Partition labels(std::vector<std::size_t> l) { return Partition::from_labels(l); }

template <class Matrix>
Matrix permuted(const Matrix& m, const std::vector<std::size_t>& perm) {
  // new index perm[i] holds old item i
  Matrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) out.set(perm[i], perm[j], m(i, j));
  return out;
}

}  // namespace

TEST_CASE("partition canonical form") {
  const auto p = labels({3, 3, 0, 1, 2});
  CHECK(p.labels() == std::vector<std::size_t>{0, 0, 1, 2, 3});
  CHECK(p.cluster_count() == 4);
  CHECK(labels({1, 0, 1}) == labels({0, 1, 0}));
  CHECK_THROWS_AS(labels({0, 2, 2}), InputError);
  CHECK_THROWS_AS(labels({0, 5}), InputError);
  CHECK(Partition::singletons(3).cluster_count() == 3);
  CHECK(Partition::single_cluster(3).cluster_count() == 1);
  const auto c = labels({0, 1, 0, 2}).clusters();
  CHECK(c == std::vector<std::vector<std::size_t>>{{0, 2}, {1}, {3}});
}

TEST_CASE("meta_neg") {
  CHECK(meta_neg(0.4, 0.0) == doctest::Approx(0.4));
  CHECK(meta_neg(1.0, 0.3) == 1.0);
  CHECK(meta_neg(0.5, 0.5) == doctest::Approx(0.75));
  CHECK_THROWS_AS(meta_neg(-0.1, 0.0), InputError);
  CHECK_THROWS_AS(meta_neg(0.1, 1.5), InputError);

  auto internal = uniform<ConflictMatrix>(3, 0.5);
  ConflictMatrix external(3);
  external.set(0, 2, 0.5);
  const auto merged = merge_external_conflict(internal, external);
  CHECK(merged(0, 2) == doctest::Approx(0.75));
  CHECK(merged(0, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(merge_external_conflict(internal, ConflictMatrix(2)), InputError);
}

TEST_CASE("cluster_neg_mass") {
  const auto c = uniform<ConflictMatrix>(4, 0.5);
  const std::vector<std::size_t> single{2};
  const std::vector<std::size_t> trio{1, 2, 3};
  CHECK(cluster_neg_mass(c, single) == 0.0);
  CHECK(cluster_neg_mass(c, trio) == doctest::Approx(0.875).epsilon(1e-15));
  ConflictMatrix hard(3);
  hard.set(1, 2, 1.0);
  const std::vector<std::size_t> pair{1, 2};
  CHECK(cluster_neg_mass(hard, pair) == 1.0);
  const std::vector<std::size_t> bad{0, 7};
  const std::vector<std::size_t> dup{1, 1};
  CHECK_THROWS_AS(cluster_neg_mass(c, bad), InputError);
  CHECK_THROWS_AS(cluster_neg_mass(c, dup), InputError);
}

TEST_CASE("cluster_pos_mass") {
  AttractionMatrix p(3);
  p.set(1, 2, 0.7);
  const std::vector<std::size_t> pair{1, 2};
  CHECK(cluster_pos_mass(p, pair) == doctest::Approx(0.7).epsilon(1e-15));

  const auto half = uniform<AttractionMatrix>(4, 0.5);
  const std::vector<std::size_t> trio{1, 2, 3};
  const double brute = oracle::coverage(half, trio);
  CHECK(brute == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cluster_pos_mass(half, trio) == doctest::Approx(brute).epsilon(1e-12));

  const std::vector<std::size_t> single{0};
  CHECK(cluster_pos_mass(half, single) == 0.0);

  const auto big = uniform<AttractionMatrix>(25, 0.5);
  CHECK_THROWS_AS(cluster_pos_mass(big, oracle::iota(25)), SizeLimitError);
}

TEST_CASE("cluster_pos_mass matches edge-subset enumeration") {
  std::mt19937_64 rng(11);
  for (std::size_t size = 2; size <= 5; ++size) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = oracle::random_matrix<AttractionMatrix>(rng, 7, trial % 3 == 0 ? 0.6 : 1.0);
      std::vector<std::size_t> members = oracle::iota(7);
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(size);
      std::sort(members.begin(), members.end());
      CHECK(std::abs(cluster_pos_mass(p, members) - oracle::coverage(p, members)) <= 1e-12);
    }
  }
}

TEST_CASE("partition level examples") {
  SUBCASE("partition_neg") {
    const auto c = uniform<ConflictMatrix>(3, 0.7);
    CHECK(partition_neg(c, Partition::singletons(3)) == 0.0);
    ConflictMatrix c2(3);
    c2.set(0, 1, 0.4);
    c2.set(0, 2, 0.9);
    CHECK(partition_neg(c2, labels({0, 0, 1})) == doctest::Approx(0.4).epsilon(1e-15));
    ConflictMatrix c4(4);
    c4.set(0, 1, 0.5);
    c4.set(2, 3, 0.5);
    CHECK(partition_neg(c4, labels({0, 0, 1, 1})) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(partition_neg(c4, Partition::singletons(3)), InputError);
  }
  SUBCASE("partition_pos") {
    AttractionMatrix p(4);
    p.set(0, 1, 0.5);
    p.set(2, 3, 0.5);
    CHECK(partition_pos(p, labels({0, 0, 1, 1})) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(partition_pos(p, labels({0, 0, 1, 2})) == 0.0);
    const auto half = uniform<AttractionMatrix>(3, 0.5);
    CHECK(partition_pos(half, Partition::single_cluster(3)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("combine_partition_level") {
  const auto r = combine_partition_level(MetaBpa::attracting(0.6), MetaBpa::conflicting(0.5));
  CHECK(r.adp == doctest::Approx(0.3));
  CHECK(r.nadp == doctest::Approx(0.2));
  CHECK(r.theta == doctest::Approx(0.2));
  CHECK(r.empty == doctest::Approx(0.3));

  const auto neg = MetaBpa::conflicting(0.35);
  const auto a = combine_partition_level(MetaBpa::attracting(0.0), neg);
  CHECK(a.nadp == neg.nadp);
  CHECK(a.theta == neg.theta);
  CHECK(a.adp == 0.0);
  const auto pos = MetaBpa::attracting(0.45);
  const auto b = combine_partition_level(pos, MetaBpa::conflicting(0.0));
  CHECK(b.adp == pos.adp);
  CHECK(b.theta == pos.theta);

  CHECK_THROWS_AS(combine_partition_level(MetaBpa{0.2, 0.1, 0.7, 0.0}, neg), InputError);
  CHECK_THROWS_AS(combine_partition_level(pos, MetaBpa{0.1, 0.2, 0.7, 0.0}), InputError);
}

TEST_CASE("metalevel invariants on random instances") {
  std::mt19937_64 rng(99);
  const std::size_t n = 6;
  std::uniform_int_distribution<std::size_t> label(0, n - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = oracle::random_matrix<ConflictMatrix>(rng, n);
    const auto p = oracle::random_matrix<AttractionMatrix>(rng, n);
    std::vector<std::size_t> raw(n);
    for (auto& l : raw) l = label(rng);
    // compact labels so arbitrary draws form a valid partition
    std::vector<std::size_t> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& l : raw) l = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin());
    const auto part = Partition::from_labels(raw);
    const double neg = partition_neg(c, part);
    const double pos = partition_pos(p, part);

    // relabel clusters
    std::vector<std::size_t> relabel = oracle::iota(part.cluster_count());
    std::shuffle(relabel.begin(), relabel.end(), rng);
    std::vector<std::size_t> rl(n);
    for (std::size_t i = 0; i < n; ++i) rl[i] = relabel[part.labels()[i]];
    const auto same = Partition::from_labels(rl);
    CHECK(partition_neg(c, same) == neg);
    CHECK(partition_pos(p, same) == pos);

    // permute items
    std::vector<std::size_t> perm = oracle::iota(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> pl(n);
    for (std::size_t i = 0; i < n; ++i) pl[perm[i]] = part.labels()[i];
    const auto pp = Partition::from_labels(pl);
    CHECK(std::abs(partition_neg(permuted(c, perm), pp) - neg) <= 1e-12);
    CHECK(std::abs(partition_pos(permuted(p, perm), pp) - pos) <= 1e-12);

    // monotonicity in an intra-cluster pair
    const auto clusters = part.clusters();
    for (const auto& members : clusters) {
      if (members.size() < 2) continue;
      auto c2 = c;
      auto p2 = p;
      const std::size_t i = members[0], j = members[1];
      c2.set(i, j, c(i, j) + (1.0 - c(i, j)) * u(rng));
      p2.set(i, j, p(i, j) + (1.0 - p(i, j)) * u(rng));
      CHECK(partition_neg(c2, part) >= neg);
      CHECK(partition_pos(p2, part) >= pos);
      break;
    }

    const auto combined =
        combine_partition_level(MetaBpa::attracting(pos), MetaBpa::conflicting(neg));
    CHECK(std::abs(combined.total() - 1.0) <= 1e-9);
  }
}

TEST_CASE("vacuous matrices give vacuous partition masses") {
  const ConflictMatrix c(5);
  const AttractionMatrix p(5);
  for (const auto& l : oracle::partitions(5)) {
    const auto part = Partition::from_labels(l);
    CHECK(partition_neg(c, part) == 0.0);
    CHECK(partition_pos(p, part) == 0.0);
  }
}
