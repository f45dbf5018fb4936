#pragma once

#include <stdexcept>
#include <string>

namespace bfclust {

// Malformed or inconsistent input: bad masses, frame mismatch, asymmetric
// matrices, out-of-range values, invalid partitions.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A problem that is valid but exceeds a documented size cap of an exact
// algorithm (frame width, attracting cluster size, exhaustive enumeration).
class SizeLimitError : public std::length_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace bfclust
