#pragma once

// Runs the bfclust executable and captures its exit code and stdout.

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace cli {

struct Result {
  int code = -1;
  std::string out;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

inline std::string tmp_path(const std::string& name) { return std::string(BFCLUST_TEST_TMP) + "/" + name; }

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream(path, std::ios::binary) << contents;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Result run(const std::string& args) {
  static int counter = 0;
  const std::string out = tmp_path("cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("\"") + BFCLUST_EXE + "\" " + args + " > \"" + out + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  return r;
}

inline std::string instance(const std::string& name, const nlohmann::json& doc) {
  const std::string path = tmp_path(name);
  write_file(path, doc.dump());
  return path;
}

}  // namespace cli
