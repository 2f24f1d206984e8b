#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "archlint/errors.hpp"

namespace archlint::test_support {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(ARCHLINT_TEST_DATA_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read test data file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Runs `fn`, returning the structured error code it threw, or nullopt if it
/// returned normally. Lets assertions name the exact expected errc.
template <typename Fn>
std::optional<errc> thrown_code(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

} // namespace archlint::test_support
