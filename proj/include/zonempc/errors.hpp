#pragma once

#include <stdexcept>
#include <string>

namespace zonempc {

// Bad input files or schemas (CLI exit code 2).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Optimizer failures that should not happen on well-posed problems
// (CLI exit code 3).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zonempc
