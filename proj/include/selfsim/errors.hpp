#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

// Malformed or inconsistent input data (CLI exit code 3).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold (CLI exit code 3).
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A configurable combinatorial budget was exceeded (CLI exit code 4).
// Never a silent truncation: the partial computation is discarded.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selfsim
