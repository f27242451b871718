#pragma once

#include <stdexcept>
#include <string>

namespace sipp {

enum class ErrorKind {
  DimensionMismatch,
  Singular,
  InvalidInput,
  Precondition,
  DimensionCapped,
  Nonexistence,
  Parse,
};

/// Single exception type for every operational failure in the toolkit.
/// Mathematical negatives (a matrix lacking the SIPP, an unrealizable
/// target) are reported as values, never thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind);

}  // namespace sipp
