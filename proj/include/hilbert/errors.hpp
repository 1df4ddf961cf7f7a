#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

enum class ErrorKind {
  InvalidInput,
  Domain,
  Degenerate,
  Index,
  Parameter,
  DivergentTail,
  AccuracyNotReached,
  InsufficientTruncation,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. `kind()` lets callers
/// (and tests) distinguish the failure class without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hilbert
