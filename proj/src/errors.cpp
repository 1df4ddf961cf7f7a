#include "hilbert/errors.hpp"

namespace hilbert {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate-input";
    case ErrorKind::Index: return "index";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::DivergentTail: return "divergent-tail";
    case ErrorKind::AccuracyNotReached: return "accuracy-not-reached";
    case ErrorKind::InsufficientTruncation: return "insufficient-truncation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace hilbert
