#include "rendezvous/error.hpp"

namespace rendezvous {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSize: return "invalid-size";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::InvalidStart: return "invalid-start";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Exhaustion: return "exhaustion";
  }
  return "unknown";
}

}  // namespace rendezvous
