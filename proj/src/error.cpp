#include "qigs/error.hpp"

namespace qigs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::odd_size_sector: return "odd-size sector";
    case ErrorKind::empty_sector: return "empty sector";
    case ErrorKind::budget: return "budget";
    case ErrorKind::rejection: return "rejection";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace qigs
