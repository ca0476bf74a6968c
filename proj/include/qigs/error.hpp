#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qigs {

enum class ErrorKind {
  parse,
  invalid_argument,
  odd_size_sector,
  empty_sector,
  budget,
  rejection,
  io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `what()` carries the detail only;
/// the kind is rendered separately so the CLI can print `error: <kind>: <detail>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qigs
