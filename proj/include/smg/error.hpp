#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smg {

// Every domain failure raised by the library carries one of these kinds. The CLI
// prints the kind name on stderr, so the names are part of the external contract.
enum class ErrorKind {
  LoopEdge,
  UnknownNode,
  InvalidLabel,
  DuplicateEdge,
  UndeclaredNode,
  ParseError,
  OverlapError,
  NotDisjoint,
  NotInGround,
  GroundMismatch,
  TooLarge,
  SpecInvalid,
  NotRibbonless,
  NotSummaryGraph,
  NotAncestralGraph,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace smg
