#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlab {

enum class ErrorKind {
  DegeneratePoint,
  InvalidSpec,
  ParseError,
  UnsupportedOrder,
  NotPositiveDefinite,
  DegeneratePlane,
  ProjectionFailed,
  FrameDegenerate,
  DimensionTooSmall,
  NotProper,
  ZeroVector,
  DimensionMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it to an exit code without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mlab
