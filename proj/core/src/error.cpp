#include "mlab/error.hpp"

namespace mlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::ProjectionFailed: return "ProjectionFailed";
    case ErrorKind::FrameDegenerate: return "FrameDegenerate";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

}  // namespace mlab
