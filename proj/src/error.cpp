#include "kirbycalc/error.hpp"

namespace kirbycalc {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "SchemaError";
    case ErrorKind::kConsistency: return "ConsistencyError";
    case ErrorKind::kDottedLink: return "DottedLinkError";
    case ErrorKind::kPreconditionFailed: return "PreconditionFailed";
    case ErrorKind::kPdPresent: return "PdPresentError";
    case ErrorKind::kMissingPd: return "MissingPd";
    case ErrorKind::kResourceLimit: return "ResourceLimit";
    case ErrorKind::kNotModular: return "NotModular";
    case ErrorKind::kInvalidTarget: return "InvalidTarget";
    case ErrorKind::kNonInvertibleCp2: return "NonInvertibleCp2";
    case ErrorKind::kNotInjectiveLabelMap: return "NotInjectiveLabelMap";
    case ErrorKind::kUnknownManifold: return "UnknownManifold";
    case ErrorKind::kNonPositiveGlobalDimension: return "NonPositiveGlobalDimension";
    case ErrorKind::kZeroDimension: return "ZeroDimension";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace kirbycalc
