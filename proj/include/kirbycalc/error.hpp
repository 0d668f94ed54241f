#pragma once

#include <stdexcept>
#include <string>

namespace kirbycalc {

/// Machine-readable category of a failure; the CLI maps these to exit codes.
enum class ErrorKind {
  kSchema,
  kConsistency,
  kDottedLink,
  kPreconditionFailed,
  kPdPresent,
  kMissingPd,
  kResourceLimit,
  kNotModular,
  kInvalidTarget,
  kNonInvertibleCp2,
  kNotInjectiveLabelMap,
  kUnknownManifold,
  kNonPositiveGlobalDimension,
  kZeroDimension,
  kInvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace kirbycalc
