#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcq {

enum class ErrorKind {
  Usage,
  Parse,
  NotASublattice,
  NotSaturated,
  InfiniteIndex,
  ZeroCone,
  NotStrictlyConvex,
  NotAFace,
  NotMaximalCone,
  NotComplete,
  NoTargetCone,
  MonoidNotMapped,
  Validation,
  VerificationFailed,
  InternalConsistency,
};

std::string_view to_string(ErrorKind kind);

// Process exit code associated with an error class:
// 1 usage, 2 parse, 3 validation, 4 internal consistency.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tcq
