#pragma once
#include <stdexcept>
#include <string>

namespace patchfold {

// Every failure mode that callers may want to distinguish gets its own code.
// The CLI maps these to exit statuses: input problems -> 2, violated internal
// invariants -> 3.  OverlapDetected is also raised by constructions whose
// contract promises a clean layout.
enum class ErrorCode {
  NonFiniteInput,
  MalformedInput,
  NonConvexInput,
  QuadLateralFace,
  ExactlyHorizontalNormal,
  DegenerateHinge,
  NonPlanarFace,
  DegenerateAngle,
  DegenerateHull,
  NotADisk,
  UnsupportedPatch,
  ObtuseFace,
  RayCrossing,
  NoSafeFlip,
  ContainmentFailure,
  OverlapDetected,
  CombinatorialExplosion,
  GenerationExhausted,
  UnhandledCase,
  InternalInvariant,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace patchfold
