#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class ErrorClass { Input, Domain, Assumption, Internal };

class Error : public std::runtime_error {
 public:
  Error(std::string code, ErrorClass cls, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)), cls_(cls) {}
  const std::string& code() const { return code_; }
  ErrorClass error_class() const { return cls_; }

 private:
  std::string code_;
  ErrorClass cls_;
};

#define TORIC_ERROR(Name, Cls)                                                   \
  class Name : public Error {                                                    \
   public:                                                                       \
    explicit Name(const std::string& msg = {}) : Error(#Name, ErrorClass::Cls, msg) {} \
  };

TORIC_ERROR(ParseError, Input)

// lattice
TORIC_ERROR(NotFullRank, Domain)
TORIC_ERROR(ZeroVector, Domain)
TORIC_ERROR(DependentKernel, Domain)

// fan
TORIC_ERROR(NotSimplicial, Input)
TORIC_ERROR(NotComplete, Input)
TORIC_ERROR(NotAFan, Input)
TORIC_ERROR(BadWeights, Input)
TORIC_ERROR(ConeNotInFan, Input)
TORIC_ERROR(RayNotInSupport, Domain)
TORIC_ERROR(RayAlreadyPresent, Domain)
TORIC_ERROR(NotFwps, Domain)

// divisor
TORIC_ERROR(ZeroWeight, Domain)
TORIC_ERROR(DivisorMismatch, Input)

// mmp
TORIC_ERROR(NotExtremal, Domain)
TORIC_ERROR(FlipRequired, Domain)
TORIC_ERROR(NotFlip, Domain)
TORIC_ERROR(NoKNegativeRay, Domain)
TORIC_ERROR(NonTermination, Internal)
TORIC_ERROR(IdentityFailure, Internal)
TORIC_ERROR(NotNef, Input)

// fwps
TORIC_ERROR(KappaOutOfRange, Domain)
TORIC_ERROR(NotWps, Domain)
TORIC_ERROR(TrivialAction, Domain)
TORIC_ERROR(NotPnModP, Domain)
TORIC_ERROR(IsProjectiveSpace, Domain)
TORIC_ERROR(OrbitNotInExc, Domain)

// approx
TORIC_ERROR(OrbitInExc, Domain)
TORIC_ERROR(NotPnDownstream, Domain)
TORIC_ERROR(TerminalResolutionRequired, Domain)
TORIC_ERROR(AssumptionRequired, Assumption)
TORIC_ERROR(NegativeDegree, Domain)
TORIC_ERROR(CurveMissesPoint, Domain)

// casestudy
TORIC_ERROR(NonVanishing, Domain)
TORIC_ERROR(UnsupportedBranchType, Domain)
TORIC_ERROR(DimensionError, Domain)

// A certificate or cross-check failed: a bug, never a user error.
TORIC_ERROR(InvariantViolation, Internal)

#undef TORIC_ERROR

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace toric
