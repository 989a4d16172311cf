#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/fwps.hpp"
#include "toric/mmp.hpp"

namespace toric {

// A rational number or +infinity.
struct ExtRat {
  bool infinite = false;
  Rat value;

  static ExtRat inf() { return {true, Rat(0)}; }
  bool operator==(const ExtRat& o) const { return infinite == o.infinite && (infinite || value == o.value); }
};
std::string to_string(const ExtRat& x);

struct Branch {
  Int m = 1;  // multiplicity of the branch
  int r = 1;  // 0, 1 or 2 by the residue field of the branch point
};
using BranchData = std::vector<Branch>;

// min over branches of d / (r m); branches with r = 0 contribute infinity.
ExtRat alpha_rational_curve(const Rat& d, const BranchData& branches);

struct QuadraticField {
  Int d;  // squarefree, field Q(sqrt d)
  bool in_k = false;
  bool in_kv = false;
};

struct ArithmeticContext {
  bool k_is_q = true;
  std::vector<QuadraticField> quadratics;

  // Throws ParseError on inconsistent declarations.
  void validate() const;
  // r for a branch point with residue field Q(sqrt d); d = 1 means rational.
  // Throws AssumptionRequired when the field is not declared.
  int branch_r(const Int& d) const;
};

// Curve on step i + 1's fan carried back to step i's fan.
CurveCertificate transport_curve(const MmpChain& chain, std::size_t i, const CurveCertificate& downstream);

// Strict transform of a line through P and a point of the blown-up locus, for a divisorial
// step whose target is projective space.
CurveCertificate pn_blowup_line(const MmpStep& step);

// A line through P on a fan isomorphic to projective space.
CurveCertificate projective_line_through(const Fan& pn, const Cone& orbit, const Cone& avoid = {});

struct AValueRecord {
  std::size_t step = 0;
  Rat a;
  Rat alpha;           // (D . C) / m
  Rat alpha_adjusted;  // ((D + aK) . C) / m
  Rat anti_canonical;  // -K . C
  Int multiplicity = 1;
  std::size_t dim = 0;
  bool bound_holds = false;  // (-K . C) / m <= dim
};

AValueRecord a_value_ledger(const Fan& fan, const CurveCertificate& cert, const TorusDivisor& d, const Rat& a);

struct ApproxResult {
  CurveCertificate certificate;
  Rat degree;  // C . D
  ExtRat alpha;
  BranchData branches;
  std::vector<AValueRecord> ledger;
  std::vector<std::string> assumptions;
  std::vector<std::string> provenance;
  std::optional<MmpChain> chain;
  bool projective_space = false;
};

ApproxResult approximation_driver(const Fan& fan, const TorusDivisor& d, const Cone& orbit, const ArithmeticContext& context,
                              bool assume_canonically_bounded);

// Text used whenever the canonical-boundedness flag is missing.
extern const char* const kCanonicalBoundednessNote;

}  // namespace toric
