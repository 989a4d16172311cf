#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/approx.hpp"

namespace toric {

using Exponent = std::vector<int>;
using Poly = std::map<Exponent, Rat>;  // zero coefficients are never stored

struct WeightedForm {
  std::vector<Int> weights;
  Int degree;
  Poly terms;

  // Throws BadWeights / DimensionError when a monomial has the wrong weighted degree.
  void validate() const;
  std::string to_string() const;  // x, y, z, then w0, w1, ... beyond three variables
};

// Exponents of weighted degree d, by descending total degree, ties lexicographically descending.
std::vector<Exponent> monomial_basis(const std::vector<Int>& q, const Int& d);

// Form whose coefficient on monomial_basis(q, d)[i] is coeffs[i].
WeightedForm form_from_coefficients(const std::vector<Int>& q, const Int& d, const RatVec& coeffs);

Rat evaluate_at_one(const Poly& f);

struct TangentReport {
  int multiplicity = 0;
  // Lowest form of f(1 + u) restricted to u_2 = 0: coefficient k belongs to u0^k u1^(m-k).
  RatVec tangent;
  int rational_directions = 0;  // distinct rational tangent lines
  bool has_quadratic_pair = false;
  Int field_d = 1;              // squarefree d of Q(sqrt d) for the conjugate pair, 1 when none
  std::optional<Int> discriminant;  // of the irrational quadratic factor (or the whole form when m = 2)

  bool rational_tangents() const { return !has_quadratic_pair; }
};

// Multiplicity and tangent cone at [1:1:1] of a curve in a weighted projective plane.
TangentReport mult_and_tangent_at_one(const WeightedForm& f);

// One smooth branch per tangent direction; r from the context for the conjugate pair.
BranchData branches_at_one(const TangentReport& t, const ArithmeticContext& ctx);

// RREF basis of forms of degree d vanishing at (1,...,1) to order at least s.
std::vector<RatVec> sections_vanishing_to_order(const std::vector<Int>& q, const Int& d, int s);

Rat weighted_pairing(const std::vector<Int>& q, const Rat& a, const Rat& b);
Rat blowup_selfintersection(const std::vector<Int>& q, const Rat& a, const Rat& b);

Int squarefree_part(const Int& n);

enum class Irreducibility { Irreducible, Reducible, Undetermined };
const char* to_string(Irreducibility s);

// Irreducible is a proof (a specialization of a dehomogenization is irreducible modulo
// the combined degree patterns of several primes). Reducible only for monomial factors.
Irreducibility irreducibility_over_q(const WeightedForm& f);

struct P4713Report {
  Rat driver_degree;
  ExtRat driver_alpha;
  std::vector<std::string> driver_trace;

  WeightedForm x5_yz;
  Rat x5_yz_degree;
  ExtRat x5_yz_alpha;

  WeightedForm c1;  // the nodal degree-39 curve
  Rat c1_degree;
  TangentReport c1_tangent;
  ExtRat c1_alpha;
  std::string c1_case;

  std::size_t h0_dim = 0;
  std::size_t order3_dim = 0;
  WeightedForm c2;  // the unique degree-56 form vanishing to order 3
  Rat c2_degree;
  TangentReport c2_tangent;
  Rat c2_alpha_lower;
  std::optional<ExtRat> c2_alpha;  // when the context decides its tangent field
  Irreducibility c2_irreducibility = Irreducibility::Undetermined;

  Int power = 0;             // g^power lies in H^0(multiple * D)
  Int multiple = 0;
  Int order = 0;             // vanishing order of g^power at P
  Rat selfintersection;      // (multiple pi^*D - order E)^2
  Rat lower_bound;           // order / multiple, off the base locus
  bool best_approximation = false;
  std::string verdict;
};

P4713Report casestudy_p4713(const ArithmeticContext& ctx);

enum class CandidateStatus { Ranked, Reducible, IrreducibilityUndetermined, UnsupportedBranch, UndeclaredField };
const char* to_string(CandidateStatus s);

struct Candidate {
  WeightedForm form;
  Rat degree;  // C . O(prod q), which equals the weighted degree
  int multiplicity = 0;
  Int field_d = 1;
  ExtRat alpha = ExtRat::inf();
  CandidateStatus status = CandidateStatus::Ranked;
};

// Forms of degree <= cap from the RREF bases of every order-s vanishing space. Ranked
// candidates come first in ascending alpha against D = O(prod q); the rest follow.
std::vector<Candidate> curve_alpha_search(const std::vector<Int>& q, const Int& cap, const ArithmeticContext& ctx);

}  // namespace toric
