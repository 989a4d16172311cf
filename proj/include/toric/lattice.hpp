#pragma once

#include <vector>

#include "toric/arith.hpp"

namespace toric {

struct Snf {
  std::vector<Int> diag;  // min(rows, cols) entries, d1 | d2 | ..., non-negative
  IntMat U;               // rows x rows, unimodular
  IntMat V;               // cols x cols, unimodular
};

// U·m·V = diag(d1, d2, ...) padded with zeros.
Snf smith_normal_form(const IntMat& m);

// Inverse of a unimodular matrix.
IntMat unimodular_inverse(const IntMat& u);

// Row-style Hermite normal form of a full-row-rank matrix: H = W·m with W unimodular.
struct Hnf {
  IntMat H;
  IntMat W;
};
Hnf hermite_normal_form(const IntMat& m);

// [Z^rank : <gens>]; throws NotFullRank when the span is proper.
Int sublattice_index(const std::vector<IntVec>& gens, std::size_t ambient_rank);

// v / gcd(v); throws ZeroVector.
IntVec primitive_part(const IntVec& v);

// Projection Z^n -> Z^(n-k) whose kernel is the saturation of the kernel generators.
struct QuotientMap {
  IntMat projection;               // (n-k) x n, rows in Hermite normal form
  IntMat section;                  // n x (n-k), projection·section = identity
  std::size_t ambient_rank = 0;
  std::size_t quotient_rank = 0;
  std::vector<IntVec> kernel_basis;  // basis of the saturated kernel

  IntVec project(const IntVec& v) const { return projection.apply(v); }
  IntVec lift(const IntVec& q) const { return section.apply(q); }
};

// Throws DependentKernel if the generators are linearly dependent.
QuotientMap quotient_lattice(const std::vector<IntVec>& kernel_gens, std::size_t ambient_rank);

// Saturation of the span of `gens` inside Z^n: returns a basis as matrix columns (n x r).
IntMat saturation_basis(const std::vector<IntVec>& gens, std::size_t ambient_rank);

// Basis (as columns) of the sublattice spanned by `gens`, which must have full rank.
IntMat lattice_basis(const std::vector<IntVec>& gens, std::size_t ambient_rank);

// Coordinates of v in the basis given by the columns of b; throws InvariantViolation
// when v is not an integral combination.
IntVec integral_coordinates(const IntMat& b, const IntVec& v);

}  // namespace toric
