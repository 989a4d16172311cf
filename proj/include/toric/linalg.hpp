#pragma once

#include <optional>
#include <vector>

#include "toric/arith.hpp"

namespace toric {

using RatMat = std::vector<RatVec>;  // row-major

RatMat to_rat(const IntMat& m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& a, std::size_t cols);

std::size_t rank(const RatMat& a, std::size_t cols);
std::size_t rank(const IntMat& m);

// Some solution x of a·x = b (free variables set to zero), or nullopt.
std::optional<RatVec> solve(const RatMat& a, std::size_t cols, const RatVec& b);

// Basis of {x : a·x = 0}; one vector per free column, with a 1 in that column.
std::vector<RatVec> nullspace(const RatMat& a, std::size_t cols);

// Inverse of a square nonsingular matrix; nullopt if singular.
std::optional<RatMat> inverse(const RatMat& a);

RatVec apply(const RatMat& a, const RatVec& x);
RatVec apply(const RatMat& a, const IntVec& x);

// Clears denominators and divides by the content. Zero stays zero.
IntVec primitive_integral(const RatVec& v);

// Exact feasibility of {x >= 0 : a·x = b} by phase-one simplex with Bland's rule.
// a has rows.size() == b.size() equations and `cols` unknowns.
bool lp_feasible(const RatMat& a, std::size_t cols, const RatVec& b);

}  // namespace toric
