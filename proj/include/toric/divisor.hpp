#pragma once

#include <optional>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

// One rational coefficient per ray: D = sum d_i D_i.
using TorusDivisor = RatVec;

TorusDivisor canonical_divisor(const Fan& fan);

// div(u): coefficients <u, v_i>.
TorusDivisor principal_divisor(const Fan& fan, const RatVec& u);

// phi(v_i) = d_i, linear on each maximal cone.
struct SupportFunction {
  std::vector<RatVec> functionals;  // one per maximal cone, in fan order
  Int cartier_index = 1;
};

SupportFunction support_function(const Fan& fan, const TorusDivisor& d);

Rat evaluate(const Fan& fan, const SupportFunction& phi, const RatVec& x);
Rat evaluate(const Fan& fan, const SupportFunction& phi, const IntVec& x);

struct WallCurve {
  std::size_t wall = 0;  // index into fan.walls()
  Cone face;
  int ray_a = -1, ray_b = -1;
  int cone_a = -1, cone_b = -1;
  IntVec relation;  // one entry per ray; positive on ray_a and ray_b
};

std::vector<WallCurve> wall_curves(const Fan& fan);

// D_i . C for every ray i.
RatVec intersection_vector(const Fan& fan, const WallCurve& c);

// Bend of the support function across the wall.
Rat intersect(const Fan& fan, const TorusDivisor& d, const WallCurve& c);

// sum d_i b_i scaled by the wall's lattice data.
Rat intersect_by_relation(const Fan& fan, const TorusDivisor& d, const WallCurve& c);

// Closure of a one-parameter subgroup of the orbit O(tau); w lives in the quotient
// lattice N / N_tau in the coordinates of star_fan(fan, tau).
struct OnePsCurve {
  Cone tau;
  IntVec w;
};

Rat one_ps_degree(const Fan& fan, const TorusDivisor& d, const OnePsCurve& c);

// D_i . C for every ray i.
RatVec one_ps_intersections(const Fan& fan, const OnePsCurve& c);

// Every maximal-cone functional lies below the divisor on all rays.
bool support_function_convex(const Fan& fan, const TorusDivisor& d);

// Nonnegative on every wall curve; cross-checked against convexity.
bool is_nef(const Fan& fan, const TorusDivisor& d);

// u with d1 - d2 = div(u), rational or integral.
std::optional<RatVec> rational_equivalence(const Fan& fan, const TorusDivisor& d1, const TorusDivisor& d2);
bool linearly_equivalent(const Fan& fan, const TorusDivisor& d1, const TorusDivisor& d2);

// Coefficients phi_D(v) on the rays of a refinement sharing the same support.
TorusDivisor pullback(const Fan& coarse, const TorusDivisor& d, const Fan& fine);

TorusDivisor add(const TorusDivisor& a, const TorusDivisor& b);
TorusDivisor scale(const Rat& s, const TorusDivisor& a);

}  // namespace toric
