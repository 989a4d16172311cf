#pragma once
// Standard fans and divisors shared by the unit tests and the acceptance runner.

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace fixtures {

using namespace toric;

inline Fan p2() { return projective_space_fan(2); }

// Blowup of P^2 at the fixed point of the cone <e1, e2>; the exceptional ray is index 3.
inline Fan f1() { return star_subdivision(projective_space_fan(2), {1, 1}).fan; }

inline Fan p4713() { return wps_fan({4, 7, 13}); }

// 91 D_0 with D_0 = {x = 0} of class O(4): the class O(364).
inline TorusDivisor o364() { return {Rat(91), Rat(0), Rat(0)}; }

// Pullback of the hyperplane class of P^2 to F1.
inline TorusDivisor f1_pullback_line() { return {Rat(0), Rat(0), Rat(1), Rat(0)}; }

// Face fan of conv(e1, e2, e3, e1 + e2 - e3, -e1, -e2, -e3) with the square facet cut
// along the diagonal from e3 to e1 + e2 - e3; that wall carries v0 + v1 - v2 - v3 = 0.
inline Fan flop3() {
  return build_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
                   {{0, 2, 3}, {1, 2, 3}, {0, 2, 5}, {0, 3, 6}, {0, 5, 6}, {1, 2, 4}, {1, 3, 6}, {1, 4, 6}, {2, 4, 5}, {4, 5, 6}});
}

// P^2 / mu_3: the rays sum to zero and span a sublattice of index 3.
inline Fan p2_mod3() { return build_fan(2, {{1, 2}, {1, -1}, {-2, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }

// P^3 / mu_2 acting with weights (1, 1, 0, 0).
inline Fan p3_mod2() {
  return build_fan(3, {{2, -1, 0}, {0, 1, 0}, {0, 0, 1}, {-2, 0, -1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Terminal subdivision of the P^3 fan. The MMP with the divisor below starts with a
// K-negative flip away from the torus.
inline Fan flip3() {
  return build_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {0, 1, -1}, {1, 1, 0}},
                   {{1, 2, 5}, {0, 2, 5}, {1, 3, 4}, {0, 3, 4}, {1, 4, 5}, {0, 4, 5}, {0, 2, 3}, {1, 2, 3}});
}
inline TorusDivisor flip3_nef() { return {Rat(1), Rat(1), Rat(1), Rat(1), Rat(4), Rat(2)}; }

}  // namespace fixtures
