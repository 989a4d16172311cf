#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/mmp.hpp"

namespace toric {

struct CurveCertificate {
  OnePsCurve curve;
  RatVec intersections;  // D_i . C
  Rat anti_canonical;    // -K . C
  std::vector<std::string> trace;
  std::vector<std::string> assumptions;
  // P sits at the limit point of the one-parameter subgroup rather than in its open orbit.
  bool limit_point = false;
  Int multiplicity = 1;  // of C at P
};

// Intersections and -K.C for the curve, with the trace attached.
CurveCertificate certify(const Fan& fan, const OnePsCurve& curve, std::vector<std::string> trace);

// True when P's orbit is the curve's own orbit or the orbit of one of its two limit points.
bool curve_meets_orbit(const Fan& fan, const OnePsCurve& curve, const Cone& orbit, bool* at_limit = nullptr);

// Multiplicity at P of the closure of the one-parameter subgroup; 1 on its open orbit.
Int curve_multiplicity(const Fan& fan, const OnePsCurve& curve, const Cone& orbit);

struct CoverData {
  Fan cover;  // same cones, rays in coordinates of a basis of N'
  Int index = 1;
  std::vector<std::pair<Int, int>> index_factorization;  // (prime, exponent)
  std::vector<Int> group_invariants;
  IntMat cover_to_ambient;  // columns: basis of N' inside N
};

CoverData universal_cover_codim1(const FwpsData& fwps);

bool terminal_wps_inequality(const std::vector<Int>& weights, const Int& kappa);

CurveCertificate wps_curve_all_leq1(const Fan& wps, const Cone& orbit);

struct MuPAction {
  Int p;
  std::vector<Int> residues;      // raw action weights, one per coordinate
  std::vector<Int> sorted;        // r = w_0 > w_1 >= ... >= w_n, reference coordinate first
  std::vector<int> order;         // sorted position -> coordinate
  int patch = -1;                 // coordinate whose affine patch is used
  std::vector<Int> patch_weights; // M(w_i - w_patch) per coordinate, 0 at the patch
};

MuPAction mu_p_normalize(const std::vector<Int>& residues, const Int& p, std::size_t n);

// Weights of the mu_p action on P^n for a fan of P^n / mu_p; throws NotPnModP.
MuPAction mu_p_action(const Fan& fan);

CurveCertificate mu_p_torus_curve(const Fan& fan);

struct BoundaryCase {
  bool weighted = false;  // D is P(1,..,1,p,..,p); otherwise P^{n-1}/mu_p
  int witness = -1;       // ray i with mult(v_i, v_k) > 1 when weighted
  Int witness_multiplicity = 1;
};

BoundaryCase classify_boundary(const Fan& fan, int ray);

CurveCertificate fwps_curve(const Fan& fan, const Cone& orbit);

struct BaseCase {
  CurveCertificate certificate;
  Fan fiber;
  Cone fiber_orbit;
  std::vector<int> fiber_rays;  // fiber ray -> ambient ray
  Rat fiber_anti_canonical;     // -K_F . C
  bool target_is_point = false;
  Rat alpha;
};

BaseCase base_case_curve(const Fan& fan, const ExtremalRay& ray, const TorusDivisor& d, const Cone& orbit);

// Image of a curve on star_fan(fan, star.tau) as a curve on fan.
OnePsCurve lift_from_star(const Fan& fan, const StarFan& star, const OnePsCurve& inner);

}  // namespace toric
