#pragma once

#include <optional>
#include <vector>

#include "toric/arith.hpp"
#include "toric/lattice.hpp"
#include "toric/linalg.hpp"

namespace toric {

// Sorted, distinct ray indices.
using Cone = std::vector<int>;

Cone make_cone(std::vector<int> rays);
bool is_subset(const Cone& a, const Cone& b);
Cone cone_union(const Cone& a, const Cone& b);
Cone cone_minus(const Cone& a, const Cone& b);
Cone cone_intersection(const Cone& a, const Cone& b);

// A codimension-one cone with the two maximal cones on either side.
struct Wall {
  Cone face;
  int cone_a = -1, cone_b = -1;  // maximal cone indices
  int ray_a = -1, ray_b = -1;    // the ray of each maximal cone not on the wall
};

class Fan {
 public:
  Fan() = default;

  std::size_t rank() const { return rank_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<IntVec>& rays() const { return rays_; }
  const IntVec& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<Cone>& max_cones() const { return cones_; }
  const std::vector<Wall>& walls() const { return walls_; }

  // Rows are the dual basis of the cone's rays: coordinates = inverse · x.
  const RatMat& cone_inverse(std::size_t c) const { return inverses_[c]; }

  // First maximal cone containing x, with the coordinates of x in its rays.
  std::optional<std::pair<std::size_t, RatVec>> locate(const IntVec& x) const;
  std::optional<std::pair<std::size_t, RatVec>> locate(const RatVec& x) const;

  bool has_cone(const Cone& c) const;
  std::vector<std::size_t> cones_containing(const Cone& c) const;
  std::optional<std::size_t> ray_index(const IntVec& v) const;
  std::vector<IntVec> cone_rays(const Cone& c) const;

  // Same rays and the same set of maximal cones.
  bool same_as(const Fan& other) const;

  friend Fan assemble_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones, bool full);

 private:
  std::size_t rank_ = 0;
  std::vector<IntVec> rays_;
  std::vector<Cone> cones_;
  std::vector<Wall> walls_;
  std::vector<RatMat> inverses_;
};

Fan assemble_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones, bool full);

// Full validation: simplicial, pairwise face-compatible, complete.
Fan build_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones);

// For fans produced by constructions that preserve validity: checks shape, simpliciality,
// and wall-regularity, but skips the pairwise overlap test and the probes.
Fan make_fan_unchecked(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones);

// Same rays (in any order) and the same maximal cones.
bool fans_equivalent(const Fan& a, const Fan& b);

// Standard fans used throughout.
Fan projective_space_fan(std::size_t n);

Fan wps_fan(const std::vector<Int>& weights);

Int cone_multiplicity(const Fan& fan, const Cone& cone);

struct TerminalReport {
  bool terminal = true;
  std::vector<std::size_t> offending;  // maximal cone indices
};
TerminalReport is_terminal(const Fan& fan);

struct StarFan {
  Fan fan;
  Cone tau;
  QuotientMap quotient;
  std::vector<int> ambient_ray;  // star ray -> ambient ray index
  std::vector<int> star_ray;     // ambient ray -> star ray index, or -1
  std::vector<Int> b;            // image of ambient ray = b * star ray generator
  std::vector<Int> m;            // multiplicity of tau + that ray
  Int tau_multiplicity = 1;
};

StarFan star_fan(const Fan& fan, const Cone& tau);

struct Subdivision {
  Fan fan;
  int new_ray = -1;
  Cone subdivided;  // the cone of the old fan containing the new ray in its relative interior
};

Subdivision star_subdivision(const Fan& fan, const IntVec& new_ray);

struct FwpsData {
  std::vector<Int> weights;  // in ray order
  Int cover_index = 1;
  std::vector<Int> group_invariants;  // nontrivial invariant factors of N / N'
  Fan cover_fan;                      // rays in coordinates of a basis of N'
  IntMat cover_to_ambient;            // basis of N' as columns in N
};

FwpsData recognize_fwps(const Fan& fan);

bool is_projective_space(const Fan& fan);

}  // namespace toric
