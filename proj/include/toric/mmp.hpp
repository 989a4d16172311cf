#pragma once

#include <optional>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

struct ExtremalRay {
  WallCurve representative;
  std::vector<std::size_t> walls;  // every wall whose class lies on this ray
  RatVec class_vector;             // D_i . C for the representative
  Cone negative;                   // rays with negative relation coefficient
  Cone positive;                   // rays with positive relation coefficient
  Rat k_degree;                    // K . C
  bool k_negative = false;
};

std::vector<ExtremalRay> mori_extremal_rays(const Fan& fan);

enum class StepKind { MoriFiber, Divisorial, Flip };
const char* to_string(StepKind k);

struct Classification {
  StepKind kind = StepKind::MoriFiber;
  Cone exc;  // cone spanned by the negative rays
};

Classification classify_contraction(const Fan& fan, const ExtremalRay& ray);

struct Contraction {
  StepKind kind = StepKind::MoriFiber;
  Fan target;
  std::vector<int> ray_map;  // source ray -> target ray, or -1
  std::optional<TorusDivisor> pushed;
  int exceptional_ray = -1;  // Divisorial only
  QuotientMap quotient;      // MoriFiber only
};

// d, when given, must have degree zero on the ray; its pushforward is checked exactly.
Contraction contract(const Fan& fan, const ExtremalRay& ray, const std::optional<TorusDivisor>& d = std::nullopt);

struct Flip {
  Fan xstar;
  Fan flipped;  // same rays as the source
  int dstar_ray = -1;
  IntVec new_ray;
  // Generator C0 of the ray for which Phi^*F = Phi'^*F' - (F.C0) D* holds exactly:
  // D_i . C0 = b_i / g with g the content of the new-ray sum. The wall curve's own
  // class equals wall_factor * C0.
  RatVec generator;
  Rat wall_factor;
};

Flip flip(const Fan& fan, const ExtremalRay& ray);

struct StepChoice {
  Rat a;
  std::size_t ray = 0;  // index into mori_extremal_rays(fan)
};

StepChoice step_a(const Fan& fan, const TorusDivisor& d);
StepChoice step_a(const Fan& fan, const TorusDivisor& d, const std::vector<ExtremalRay>& rays);

struct MmpStep {
  StepKind kind = StepKind::MoriFiber;
  Rat a;
  Fan source;
  TorusDivisor divisor;   // D_i on the source
  TorusDivisor adjusted;  // D_i + a_i K on the source
  ExtremalRay ray;
  Cone exc;
  Cone orbit;  // orbit cone of P on the source
  bool p_in_exc = false;
  Fan target;
  std::vector<int> ray_map;
  std::optional<TorusDivisor> pushed;  // D_{i+1}
  int exceptional_ray = -1;
  Rat discrepancy;  // Divisorial: K_X = psi^* K_Y + r E
  std::optional<Flip> flip_data;
  std::size_t picard_source = 0, picard_target = 0;
  bool canonically_bounded = false;
};

struct MmpChain {
  std::vector<MmpStep> steps;
  std::size_t terminal = 0;  // index of the step whose exceptional locus contains P
};

std::size_t picard_rank(const Fan& fan);

MmpChain run_mmp_chain(const Fan& fan, const TorusDivisor& d, const Cone& orbit, bool canonically_bounded = false);

}  // namespace toric
