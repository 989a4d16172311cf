#include "toric/approx.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

const char* const kCanonicalBoundednessNote =
    "P must be canonically bounded: every Zariski-dense sequence of rational points converging to P "
    "has approximation constant at least dim X with respect to -K_X. This cannot be checked by "
    "computation; pass the canonical-boundedness flag to assume it.";

namespace {

TorusDivisor unit(std::size_t n, std::size_t i) {
  TorusDivisor e(n, Rat(0));
  e[i] = 1;
  return e;
}

void stamp(const Fan& fan, CurveCertificate& cert, const Cone& orbit) {
  bool limit = false;
  ensure(curve_meets_orbit(fan, cert.curve, orbit, &limit), "curve misses the orbit of P");
  cert.limit_point = limit;
  cert.multiplicity = curve_multiplicity(fan, cert.curve, orbit);
}

Cone pull_cone(const Cone& target_cone, const std::vector<int>& ray_map) {
  Cone out;
  for (std::size_t s = 0; s < ray_map.size(); ++s)
    if (ray_map[s] >= 0 && std::binary_search(target_cone.begin(), target_cone.end(), ray_map[s]))
      out.push_back(static_cast<int>(s));
  ensure(out.size() == target_cone.size(), "cone does not come from the source fan");
  return out;
}

Cone push_cone(const Cone& c, const std::vector<int>& ray_map) {
  Cone out;
  for (int r : c) {
    ensure(ray_map[r] >= 0, "cone meets a contracted ray");
    out.push_back(ray_map[r]);
  }
  return make_cone(out);
}

}  // namespace

std::string to_string(const ExtRat& x) { return x.infinite ? "inf" : to_string(x.value); }

ExtRat alpha_rational_curve(const Rat& d, const BranchData& branches) {
  if (d < 0) throw NegativeDegree("degree must be non-negative");
  if (branches.empty()) throw DimensionError("no branches");
  ExtRat best = ExtRat::inf();
  for (const auto& b : branches) {
    if (b.m < 1 || b.r < 0 || b.r > 2) throw DimensionError("branch data out of range");
    if (b.r == 0) continue;
    Rat v = d / Rat(b.m * b.r);
    if (best.infinite || v < best.value) best = {false, v};
  }
  return best;
}

void ArithmeticContext::validate() const {
  for (const auto& q : quadratics) {
    if (q.in_k && !q.in_kv) throw ParseError("a field inside k is inside every completion of k");
    if (k_is_q && q.in_k && q.d != 1) throw ParseError("k = Q contains no irrational square root");
  }
}

int ArithmeticContext::branch_r(const Int& d) const {
  if (d == 1) return 1;
  for (const auto& q : quadratics)
    if (q.d == d) return q.in_k ? 1 : (q.in_kv ? 2 : 0);
  throw AssumptionRequired("the context does not say whether sqrt(" + to_string(d) + ") lies in k or k_v");
}

CurveCertificate transport_curve(const MmpChain& chain, std::size_t i, const CurveCertificate& down) {
  ensure(i < chain.steps.size(), "transport_curve: step index out of range");
  const MmpStep& s = chain.steps[i];
  if (s.p_in_exc) throw OrbitInExc("P lies in the exceptional locus of this step");
  ensure(s.kind != StepKind::MoriFiber, "transport_curve: fiber step with P outside the exceptional locus");
  const Fan& x = s.source;
  Cone tau = pull_cone(down.curve.tau, s.ray_map);
  ensure(x.has_cone(tau), "transport_curve: curve orbit is not a cone upstream");
  std::vector<std::string> trace{std::string(s.kind == StepKind::Flip ? "transport-flip" : "transport-divisorial") +
                                 ":step=" + std::to_string(i)};
  trace.insert(trace.end(), down.trace.begin(), down.trace.end());
  CurveCertificate cert = certify(x, {tau, down.curve.w}, trace);
  cert.assumptions = down.assumptions;
  stamp(x, cert, s.orbit);
  ensure(cert.multiplicity == down.multiplicity, "transport_curve: multiplicity changed away from the exceptional locus");
  ensure(dot(s.adjusted, cert.intersections) == dot(*s.pushed, down.intersections),
         "transport_curve: degree of D + aK not preserved");
  if (s.kind == StepKind::Divisorial) {
    const Rat ec = cert.intersections[s.exceptional_ray];
    ensure(ec >= 0, "transport_curve: E.C negative for a curve not in E");
    ensure(s.discrepancy > 0, "transport_curve: discrepancy not positive");
    ensure(cert.anti_canonical == down.anti_canonical - s.discrepancy * ec, "transport_curve: -K_X.C = -K_Y.C' - rE.C");
  } else {
    const Flip& fl = *s.flip_data;
    ensure(fl.xstar.has_cone(tau), "transport_curve: curve orbit is not a cone of the common subdivision");
    Rat dstar = one_ps_degree(fl.xstar, unit(fl.xstar.num_rays(), fl.dstar_ray), {tau, down.curve.w});
    ensure(dstar >= 0, "transport_curve: D*.C negative");
    Rat kc0 = dot(canonical_divisor(x), fl.generator);
    ensure(kc0 < 0, "transport_curve: flipped ray is not K-negative");
    ensure(cert.anti_canonical == down.anti_canonical + kc0 * dstar, "transport_curve: flip comparison for -K");
  }
  if (down.anti_canonical <= static_cast<long>(x.rank()))
    ensure(cert.anti_canonical <= static_cast<long>(x.rank()), "transport_curve: -K.C above dim");
  return cert;
}

CurveCertificate projective_line_through(const Fan& pn, const Cone& orbit_in, const Cone& avoid) {
  Cone orbit = make_cone(orbit_in);
  const int n = static_cast<int>(pn.rank());
  for (int k = 0; k <= n; ++k) {
    if (std::binary_search(avoid.begin(), avoid.end(), k)) continue;
    Cone others;
    for (int r = 0; r <= n; ++r)
      if (r != k) others.push_back(r);
    if (orbit == others) continue;  // P is the fixed point p_k itself
    Cone tau = cone_minus(orbit, {k});
    IntVec w = quotient_lattice(pn.cone_rays(tau), pn.rank()).project(pn.ray(k));
    CurveCertificate cert = certify(pn, {tau, w}, {"projective-space-line:through=" + std::to_string(k)});
    ensure(cert.anti_canonical == n + 1, "projective line: -K.C is not n + 1");
    stamp(pn, cert, orbit);
    return cert;
  }
  throw InvariantViolation("projective line: no coordinate point available");
}

CurveCertificate pn_blowup_line(const MmpStep& s) {
  if (s.kind != StepKind::Divisorial || !is_projective_space(s.target))
    throw NotPnDownstream("the step is not a divisorial contraction to projective space");
  if (s.p_in_exc) throw OrbitInExc("P lies in the exceptional divisor");
  const Fan& y = s.target;
  const std::size_t n = y.rank();
  Cone z = push_cone(s.ray.positive, s.ray_map);  // Z = V(z)
  Cone orbit_y = push_cone(s.orbit, s.ray_map);
  CurveCertificate line = projective_line_through(y, orbit_y, z);
  Cone tau = pull_cone(line.curve.tau, s.ray_map);
  std::vector<std::string> trace{"projective-space-blowup-line"};
  trace.insert(trace.end(), line.trace.begin(), line.trace.end());
  CurveCertificate cert = certify(s.source, {tau, line.curve.w}, trace);
  stamp(s.source, cert, s.orbit);
  const Rat ec = cert.intersections[s.exceptional_ray];
  ensure(ec >= 1, "blowup line: the line misses the blown-up locus");
  ensure(s.discrepancy >= 1, "blowup line: discrepancy below 1");
  ensure(cert.anti_canonical == Rat(static_cast<long>(n + 1)) - s.discrepancy * ec, "blowup line: -K.C = n+1 - rE.C");
  ensure(cert.anti_canonical <= static_cast<long>(n), "blowup line: -K.C above n");
  ensure(dot(s.adjusted, cert.intersections) == dot(*s.pushed, line.intersections), "blowup line: C.D = l.D'");
  return cert;
}

AValueRecord a_value_ledger(const Fan& fan, const CurveCertificate& cert, const TorusDivisor& d, const Rat& a) {
  if (a < 0) throw NegativeDegree("a must be non-negative");
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  AValueRecord r;
  r.a = a;
  r.multiplicity = cert.multiplicity;
  r.dim = fan.rank();
  r.anti_canonical = cert.anti_canonical;
  const Rat m(cert.multiplicity);
  r.alpha = dot(d, cert.intersections) / m;
  r.alpha_adjusted = dot(add(d, scale(a, canonical_divisor(fan))), cert.intersections) / m;
  ensure(r.alpha == r.alpha_adjusted + a * cert.anti_canonical / m, "a-value ledger: alpha(D) = alpha(D + aK) + a(-K.C)/m");
  r.bound_holds = cert.anti_canonical / m <= static_cast<long>(r.dim);
  return r;
}

ApproxResult approximation_driver(const Fan& fan, const TorusDivisor& d, const Cone& orbit_in, const ArithmeticContext& context,
                              bool cb) {
  Cone orbit = make_cone(orbit_in);
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not a cone of the fan");
  if (!is_nef(fan, d)) throw NotNef("divisor is not nef");
  context.validate();
  if (!cb) throw AssumptionRequired(kCanonicalBoundednessNote);
  const bool terminal = is_terminal(fan).terminal;
  if (!terminal && picard_rank(fan) != 1)
    throw TerminalResolutionRequired("the fan is not terminal; resolve to a terminal model that is an isomorphism at P first");

  ApproxResult out;
  out.assumptions.push_back("P is canonically bounded (assumed by flag)");
  out.assumptions.push_back("canonical boundedness passes to the image of P under every step that keeps P off the exceptional locus");
  out.provenance.push_back("the curve bounds alpha along Zariski-dense sequences only; it need not be a curve of best approximation");
  out.provenance.push_back("for smooth X, Vojta's Main Conjecture would imply canonical boundedness");
  if (!terminal)
    out.provenance.push_back(
        "X is not terminal but has Picard rank 1: the curve comes from the fake weighted projective space "
        "construction, which only guarantees -K.C <= dim + 1");
  const std::size_t n = fan.rank();

  if (is_projective_space(fan)) {
    out.projective_space = true;
    out.certificate = projective_line_through(fan, orbit);
    out.provenance.push_back("on projective space a line through P attains the bound (known theorem, not recomputed)");
  } else {
    MmpChain chain = run_mmp_chain(fan, d, orbit, cb);
    const std::size_t m = chain.terminal;
    const MmpStep& last = chain.steps[m];
    std::vector<std::optional<CurveCertificate>> level(m + 1);
    std::size_t top;
    if (m > 0 && is_projective_space(last.source)) {
      top = m - 1;
      level[top] = pn_blowup_line(chain.steps[top]);
    } else {
      top = m;
      BaseCase bc = base_case_curve(last.source, last.ray, last.adjusted, last.orbit);
      level[top] = bc.certificate;
    }
    for (std::size_t i = top; i-- > 0;) level[i] = transport_curve(chain, i, *level[i + 1]);
    for (std::size_t i = 0; i <= top; ++i) {
      const MmpStep& s = chain.steps[i];
      AValueRecord rec = a_value_ledger(s.source, *level[i], s.divisor, s.a);
      rec.step = i;
      if (terminal) ensure(rec.bound_holds, "a-value ledger: (-K.C)/m above dim");
      out.ledger.push_back(rec);
    }
    for (std::size_t i = 0; i + 1 <= top; ++i) {
      const Rat m1(level[i + 1]->multiplicity);
      ensure(out.ledger[i].alpha_adjusted == dot(chain.steps[i + 1].divisor, level[i + 1]->intersections) / m1,
             "ledger: alpha(D_i + a_i K) differs from alpha(D_{i+1}) downstream");
    }
    out.certificate = *level[0];
    out.chain = std::move(chain);
    ensure(out.certificate.anti_canonical <= static_cast<long>(terminal ? n : n + 1), "driver: -K.C above the dimension bound");
  }
  out.degree = dot(d, out.certificate.intersections);
  ensure(out.degree == one_ps_degree(fan, d, out.certificate.curve), "driver: degree recomputation");
  out.branches = {{out.certificate.multiplicity, context.branch_r(1)}};
  out.alpha = alpha_rational_curve(out.degree, out.branches);
  return out;
}

}  // namespace toric
