#include "toric/fwps.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "toric/errors.hpp"

namespace toric {

namespace {

Int mod(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r;
}

std::string ray_tag(const std::string& name, int ray) { return name + ":ray=" + std::to_string(ray); }

std::vector<std::pair<Int, int>> factorize(Int x) {
  std::vector<std::pair<Int, int>> out;
  for (Int q = 2; q * q <= x; ++q) {
    int e = 0;
    while (x % q == 0) {
      x /= q;
      ++e;
    }
    if (e > 0) out.push_back({q, e});
  }
  if (x > 1) out.push_back({x, 1});
  return out;
}

bool all_ones(const std::vector<Int>& w) {
  return std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 1; });
}

// Curve on `fine` (a fan on a sublattice N' of N with the same cones) pushed to `coarse`.
// Checks g^*D_i . C' = k D_i . C, where k is the degree of C' -> C.
CurveCertificate descend(const Fan& coarse, const Fan& fine, const IntMat& basis, const CurveCertificate& up,
                         const std::string& tag) {
  const std::size_t n = coarse.rank();
  const Cone& tau = up.curve.tau;
  IntVec x = quotient_lattice(fine.cone_rays(tau), n).lift(up.curve.w);
  IntVec z = quotient_lattice(coarse.cone_rays(tau), n).project(basis.apply(x));
  Int k = content(z);
  ensure(k > 0, "descend: curve collapses");
  std::vector<std::string> trace{tag};
  trace.insert(trace.end(), up.trace.begin(), up.trace.end());
  CurveCertificate cert = certify(coarse, {tau, primitive_part(z)}, trace);
  for (std::size_t i = 0; i < coarse.num_rays(); ++i)
    ensure(cert.intersections[i] * k == up.intersections[i], "descend: projection formula");
  ensure(cert.anti_canonical <= up.anti_canonical, "descend: -K.C exceeds the cover's");
  cert.assumptions = up.assumptions;
  cert.assumptions.push_back("a rational lift of P to the cover exists");
  return cert;
}

Cone orbit_in_star(const StarFan& star, const Cone& orbit) {
  Cone inner;
  for (int r : orbit) {
    if (std::binary_search(star.tau.begin(), star.tau.end(), r)) continue;
    ensure(star.star_ray[r] >= 0, "orbit is not in the star");
    inner.push_back(star.star_ray[r]);
  }
  return make_cone(inner);
}

void check_through(const Fan& fan, CurveCertificate& cert, const Cone& orbit) {
  bool limit = false;
  ensure(curve_meets_orbit(fan, cert.curve, orbit, &limit), "curve misses the orbit of P");
  cert.limit_point = limit;
  cert.multiplicity = curve_multiplicity(fan, cert.curve, orbit);
}

CurveCertificate pn_mod_p_curve(const Fan& fan, const Cone& orbit);

}  // namespace

CurveCertificate certify(const Fan& fan, const OnePsCurve& curve, std::vector<std::string> trace) {
  CurveCertificate c;
  c.curve = {make_cone(curve.tau), primitive_part(curve.w)};
  c.intersections = one_ps_intersections(fan, c.curve);
  c.anti_canonical = std::accumulate(c.intersections.begin(), c.intersections.end(), Rat(0));
  ensure(one_ps_degree(fan, scale(-1, canonical_divisor(fan)), c.curve) == c.anti_canonical,
         "certify: -K.C disagrees with the sum of D_i.C");
  c.trace = std::move(trace);
  return c;
}

bool curve_meets_orbit(const Fan& fan, const OnePsCurve& curve, const Cone& orbit_in, bool* at_limit) {
  Cone orbit = make_cone(orbit_in);
  Cone tau = make_cone(curve.tau);
  if (at_limit) *at_limit = false;
  if (orbit == tau) return true;
  StarFan star = star_fan(fan, tau);
  for (int sign : {1, -1}) {
    IntVec w = curve.w;
    for (auto& x : w) x *= sign;
    auto loc = star.fan.locate(w);
    if (!loc) continue;
    const Cone& sigma = star.fan.max_cones()[loc->first];
    Cone limit = tau;
    for (std::size_t k = 0; k < sigma.size(); ++k)
      if (loc->second[k] > 0) limit.push_back(star.ambient_ray[sigma[k]]);
    if (make_cone(limit) == orbit) {
      if (at_limit) *at_limit = true;
      return true;
    }
  }
  return false;
}

Int curve_multiplicity(const Fan& fan, const OnePsCurve& curve, const Cone& orbit_in) {
  Cone orbit = make_cone(orbit_in);
  Cone tau = make_cone(curve.tau);
  if (orbit == tau) return 1;
  StarFan star = star_fan(fan, tau);
  for (int sign : {1, -1}) {
    IntVec w = curve.w;
    for (auto& x : w) x *= sign;
    auto loc = star.fan.locate(w);
    if (!loc) continue;
    const Cone& sigma = star.fan.max_cones()[loc->first];
    Cone limit = tau;
    std::vector<IntVec> u;
    RatVec c;
    for (std::size_t k = 0; k < sigma.size(); ++k)
      if (loc->second[k] > 0) {
        limit.push_back(star.ambient_ray[sigma[k]]);
        u.push_back(star.fan.ray(sigma[k]));
        c.push_back(loc->second[k]);
      }
    if (make_cone(limit) != orbit) continue;
    // Local monomials pair with the limit cone's rays in the lattice L = { (<m, u_j>)_j };
    // the multiplicity is the least positive value of sum c_j y_j over y in L, y >= 0.
    const std::size_t s = u.size();
    IntMat ut(s, star.fan.rank());
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < star.fan.rank(); ++k) ut(j, k) = u[j][k];
    Snf f = smith_normal_form(ut);
    const long box = static_cast<long>(f.diag[s - 1]);
    std::optional<Rat> best;
    std::vector<long> y(s, 0);
    while (true) {
      std::size_t k = 0;
      while (k < s && y[k] == box) y[k++] = 0;
      if (k == s) break;
      ++y[k];
      bool member = true;
      for (std::size_t i = 0; i < s && member; ++i) {
        Int v = 0;
        for (std::size_t j = 0; j < s; ++j) v += f.U(i, j) * y[j];
        if (v % f.diag[i] != 0) member = false;
      }
      if (!member) continue;
      Rat val = 0;
      for (std::size_t j = 0; j < s; ++j) val += c[j] * y[j];
      if (!best || val < *best) best = val;
    }
    ensure(best && den(*best) == 1, "curve_multiplicity: no integral local value");
    return num(*best);
  }
  throw InvariantViolation("curve_multiplicity: P is not on the curve");
}

OnePsCurve lift_from_star(const Fan& fan, const StarFan& star, const OnePsCurve& inner) {
  IntVec x = quotient_lattice(star.fan.cone_rays(inner.tau), star.fan.rank()).lift(inner.w);
  IntVec y = star.quotient.lift(x);
  Cone tau = star.tau;
  for (int r : inner.tau) tau.push_back(star.ambient_ray[r]);
  tau = make_cone(tau);
  IntVec w = quotient_lattice(fan.cone_rays(tau), fan.rank()).project(y);
  ensure(content(w) == 1, "lift_from_star: image is not primitive");
  return {tau, w};
}

CoverData universal_cover_codim1(const FwpsData& fwps) {
  CoverData c;
  c.cover = fwps.cover_fan;
  c.index = fwps.cover_index;
  c.index_factorization = factorize(fwps.cover_index);
  c.group_invariants = fwps.group_invariants;
  c.cover_to_ambient = fwps.cover_to_ambient;
  return c;
}

bool terminal_wps_inequality(const std::vector<Int>& weights, const Int& kappa) {
  Int h = 0;
  for (const auto& a : weights) h += a;
  if (kappa < 2 || kappa > h - 2) throw KappaOutOfRange("kappa must lie in [2, h-2]");
  Rat sum = 0;
  for (const auto& a : weights) sum += frac(Rat(a * kappa, h));
  return sum <= Rat(static_cast<long>(weights.size()) - 2);
}

CurveCertificate wps_curve_all_leq1(const Fan& fan, const Cone& orbit_in) {
  Cone orbit = make_cone(orbit_in);
  FwpsData d;
  try {
    d = recognize_fwps(fan);
  } catch (const NotFwps& e) {
    throw NotWps(e.what());
  }
  if (d.cover_index != 1) throw NotWps("rays generate a proper sublattice");
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not in the fan");
  const std::size_t n = fan.rank();
  CurveCertificate cert;
  if (n == 1) {
    cert = certify(fan, {{}, {Int(1)}}, {"projective-line"});
  } else {
    int r0 = static_cast<int>(std::max_element(d.weights.begin(), d.weights.end()) - d.weights.begin());
    if (is_subset(orbit, {r0})) {
      cert = certify(fan, {{}, fan.ray(r0)}, {ray_tag("max-weight-one-ps", r0)});
      for (std::size_t i = 0; i <= n; ++i)
        ensure(cert.intersections[i] == Rat(d.weights[i], d.weights[r0]), "max-weight one-ps: D_i.C = a_i/a_0");
    } else {
      int j = orbit[0] == r0 ? orbit[1] : orbit[0];
      StarFan star = star_fan(fan, {j});
      ensure(recognize_fwps(star.fan).cover_index == 1, "boundary divisor of a wps is not a wps");
      CurveCertificate inner = wps_curve_all_leq1(star.fan, orbit_in_star(star, orbit));
      std::vector<std::string> trace{ray_tag("star-recursion", j)};
      trace.insert(trace.end(), inner.trace.begin(), inner.trace.end());
      cert = certify(fan, lift_from_star(fan, star, inner.curve), trace);
    }
  }
  for (const auto& x : cert.intersections) ensure(x <= 1, "wps curve: some D_i.C exceeds 1");
  check_through(fan, cert, orbit);
  return cert;
}

MuPAction mu_p_normalize(const std::vector<Int>& residues, const Int& p, std::size_t n) {
  if (residues.size() != n + 1) throw DimensionError("expected n+1 residues");
  if (p < 2) throw TrivialAction("group order below 2");
  MuPAction a;
  a.p = p;
  for (const auto& c : residues) a.residues.push_back(mod(c, p));
  if (std::all_of(a.residues.begin(), a.residues.end(), [&](const Int& x) { return x == a.residues[0]; }))
    throw TrivialAction("all residues agree");
  // Shift so coordinate 0 has weight 0, written as r = p.
  std::vector<Int> shifted(n + 1);
  for (std::size_t i = 0; i <= n; ++i) shifted[i] = i == 0 ? p : mod(a.residues[i] - a.residues[0], p);
  a.order.resize(n + 1);
  std::iota(a.order.begin(), a.order.end(), 0);
  std::stable_sort(a.order.begin() + 1, a.order.end(), [&](int x, int y) { return shifted[x] > shifted[y]; });
  for (int c : a.order) a.sorted.push_back(shifted[c]);
  const Int n1 = static_cast<long>(n + 1);
  std::size_t j = n + 1;
  for (std::size_t k = 0; k <= n; ++k) {
    Int next = k == n ? Int(0) : a.sorted[k + 1];
    if ((a.sorted[k] - next) * n1 >= p) {
      j = k;
      break;
    }
  }
  ensure(j <= n, "mu_p_normalize: no gap of size r/(n+1)");
  a.patch = a.order[j];
  a.patch_weights.assign(n + 1, Int(0));
  for (std::size_t k = 0; k <= n; ++k) {
    Int w = mod(a.sorted[k] - a.sorted[j], p);
    a.patch_weights[a.order[k]] = w;
    ensure(w * n1 <= p * static_cast<long>(n), "mu_p_normalize: patch weight above rn/(n+1)");
  }
  return a;
}

MuPAction mu_p_action(const Fan& fan) {
  FwpsData d = recognize_fwps(fan);
  auto f = factorize(d.cover_index);
  if (!all_ones(d.weights) || f.size() != 1 || f[0].second != 1) throw NotPnModP("not P^n modulo a prime-order group");
  const std::size_t n = fan.rank();
  const Int p = d.cover_index;
  Snf s = smith_normal_form(IntMat::from_columns(fan.rays(), n));
  ensure(s.diag[n - 1] == p, "mu_p_action: Smith form");
  std::vector<Int> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = mod(s.V(i, n - 1), p);
  IntVec sum(n, Int(0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k < n; ++k) sum[k] += c[i] * fan.ray(i)[k];
  for (const auto& x : sum) ensure(x % p == 0, "mu_p_action: residues do not give a lattice point");
  return mu_p_normalize(c, p, n);
}

CurveCertificate mu_p_torus_curve(const Fan& fan) {
  MuPAction a = mu_p_action(fan);
  const std::size_t n = fan.rank();
  IntVec u(n, Int(0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k < n; ++k) u[k] += a.patch_weights[i] * fan.ray(i)[k];
  for (auto& x : u) {
    ensure(x % a.p == 0, "mu_p_torus_curve: patch one-ps is not in pN");
    x /= a.p;
  }
  CurveCertificate cert = certify(fan, {{}, u}, {"mu-p-torus-patch:coordinate=" + std::to_string(a.patch)});
  Int w1 = *std::max_element(a.patch_weights.begin(), a.patch_weights.end());
  const Rat bound(w1 * static_cast<long>(n + 1), a.p);
  ensure(cert.anti_canonical <= bound, "mu_p torus curve: -K.C above (n+1)w_1/p");
  ensure(cert.anti_canonical <= static_cast<long>(n), "mu_p torus curve: -K.C above n");
  return cert;
}

BoundaryCase classify_boundary(const Fan& fan, int ray) {
  FwpsData d = recognize_fwps(fan);
  auto f = factorize(d.cover_index);
  if (!all_ones(d.weights) || f.size() != 1 || f[0].second != 1) throw NotPnModP("not P^n modulo a prime-order group");
  if (ray < 0 || ray >= static_cast<int>(fan.num_rays())) throw ConeNotInFan("ray index out of range");
  const Int p = d.cover_index;
  StarFan star = star_fan(fan, {ray});
  FwpsData sd = recognize_fwps(star.fan);
  BoundaryCase out;
  if (sd.cover_index == 1) {
    out.weighted = true;
    for (const auto& w : sd.weights) ensure(w == 1 || w == p, "boundary wps weights are not in {1, p}");
    for (int i = 0; i < static_cast<int>(fan.num_rays()); ++i) {
      if (i == ray) continue;
      Int m = cone_multiplicity(fan, make_cone({i, ray}));
      if (m > 1) {
        out.witness = i;
        out.witness_multiplicity = m;
        break;
      }
    }
    ensure(out.witness >= 0, "boundary wps without a multiplicity witness");
  } else {
    ensure(sd.cover_index == p && all_ones(sd.weights), "boundary is neither wps nor P^{n-1}/mu_p");
  }
  return out;
}

namespace {

CurveCertificate pn_mod_p_curve(const Fan& fan, const Cone& orbit) {
  const long n = static_cast<long>(fan.rank());
  if (orbit.empty()) return mu_p_torus_curve(fan);
  const int k = orbit[0];
  BoundaryCase bc = classify_boundary(fan, k);
  StarFan star = star_fan(fan, {k});
  Cone inner_orbit = orbit_in_star(star, orbit);
  CurveCertificate inner;
  std::string tag;
  if (bc.weighted) {
    inner = wps_curve_all_leq1(star.fan, inner_orbit);
    tag = ray_tag("boundary-weighted", k) + ",witness=" + std::to_string(bc.witness) +
          ",mult=" + to_string(bc.witness_multiplicity);
  } else {
    inner = fwps_curve(star.fan, inner_orbit);
    tag = ray_tag("boundary-fake", k);
  }
  std::vector<std::string> trace{tag};
  trace.insert(trace.end(), inner.trace.begin(), inner.trace.end());
  CurveCertificate cert = certify(fan, lift_from_star(fan, star, inner.curve), trace);
  cert.assumptions = inner.assumptions;
  if (bc.weighted) {
    ensure(cert.anti_canonical == (n + 1) * cert.intersections[bc.witness], "boundary: -K = (n+1) D_i");
    ensure(cert.anti_canonical <= Rat(n + 1, bc.witness_multiplicity), "boundary: -K.C above (n+1)/m");
  } else {
    ensure(cert.anti_canonical <= Rat((n - 1) * (n + 1), n), "boundary: -K.C above (n-1)(n+1)/n");
  }
  ensure(cert.anti_canonical <= n, "boundary: -K.C above n");
  return cert;
}

}  // namespace

CurveCertificate fwps_curve(const Fan& fan, const Cone& orbit_in) {
  Cone orbit = make_cone(orbit_in);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not in the fan");
  FwpsData d = recognize_fwps(fan);
  const std::size_t n = fan.rank();
  CurveCertificate cert;
  if (d.cover_index == 1) {
    cert = wps_curve_all_leq1(fan, orbit);
  } else if (!all_ones(d.weights)) {
    CoverData cover = universal_cover_codim1(d);
    CurveCertificate up = wps_curve_all_leq1(cover.cover, orbit);
    cert = descend(fan, cover.cover, cover.cover_to_ambient, up, "cover-descent:index=" + to_string(cover.index));
  } else {
    auto primes = factorize(d.cover_index);
    const Int p = primes[0].first;
    if (d.cover_index == p) {
      cert = pn_mod_p_curve(fan, orbit);
    } else {
      // N' + Z g with g of order p in N / N' gives P^n / mu_p -> fan.
      Snf s = smith_normal_form(IntMat::from_columns(fan.rays(), n));
      IntMat uinv = unimodular_inverse(s.U);
      IntVec g = uinv.col(n - 1);
      for (auto& x : g) x *= s.diag[n - 1] / p;
      std::vector<IntVec> gens = fan.rays();
      gens.push_back(g);
      IntMat basis = lattice_basis(gens, n);
      std::vector<IntVec> rays;
      for (const auto& v : fan.rays()) rays.push_back(integral_coordinates(basis, v));
      Fan mid = make_fan_unchecked(n, std::move(rays), fan.max_cones());
      ensure(recognize_fwps(mid).cover_index == p, "intermediate quotient has the wrong index");
      cert = descend(fan, mid, basis, fwps_curve(mid, orbit), "intermediate-quotient:p=" + to_string(p));
    }
  }
  const long dim = static_cast<long>(n);
  ensure(cert.anti_canonical <= dim + 1, "fwps curve: -K.C above dim + 1");
  if (cert.anti_canonical > dim)
    ensure(!is_terminal(fan).terminal || is_projective_space(fan), "fwps curve: -K.C above dim on terminal non-P^n");
  check_through(fan, cert, orbit);
  return cert;
}

BaseCase base_case_curve(const Fan& fan, const ExtremalRay& ray, const TorusDivisor& d, const Cone& orbit_in) {
  Cone orbit = make_cone(orbit_in);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not in the fan");
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  if (is_projective_space(fan)) throw IsProjectiveSpace("the whole variety is projective space");
  Classification cls = classify_contraction(fan, ray);
  const Cone& neg = cls.exc;
  const Cone& pos = ray.positive;
  if (!is_subset(neg, orbit)) throw OrbitNotInExc("P is not in the exceptional locus");
  if (intersect(fan, d, ray.representative) != 0) throw DivisorMismatch("divisor is not orthogonal to the ray");
  if (!is_nef(fan, d)) throw NotNef("divisor is not nef");

  const std::size_t n = fan.rank();
  Cone tau_w = cone_union(neg, cone_minus(orbit, pos));
  ensure(fan.has_cone(tau_w), "fiber: orbit of W is not a cone");
  StarFan sw = star_fan(fan, tau_w);
  const std::size_t qn = sw.quotient.quotient_rank;
  std::vector<IntVec> images;
  for (int j : pos) {
    ensure(sw.star_ray[j] >= 0, "fiber: positive ray outside the star of W");
    images.push_back(sw.quotient.project(fan.ray(j)));
  }
  IntMat basis = saturation_basis(images, qn);
  const std::size_t f = pos.size() - 1;
  ensure(basis.cols() == f, "fiber: positive rays do not span a corank-one lattice");
  std::vector<IntVec> rays;
  for (const auto& u : images) rays.push_back(primitive_part(integral_coordinates(basis, u)));
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip < pos.size(); ++skip) {
    Cone c, amb = tau_w;
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (i != skip) {
        c.push_back(static_cast<int>(i));
        amb.push_back(pos[i]);
      }
    ensure(fan.has_cone(make_cone(amb)), "fiber: cone missing over W");
    cones.push_back(c);
  }
  BaseCase out;
  out.fiber = build_fan(f, std::move(rays), std::move(cones));
  out.fiber_rays = pos;
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (std::binary_search(orbit.begin(), orbit.end(), pos[i])) out.fiber_orbit.push_back(static_cast<int>(i));
  out.target_is_point = cls.kind == StepKind::MoriFiber && pos.size() == n + 1;

  CurveCertificate inner = fwps_curve(out.fiber, out.fiber_orbit);
  out.fiber_anti_canonical = inner.anti_canonical;
  IntVec x = quotient_lattice(out.fiber.cone_rays(inner.curve.tau), f).lift(inner.curve.w);
  IntVec z = sw.quotient.lift(basis.apply(x));
  Cone tau = tau_w;
  for (int i : inner.curve.tau) tau.push_back(pos[i]);
  tau = make_cone(tau);
  IntVec w = quotient_lattice(fan.cone_rays(tau), n).project(z);
  ensure(content(w) == 1, "fiber curve is not primitive in the ambient orbit");

  std::vector<std::string> trace{"fiber-extraction:dim=" + std::to_string(f)};
  trace.insert(trace.end(), inner.trace.begin(), inner.trace.end());
  out.certificate = certify(fan, {tau, w}, trace);
  out.certificate.assumptions = inner.assumptions;
  check_through(fan, out.certificate, orbit);

  const Rat& k = out.certificate.anti_canonical;
  ensure(k <= out.fiber_anti_canonical, "fiber: -K_X.C above -K_F.C");
  if (out.target_is_point) {
    if (k > static_cast<long>(n)) ensure(!is_terminal(fan).terminal, "base case: -K.C above dim on terminal input");
  } else {
    ensure(out.fiber_anti_canonical <= static_cast<long>(f + 1) && f + 1 <= n, "base case: -K_F.C above 1 + dim F");
  }
  out.alpha = dot(d, out.certificate.intersections);
  ensure(out.alpha == 0, "base case: D is not trivial on the fiber curve");
  return out;
}

}  // namespace toric
