#include "toric/divisor.hpp"

#include "toric/errors.hpp"

namespace toric {

TorusDivisor canonical_divisor(const Fan& fan) { return TorusDivisor(fan.num_rays(), Rat(-1)); }

TorusDivisor principal_divisor(const Fan& fan, const RatVec& u) {
  TorusDivisor d(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) d[i] = dot(u, fan.ray(i));
  return d;
}

SupportFunction support_function(const Fan& fan, const TorusDivisor& d) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  SupportFunction phi;
  Int l = 1;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const Cone& sigma = fan.max_cones()[c];
    const RatMat& inv = fan.cone_inverse(c);
    RatVec u(fan.rank(), Rat(0));
    for (std::size_t k = 0; k < sigma.size(); ++k)
      for (std::size_t j = 0; j < fan.rank(); ++j) u[j] += d[sigma[k]] * inv[k][j];
    for (const auto& x : u) l = lcm(l, den(x));
    phi.functionals.push_back(std::move(u));
  }
  phi.cartier_index = l;
  return phi;
}

Rat evaluate(const Fan& fan, const SupportFunction& phi, const RatVec& x) {
  auto loc = fan.locate(x);
  ensure(loc.has_value(), "evaluate: vector outside the support");
  return dot(phi.functionals[loc->first], x);
}

Rat evaluate(const Fan& fan, const SupportFunction& phi, const IntVec& x) { return evaluate(fan, phi, to_rat(x)); }

std::vector<WallCurve> wall_curves(const Fan& fan) {
  std::vector<WallCurve> out;
  const std::size_t n = fan.rank();
  for (std::size_t w = 0; w < fan.walls().size(); ++w) {
    const Wall& wall = fan.walls()[w];
    WallCurve c;
    c.wall = w;
    c.face = wall.face;
    c.ray_a = wall.ray_a;
    c.ray_b = wall.ray_b;
    c.cone_a = wall.cone_a;
    c.cone_b = wall.cone_b;
    std::vector<int> involved{wall.ray_a, wall.ray_b};
    involved.insert(involved.end(), wall.face.begin(), wall.face.end());
    RatMat m(n, RatVec(involved.size()));
    for (std::size_t j = 0; j < involved.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m[i][j] = fan.ray(involved[j])[i];
    auto ker = nullspace(m, involved.size());
    ensure(ker.size() == 1, "wall_curves: wall relation is not unique");
    IntVec rel = primitive_integral(ker[0]);
    if (rel[0] < 0)
      for (auto& x : rel) x = -x;
    ensure(rel[0] > 0 && rel[1] > 0, "wall_curves: relation not positive on the opposite rays");
    c.relation.assign(fan.num_rays(), Int(0));
    for (std::size_t j = 0; j < involved.size(); ++j) c.relation[involved[j]] = rel[j];
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// mult(face) / (mult(face + ray_a) * b_a)
Rat relation_scale(const Fan& fan, const WallCurve& c) {
  Int mt = cone_multiplicity(fan, c.face);
  Int ms = cone_multiplicity(fan, fan.max_cones()[c.cone_a]);
  return Rat(mt) / Rat(ms * c.relation[c.ray_a]);
}

}  // namespace

RatVec intersection_vector(const Fan& fan, const WallCurve& c) {
  Rat s = relation_scale(fan, c);
  RatVec out(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) out[i] = s * c.relation[i];
  return out;
}

Rat intersect_by_relation(const Fan& fan, const TorusDivisor& d, const WallCurve& c) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  Rat sum = 0;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) sum += d[i] * c.relation[i];
  return sum * relation_scale(fan, c);
}

Rat intersect(const Fan& fan, const TorusDivisor& d, const WallCurve& c) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  const Cone& sigma = fan.max_cones()[c.cone_a];
  const RatMat& inv = fan.cone_inverse(c.cone_a);
  // Functional of D on the cone containing ray_a, evaluated at ray_b.
  RatVec coords = toric::apply(inv, fan.ray(c.ray_b));
  Rat u_vb = 0;
  for (std::size_t k = 0; k < sigma.size(); ++k) u_vb += coords[k] * d[sigma[k]];
  Int mt = cone_multiplicity(fan, c.face);
  Int mb = cone_multiplicity(fan, fan.max_cones()[c.cone_b]);
  return (d[c.ray_b] - u_vb) * Rat(mt) / Rat(mb);
}

namespace {

// Divisor on the orbit closure V(tau) after moving D off tau by a principal divisor.
TorusDivisor restrict_to_orbit(const Fan& fan, const StarFan& star, const TorusDivisor& d) {
  const std::size_t n = fan.rank();
  RatVec u(n, Rat(0));
  if (!star.tau.empty()) {
    RatMat m(star.tau.size(), RatVec(n));
    RatVec rhs(star.tau.size());
    for (std::size_t k = 0; k < star.tau.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) m[k][j] = fan.ray(star.tau[k])[j];
      rhs[k] = d[star.tau[k]];
    }
    auto sol = solve(m, n, rhs);
    ensure(sol.has_value(), "restrict_to_orbit: cone rays are dependent");
    u = *sol;
  }
  TorusDivisor out(star.fan.num_rays());
  for (std::size_t j = 0; j < star.fan.num_rays(); ++j) {
    int i = star.ambient_ray[j];
    out[j] = (d[i] - dot(u, fan.ray(i))) * Rat(star.tau_multiplicity) / Rat(star.m[j]);
  }
  return out;
}

Rat degree_on_star(const StarFan& star, const TorusDivisor& restricted, const IntVec& w) {
  SupportFunction phi = support_function(star.fan, restricted);
  IntVec neg = w;
  for (auto& x : neg) x = -x;
  return evaluate(star.fan, phi, w) + evaluate(star.fan, phi, neg);
}

IntVec checked_weight(const StarFan& star, const IntVec& w) {
  if (w.size() != star.fan.rank()) throw DimensionError("weight vector length differs from the orbit dimension");
  if (content(w) == 0) throw ZeroWeight("weight vector is zero");
  return primitive_part(w);
}

}  // namespace

Rat one_ps_degree(const Fan& fan, const TorusDivisor& d, const OnePsCurve& c) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  StarFan star = star_fan(fan, c.tau);
  IntVec w = checked_weight(star, c.w);
  return degree_on_star(star, restrict_to_orbit(fan, star, d), w);
}

RatVec one_ps_intersections(const Fan& fan, const OnePsCurve& c) {
  StarFan star = star_fan(fan, c.tau);
  IntVec w = checked_weight(star, c.w);
  RatVec out(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    TorusDivisor e(fan.num_rays(), Rat(0));
    e[i] = 1;
    out[i] = degree_on_star(star, restrict_to_orbit(fan, star, e), w);
  }
  return out;
}

bool support_function_convex(const Fan& fan, const TorusDivisor& d) {
  SupportFunction phi = support_function(fan, d);
  for (const auto& u : phi.functionals)
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
      if (dot(u, fan.ray(i)) > d[i]) return false;
  return true;
}

bool is_nef(const Fan& fan, const TorusDivisor& d) {
  bool walls_ok = true;
  for (const auto& c : wall_curves(fan))
    if (intersect(fan, d, c) < 0) {
      walls_ok = false;
      break;
    }
  ensure(walls_ok == support_function_convex(fan, d), "is_nef: wall test and convexity test disagree");
  return walls_ok;
}

std::optional<RatVec> rational_equivalence(const Fan& fan, const TorusDivisor& d1, const TorusDivisor& d2) {
  if (d1.size() != fan.num_rays() || d2.size() != fan.num_rays())
    throw DivisorMismatch("divisor has the wrong number of coefficients");
  RatMat m(fan.num_rays(), RatVec(fan.rank()));
  RatVec rhs(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    for (std::size_t j = 0; j < fan.rank(); ++j) m[i][j] = fan.ray(i)[j];
    rhs[i] = d1[i] - d2[i];
  }
  return solve(m, fan.rank(), rhs);
}

bool linearly_equivalent(const Fan& fan, const TorusDivisor& d1, const TorusDivisor& d2) {
  auto u = rational_equivalence(fan, d1, d2);
  if (!u) return false;
  for (const auto& x : *u)
    if (den(x) != 1) return false;
  return true;
}

TorusDivisor pullback(const Fan& coarse, const TorusDivisor& d, const Fan& fine) {
  SupportFunction phi = support_function(coarse, d);
  TorusDivisor out(fine.num_rays());
  for (std::size_t i = 0; i < fine.num_rays(); ++i) out[i] = evaluate(coarse, phi, fine.ray(i));
  return out;
}

TorusDivisor add(const TorusDivisor& a, const TorusDivisor& b) {
  ensure(a.size() == b.size(), "add: divisor lengths differ");
  TorusDivisor out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

TorusDivisor scale(const Rat& s, const TorusDivisor& a) {
  TorusDivisor out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

}  // namespace toric
