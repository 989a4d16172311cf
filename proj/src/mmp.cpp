#include "toric/mmp.hpp"

#include <map>
#include <set>

#include "toric/errors.hpp"

namespace toric {

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::MoriFiber:
      return "mori-fiber";
    case StepKind::Divisorial:
      return "divisorial";
    case StepKind::Flip:
      return "flip";
  }
  return "unknown";
}

namespace {

RatVec ray_key(const RatVec& v) {
  Rat s = 0;
  for (const auto& x : v)
    if (x != 0) {
      s = x < 0 ? Rat(-x) : x;
      break;
    }
  ensure(s != 0, "mori_extremal_rays: a wall class is numerically trivial");
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / s;
  return out;
}

Rat degree(const TorusDivisor& d, const RatVec& class_vector) {
  Rat s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * class_vector[i];
  return s;
}

std::vector<int> push_cone(const Cone& c, const std::vector<int>& ray_map) {
  Cone out;
  for (int r : c) out.push_back(ray_map[r]);
  return make_cone(out);
}

}  // namespace

std::vector<ExtremalRay> mori_extremal_rays(const Fan& fan) {
  auto walls = wall_curves(fan);
  std::vector<RatVec> keys;
  std::vector<std::vector<std::size_t>> members;
  std::map<RatVec, std::size_t> index;
  for (std::size_t w = 0; w < walls.size(); ++w) {
    RatVec key = ray_key(intersection_vector(fan, walls[w]));
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, keys.size());
      keys.push_back(key);
      members.push_back({w});
    } else {
      members[it->second].push_back(w);
    }
  }
  std::vector<ExtremalRay> out;
  const std::size_t m = fan.num_rays();
  for (std::size_t g = 0; g < keys.size(); ++g) {
    // Extremal iff the class is not a nonnegative combination of the other classes.
    std::vector<std::size_t> others;
    for (std::size_t h = 0; h < keys.size(); ++h)
      if (h != g) others.push_back(h);
    bool extremal = true;
    if (!others.empty()) {
      RatMat a(m, RatVec(others.size()));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < others.size(); ++k) a[i][k] = keys[others[k]][i];
      extremal = !lp_feasible(a, others.size(), keys[g]);
    }
    if (!extremal) continue;
    ExtremalRay r;
    r.representative = walls[members[g].front()];
    r.walls = members[g];
    r.class_vector = intersection_vector(fan, r.representative);
    for (std::size_t i = 0; i < m; ++i) {
      if (r.representative.relation[i] < 0) r.negative.push_back(static_cast<int>(i));
      if (r.representative.relation[i] > 0) r.positive.push_back(static_cast<int>(i));
    }
    Rat anti = 0;
    for (const auto& x : r.class_vector) anti += x;
    r.k_degree = -anti;
    r.k_negative = r.k_degree < 0;
    out.push_back(std::move(r));
  }
  return out;
}

Classification classify_contraction(const Fan& fan, const ExtremalRay& ray) {
  RatVec key = ray_key(ray.class_vector);
  bool found = false;
  for (const auto& r : mori_extremal_rays(fan))
    if (ray_key(r.class_vector) == key) found = true;
  if (!found) throw NotExtremal("curve class does not span an extremal ray");
  Classification c;
  c.exc = ray.negative;
  if (ray.negative.empty()) c.kind = StepKind::MoriFiber;
  else if (ray.negative.size() == 1) c.kind = StepKind::Divisorial;
  else c.kind = StepKind::Flip;
  return c;
}

namespace {

Contraction contract_divisorial(const Fan& fan, const ExtremalRay& ray, const std::optional<TorusDivisor>& d) {
  const int e = ray.negative.front();
  Contraction out;
  out.kind = StepKind::Divisorial;
  out.exceptional_ray = e;
  out.ray_map.assign(fan.num_rays(), -1);
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    if (static_cast<int>(i) == e) continue;
    out.ray_map[i] = static_cast<int>(rays.size());
    rays.push_back(fan.ray(i));
  }
  std::vector<Cone> cones;
  std::set<Cone> seen;
  for (const auto& sigma : fan.max_cones()) {
    Cone c = std::binary_search(sigma.begin(), sigma.end(), e) ? cone_union(cone_minus(sigma, {e}), ray.positive) : sigma;
    Cone mapped = push_cone(c, out.ray_map);
    if (seen.insert(mapped).second) cones.push_back(mapped);
  }
  out.target = build_fan(fan.rank(), std::move(rays), std::move(cones));
  ensure(fans_equivalent(star_subdivision(out.target, fan.ray(e)).fan, fan),
         "contract: subdividing the target does not recover the source");
  if (d) {
    TorusDivisor pushed;
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
      if (static_cast<int>(i) != e) pushed.push_back((*d)[i]);
    ensure(pullback(out.target, pushed, fan) == *d, "contract: pushed divisor does not pull back to the source divisor");
    out.pushed = std::move(pushed);
  }
  return out;
}

Contraction contract_fiber(const Fan& fan, const ExtremalRay& ray, const std::optional<TorusDivisor>& d) {
  const std::size_t n = fan.rank();
  const Cone& jplus = ray.positive;
  Contraction out;
  out.kind = StepKind::MoriFiber;
  IntMat sat = saturation_basis(fan.cone_rays(jplus), n);
  std::vector<IntVec> kernel;
  for (std::size_t j = 0; j < sat.cols(); ++j) kernel.push_back(sat.col(j));
  out.quotient = quotient_lattice(kernel, n);
  out.ray_map.assign(fan.num_rays(), -1);
  std::vector<IntVec> rays;
  std::vector<Int> mult(fan.num_rays(), Int(0));
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    if (std::binary_search(jplus.begin(), jplus.end(), static_cast<int>(i))) continue;
    IntVec img = out.quotient.project(fan.ray(i));
    Int b = content(img);
    ensure(b != 0, "contract: a ray off the fiber maps to zero");
    mult[i] = b;
    IntVec prim = primitive_part(img);
    int idx = -1;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (rays[k] == prim) idx = static_cast<int>(k);
    if (idx < 0) {
      idx = static_cast<int>(rays.size());
      rays.push_back(prim);
    }
    out.ray_map[i] = idx;
  }
  std::vector<Cone> cones;
  std::set<Cone> seen;
  for (const auto& sigma : fan.max_cones()) {
    if (cone_intersection(sigma, jplus).size() + 1 != jplus.size()) continue;
    Cone mapped = push_cone(cone_minus(sigma, jplus), out.ray_map);
    if (seen.insert(mapped).second) cones.push_back(mapped);
  }
  out.target = build_fan(out.quotient.quotient_rank, std::move(rays), std::move(cones));
  if (d) {
    // Remove the part of d along the fiber with a principal divisor, then descend.
    RatMat m(jplus.size(), RatVec(n));
    RatVec rhs(jplus.size());
    for (std::size_t k = 0; k < jplus.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) m[k][j] = fan.ray(jplus[k])[j];
      rhs[k] = (*d)[jplus[k]];
    }
    auto u = solve(m, n, rhs);
    ensure(u.has_value(), "contract: divisor is not trivial along the fiber");
    TorusDivisor moved = add(*d, scale(-1, principal_divisor(fan, *u)));
    TorusDivisor pushed(out.target.num_rays());
    std::vector<bool> set(out.target.num_rays(), false);
    for (std::size_t i = 0; i < fan.num_rays(); ++i) {
      int k = out.ray_map[i];
      if (k < 0) {
        ensure(moved[i] == 0, "contract: divisor is not trivial along the fiber");
        continue;
      }
      Rat c = moved[i] / Rat(mult[i]);
      ensure(!set[k] || pushed[k] == c, "contract: divisor does not descend");
      pushed[k] = c;
      set[k] = true;
    }
    if (out.target.rank() > 0) {
      SupportFunction phi = support_function(out.target, pushed);
      for (std::size_t i = 0; i < fan.num_rays(); ++i) {
        if (out.ray_map[i] < 0) continue;
        ensure(evaluate(out.target, phi, out.quotient.project(fan.ray(i))) == moved[i],
               "contract: pushed divisor does not pull back to the source divisor");
      }
    }
    out.pushed = std::move(pushed);
  }
  return out;
}

}  // namespace

Contraction contract(const Fan& fan, const ExtremalRay& ray, const std::optional<TorusDivisor>& d) {
  Classification cls = classify_contraction(fan, ray);
  if (cls.kind == StepKind::Flip) throw FlipRequired("small contraction: use flip");
  if (d) {
    if (d->size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
    if (degree(*d, ray.class_vector) != 0) throw DivisorMismatch("divisor is not trivial on the contracted ray");
  }
  return cls.kind == StepKind::Divisorial ? contract_divisorial(fan, ray, d) : contract_fiber(fan, ray, d);
}

Flip flip(const Fan& fan, const ExtremalRay& ray) {
  Classification cls = classify_contraction(fan, ray);
  if (cls.kind != StepKind::Flip) throw NotFlip("extremal ray does not define a flip");
  const Cone& jminus = ray.negative;
  const Cone& jplus = ray.positive;
  const IntVec& b = ray.representative.relation;
  const std::size_t n = fan.rank();
  IntVec sum(n, Int(0));
  for (int j : jplus)
    for (std::size_t k = 0; k < n; ++k) sum[k] += b[j] * fan.ray(j)[k];
  Flip out;
  out.new_ray = primitive_part(sum);
  const Int g = content(sum);
  out.generator.resize(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) out.generator[i] = Rat(b[i]) / Rat(g);
  out.wall_factor = ray.class_vector[ray.representative.ray_a] / out.generator[ray.representative.ray_a];
  ensure(out.wall_factor > 0, "flip: wall curve is not a positive multiple of the generator");
  ensure(scale(out.wall_factor, out.generator) == ray.class_vector, "flip: wall curve is not on the generator's ray");
  Subdivision sub = star_subdivision(fan, out.new_ray);
  ensure(sub.subdivided == jminus, "flip: new ray is not interior to the exceptional cone");
  out.xstar = sub.fan;
  out.dstar_ray = sub.new_ray;
  std::vector<Cone> cones;
  std::set<Cone> seen;
  for (const auto& sigma : fan.max_cones()) {
    if (!is_subset(jminus, sigma)) {
      if (seen.insert(sigma).second) cones.push_back(sigma);
      continue;
    }
    ensure(cone_intersection(sigma, jplus).size() + 1 == jplus.size(), "flip: unexpected cone around the exceptional locus");
    Cone link = cone_minus(cone_minus(sigma, jminus), jplus);
    for (int i : jminus) {
      Cone c = cone_union(cone_union(jplus, cone_minus(jminus, {i})), link);
      if (seen.insert(c).second) cones.push_back(c);
    }
  }
  out.flipped = build_fan(n, fan.rays(), std::move(cones));
  ensure(fans_equivalent(star_subdivision(out.flipped, out.new_ray).fan, out.xstar),
         "flip: the two sides have no common star subdivision at the new ray");
  for (std::size_t f = 0; f < fan.num_rays(); ++f) {
    TorusDivisor unit(fan.num_rays(), Rat(0));
    unit[f] = 1;
    TorusDivisor lhs = pullback(fan, unit, out.xstar);
    TorusDivisor rhs = pullback(out.flipped, unit, out.xstar);
    rhs[out.dstar_ray] -= out.generator[f];
    if (lhs != rhs) throw IdentityFailure("flip: pullback identity fails for a ray divisor");
  }
  return out;
}

StepChoice step_a(const Fan& fan, const TorusDivisor& d) { return step_a(fan, d, mori_extremal_rays(fan)); }

StepChoice step_a(const Fan& fan, const TorusDivisor& d, const std::vector<ExtremalRay>& rays) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  std::optional<StepChoice> best;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (!rays[r].k_negative) continue;
    Rat ratio = degree(d, rays[r].class_vector) / -rays[r].k_degree;
    if (!best || ratio < best->a) best = StepChoice{ratio, r};
  }
  if (!best) throw NoKNegativeRay("no K-negative extremal ray");
  return *best;
}

std::size_t picard_rank(const Fan& fan) { return fan.num_rays() - fan.rank(); }

MmpChain run_mmp_chain(const Fan& fan, const TorusDivisor& d, const Cone& orbit_in, bool canonically_bounded) {
  if (d.size() != fan.num_rays()) throw DivisorMismatch("divisor has the wrong number of coefficients");
  if (!is_nef(fan, d)) throw NotNef("divisor is not nef");
  Cone orbit = make_cone(orbit_in);
  if (!fan.has_cone(orbit)) throw ConeNotInFan("orbit cone is not a cone of the fan");
  MmpChain chain;
  Fan x = fan;
  TorusDivisor dx = d;
  const std::size_t budget = 10 * fan.num_rays();
  for (;;) {
    if (chain.steps.size() >= budget) throw NonTermination("step budget exhausted");
    auto rays = mori_extremal_rays(x);
    StepChoice choice = step_a(x, dx, rays);
    MmpStep s;
    s.a = choice.a;
    s.source = x;
    s.divisor = dx;
    s.ray = rays[choice.ray];
    s.adjusted = add(dx, scale(choice.a, canonical_divisor(x)));
    ensure(s.a >= 0, "run_mmp_chain: negative a-value");
    ensure(degree(s.adjusted, s.ray.class_vector) == 0, "run_mmp_chain: D + aK is not trivial on the chosen ray");
    ensure(is_nef(x, s.adjusted), "run_mmp_chain: D + aK is not nef");
    Classification cls = classify_contraction(x, s.ray);
    s.kind = cls.kind;
    s.exc = cls.exc;
    s.orbit = orbit;
    s.p_in_exc = is_subset(cls.exc, orbit);
    s.canonically_bounded = canonically_bounded;
    s.picard_source = picard_rank(x);
    if (cls.kind == StepKind::Flip) {
      Flip fl = flip(x, s.ray);
      s.target = fl.flipped;
      s.ray_map.resize(x.num_rays());
      for (std::size_t i = 0; i < x.num_rays(); ++i) s.ray_map[i] = static_cast<int>(i);
      s.pushed = s.adjusted;
      s.flip_data = std::move(fl);
    } else {
      Contraction c = contract(x, s.ray, s.adjusted);
      s.target = c.target;
      s.ray_map = c.ray_map;
      s.pushed = c.pushed;
      s.exceptional_ray = c.exceptional_ray;
      if (c.kind == StepKind::Divisorial)
        s.discrepancy = Rat(-1) - pullback(c.target, canonical_divisor(c.target), x)[c.exceptional_ray];
    }
    s.picard_target = s.target.rank() == 0 ? 0 : picard_rank(s.target);
    switch (s.kind) {
      case StepKind::Flip:
        ensure(s.picard_target == s.picard_source, "run_mmp_chain: flip changed the Picard rank");
        break;
      case StepKind::Divisorial:
      case StepKind::MoriFiber:
        ensure(s.picard_target + 1 == s.picard_source, "run_mmp_chain: contraction did not drop the Picard rank by one");
        break;
    }
    chain.steps.push_back(s);
    if (s.p_in_exc) {
      chain.terminal = chain.steps.size() - 1;
      return chain;
    }
    Cone moved = push_cone(orbit, s.ray_map);
    for (int r : moved) ensure(r >= 0, "run_mmp_chain: orbit cone meets the exceptional locus");
    ensure(s.target.has_cone(moved), "run_mmp_chain: orbit cone is not a cone of the target");
    orbit = moved;
    x = s.target;
    dx = *s.pushed;
  }
}

}  // namespace toric
