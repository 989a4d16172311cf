#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toric/errors.hpp"

namespace toric {

Cone make_cone(std::vector<int> rays) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

bool is_subset(const Cone& a, const Cone& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Cone cone_union(const Cone& a, const Cone& b) {
  Cone out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cone cone_minus(const Cone& a, const Cone& b) {
  Cone out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cone cone_intersection(const Cone& a, const Cone& b) {
  Cone out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

std::vector<Cone> subsets_of_size(int n, int k) {
  std::vector<Cone> out;
  Cone cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<std::pair<std::size_t, RatVec>> locate_impl(const std::vector<RatMat>& inverses, const RatVec& x) {
  for (std::size_t c = 0; c < inverses.size(); ++c) {
    RatVec lambda = toric::apply(inverses[c], x);
    bool inside = true;
    for (const auto& l : lambda)
      if (l < 0) {
        inside = false;
        break;
      }
    if (inside) return std::make_pair(c, std::move(lambda));
  }
  return std::nullopt;
}

// Cheap sufficient test that two simplicial cones meet exactly in their common face:
// every ray of one cone off the common face has a dual functional that is
// non-positive on the other cone.
bool facet_separated(const Fan& fan, std::size_t i, std::size_t j, const Cone& common) {
  const Cone& a = fan.max_cones()[i];
  const Cone& b = fan.max_cones()[j];
  const RatMat& inv = fan.cone_inverse(i);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::binary_search(common.begin(), common.end(), a[k])) continue;
    for (int r : b)
      if (dot(inv[k], fan.ray(r)) > 0) return false;
  }
  return true;
}

// Exact test: is there a point of both cones with a positive coefficient on a ray
// outside their common face?
bool cones_overlap(const Fan& fan, std::size_t i, std::size_t j) {
  const Cone& a = fan.max_cones()[i];
  const Cone& b = fan.max_cones()[j];
  Cone common = cone_intersection(a, b);
  if (facet_separated(fan, i, j, common) || facet_separated(fan, j, i, common)) return false;
  const std::size_t n = fan.rank();
  const std::size_t vars = a.size() + b.size();
  RatMat m(n + 1, RatVec(vars, Rat(0)));
  RatVec rhs(n + 1, Rat(0));
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t r = 0; r < n; ++r) m[r][k] = fan.ray(a[k])[r];
    if (!std::binary_search(common.begin(), common.end(), a[k])) m[n][k] = 1;
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    for (std::size_t r = 0; r < n; ++r) m[r][a.size() + k] = -fan.ray(b[k])[r];
    if (!std::binary_search(common.begin(), common.end(), b[k])) m[n][a.size() + k] = 1;
  }
  rhs[n] = 1;
  return lp_feasible(m, vars, rhs);
}

}  // namespace

std::optional<std::pair<std::size_t, RatVec>> Fan::locate(const IntVec& x) const { return locate_impl(inverses_, to_rat(x)); }

std::optional<std::pair<std::size_t, RatVec>> Fan::locate(const RatVec& x) const { return locate_impl(inverses_, x); }

bool Fan::has_cone(const Cone& c) const {
  for (const auto& s : cones_)
    if (is_subset(c, s)) return true;
  return false;
}

std::vector<std::size_t> Fan::cones_containing(const Cone& c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (is_subset(c, cones_[i])) out.push_back(i);
  return out;
}

std::optional<std::size_t> Fan::ray_index(const IntVec& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

std::vector<IntVec> Fan::cone_rays(const Cone& c) const {
  std::vector<IntVec> out;
  for (int i : c) out.push_back(rays_[i]);
  return out;
}

bool Fan::same_as(const Fan& other) const {
  if (rank_ != other.rank_ || rays_ != other.rays_) return false;
  std::set<Cone> a(cones_.begin(), cones_.end()), b(other.cones_.begin(), other.cones_.end());
  return a == b;
}

Fan build_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones) {
  return assemble_fan(rank, std::move(rays), std::move(max_cones), true);
}

Fan make_fan_unchecked(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> max_cones) {
  return assemble_fan(rank, std::move(rays), std::move(max_cones), false);
}

Fan assemble_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<Cone> cones, bool full) {
  Fan f;
  for (auto& v : rays) {
    if (v.size() != rank) throw NotAFan("ray of wrong length");
    if (content(v) == 0) throw NotAFan("zero ray");
    v = primitive_part(v);
  }
  {
    std::set<IntVec> seen(rays.begin(), rays.end());
    if (seen.size() != rays.size()) throw NotAFan("repeated ray");
  }
  if (cones.empty()) throw NotComplete("no maximal cones");
  for (auto& c : cones) {
    for (int i : c)
      if (i < 0 || static_cast<std::size_t>(i) >= rays.size()) throw NotAFan("ray index out of range");
    std::size_t before = c.size();
    c = make_cone(c);
    if (c.size() != before) throw NotAFan("repeated ray inside a cone");
    if (c.size() > rank) throw NotSimplicial("cone with more rays than the rank");
    if (c.size() < rank) throw NotComplete("cone of dimension below the rank");
  }
  {
    std::set<Cone> seen(cones.begin(), cones.end());
    if (seen.size() != cones.size()) throw NotAFan("repeated maximal cone");
  }
  // Every ray must appear in some cone.
  {
    std::vector<bool> used(rays.size(), false);
    for (const auto& c : cones)
      for (int i : c) used[i] = true;
    for (bool u : used)
      if (!u) throw NotAFan("ray not used by any maximal cone");
  }
  f.rank_ = rank;
  f.rays_ = std::move(rays);
  f.cones_ = std::move(cones);
  for (const auto& c : f.cones_) {
    RatMat m(rank, RatVec(rank));
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t i = 0; i < rank; ++i) m[i][j] = f.rays_[c[j]][i];
    auto inv = inverse(m);
    if (!inv) throw NotSimplicial("maximal cone with dependent rays");
    f.inverses_.push_back(std::move(*inv));
  }
  if (full) {
    for (std::size_t i = 0; i < f.cones_.size(); ++i)
      for (std::size_t j = i + 1; j < f.cones_.size(); ++j)
        if (cones_overlap(f, i, j)) throw NotAFan("maximal cones overlap beyond a common face");
  }
  if (rank > 0) {
    std::map<Cone, std::vector<std::pair<int, int>>> faces;
    for (std::size_t c = 0; c < f.cones_.size(); ++c)
      for (int r : f.cones_[c]) faces[cone_minus(f.cones_[c], {r})].emplace_back(static_cast<int>(c), r);
    for (const auto& [face, sides] : faces) {
      if (sides.size() == 1) throw NotComplete("a wall bounds only one maximal cone");
      if (sides.size() > 2) throw NotAFan("a wall bounds more than two maximal cones");
      Wall w;
      w.face = face;
      w.cone_a = sides[0].first;
      w.ray_a = sides[0].second;
      w.cone_b = sides[1].first;
      w.ray_b = sides[1].second;
      f.walls_.push_back(std::move(w));
    }
  } else if (f.cones_.size() != 1 || !f.rays_.empty()) {
    throw NotAFan("a rank-zero fan has exactly the zero cone");
  }
  if (full && rank > 0) {
    // Probe all nonzero vectors with entries in {-1, 0, 1}.
    IntVec p(rank, Int(-1));
    for (;;) {
      bool zero = std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; });
      if (!zero && !f.locate(p)) throw NotComplete("probe vector outside the support");
      std::size_t k = 0;
      while (k < rank && p[k] == 1) p[k++] = -1;
      if (k == rank) break;
      p[k] += 1;
    }
  }
  return f;
}

bool fans_equivalent(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.num_rays() != b.num_rays() || a.max_cones().size() != b.max_cones().size()) return false;
  std::vector<int> to_a(b.num_rays());
  for (std::size_t i = 0; i < b.num_rays(); ++i) {
    auto j = a.ray_index(b.ray(i));
    if (!j) return false;
    to_a[i] = static_cast<int>(*j);
  }
  std::set<Cone> ca(a.max_cones().begin(), a.max_cones().end());
  for (const auto& c : b.max_cones()) {
    Cone m;
    for (int r : c) m.push_back(to_a[r]);
    if (!ca.count(make_cone(m))) return false;
  }
  return true;
}

Fan projective_space_fan(std::size_t n) {
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVec(n, Int(-1)));
  return make_fan_unchecked(n, std::move(rays), subsets_of_size(static_cast<int>(n) + 1, static_cast<int>(n)));
}

Fan wps_fan(const std::vector<Int>& weights) {
  if (weights.size() < 2) throw BadWeights("need at least two weights");
  Int g = 0;
  for (const auto& w : weights) {
    if (w < 1) throw BadWeights("weights must be positive");
    g = gcd(g, w);
  }
  if (g != 1) throw BadWeights("weights must be coprime");
  const std::size_t n = weights.size() - 1;
  QuotientMap q = quotient_lattice({weights}, n + 1);
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i <= n; ++i) rays.push_back(q.projection.col(i));
  return make_fan_unchecked(n, std::move(rays), subsets_of_size(static_cast<int>(n) + 1, static_cast<int>(n)));
}

Int cone_multiplicity(const Fan& fan, const Cone& cone) {
  if (cone.empty()) return 1;
  Snf s = smith_normal_form(IntMat::from_columns(fan.cone_rays(cone), fan.rank()));
  Int m = 1;
  for (const auto& d : s.diag)
    if (d != 0) m *= d;
  return m;
}

TerminalReport is_terminal(const Fan& fan) {
  TerminalReport rep;
  const std::size_t n = fan.rank();
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    IntMat b = IntMat::from_columns(fan.cone_rays(fan.max_cones()[c]), n);
    Snf s = smith_normal_form(b);
    IntMat uinv = unimodular_inverse(s.U);
    const RatMat& inv = fan.cone_inverse(c);
    // Enumerate Z^n / B Z^n through representatives U^{-1} y, 0 <= y_i < d_i.
    std::vector<Int> y(n, Int(0));
    bool bad = false;
    for (;;) {
      std::size_t k = 0;
      while (k < n && y[k] + 1 >= s.diag[k]) y[k++] = 0;
      if (k == n) break;
      y[k] += 1;
      RatVec lambda = toric::apply(inv, uinv.apply(y));
      Rat sum = 0;
      for (const auto& l : lambda) sum += frac(l);
      if (sum <= 1) {
        bad = true;
        break;
      }
    }
    if (bad) {
      rep.terminal = false;
      rep.offending.push_back(c);
    }
  }
  return rep;
}

StarFan star_fan(const Fan& fan, const Cone& tau_in) {
  Cone tau = make_cone(tau_in);
  if (!fan.has_cone(tau)) throw ConeNotInFan("cone is not a face of the fan");
  StarFan out;
  out.tau = tau;
  out.quotient = quotient_lattice(fan.cone_rays(tau), fan.rank());
  out.tau_multiplicity = cone_multiplicity(fan, tau);
  auto containing = fan.cones_containing(tau);
  Cone star_rays;
  for (auto c : containing) star_rays = cone_union(star_rays, cone_minus(fan.max_cones()[c], tau));
  out.star_ray.assign(fan.num_rays(), -1);
  std::vector<IntVec> rays;
  for (int r : star_rays) {
    out.star_ray[r] = static_cast<int>(rays.size());
    out.ambient_ray.push_back(r);
    IntVec img = out.quotient.project(fan.ray(r));
    Int b = content(img);
    ensure(b != 0, "star_fan: ray maps to zero");
    out.b.push_back(b);
    rays.push_back(primitive_part(img));
    out.m.push_back(cone_multiplicity(fan, cone_union(tau, {r})));
  }
  std::vector<Cone> cones;
  for (auto c : containing) {
    Cone sc;
    for (int r : cone_minus(fan.max_cones()[c], tau)) sc.push_back(out.star_ray[r]);
    cones.push_back(make_cone(sc));
  }
  out.fan = make_fan_unchecked(out.quotient.quotient_rank, std::move(rays), std::move(cones));
  return out;
}

Subdivision star_subdivision(const Fan& fan, const IntVec& raw) {
  IntVec w = primitive_part(raw);
  if (fan.ray_index(w)) throw RayAlreadyPresent("ray already in the fan");
  auto loc = fan.locate(w);
  if (!loc) throw RayNotInSupport("vector outside the support of the fan");
  const Cone& sigma = fan.max_cones()[loc->first];
  Cone tau;
  for (std::size_t k = 0; k < sigma.size(); ++k)
    if (loc->second[k] > 0) tau.push_back(sigma[k]);
  Subdivision out;
  out.subdivided = tau;
  out.new_ray = static_cast<int>(fan.num_rays());
  std::vector<IntVec> rays = fan.rays();
  rays.push_back(w);
  std::vector<Cone> cones;
  for (const auto& c : fan.max_cones()) {
    if (!is_subset(tau, c)) {
      cones.push_back(c);
      continue;
    }
    for (int i : tau) {
      Cone nc = cone_minus(c, {i});
      nc.push_back(out.new_ray);
      cones.push_back(make_cone(nc));
    }
  }
  out.fan = make_fan_unchecked(fan.rank(), std::move(rays), std::move(cones));
  return out;
}

FwpsData recognize_fwps(const Fan& fan) {
  const std::size_t n = fan.rank();
  if (n == 0 || fan.num_rays() != n + 1) throw NotFwps("a fake weighted projective space has rank + 1 rays");
  IntMat r = IntMat::from_columns(fan.rays(), n);
  auto ker = nullspace(to_rat(r), n + 1);
  if (ker.size() != 1) throw NotFwps("rays do not satisfy a unique relation");
  IntVec rel = primitive_integral(ker[0]);
  if (rel[0] < 0)
    for (auto& x : rel) x = -x;
  for (const auto& x : rel)
    if (x <= 0) throw NotFwps("relation is not strictly positive");
  FwpsData d;
  d.weights = rel;
  Snf s = smith_normal_form(r);
  d.cover_index = 1;
  for (const auto& x : s.diag) {
    d.cover_index *= x;
    if (x > 1) d.group_invariants.push_back(x);
  }
  d.cover_to_ambient = lattice_basis(fan.rays(), n);
  std::vector<IntVec> cover_rays;
  for (const auto& v : fan.rays()) cover_rays.push_back(integral_coordinates(d.cover_to_ambient, v));
  d.cover_fan = make_fan_unchecked(n, std::move(cover_rays), fan.max_cones());
  return d;
}

bool is_projective_space(const Fan& fan) {
  if (fan.rank() == 0 || fan.num_rays() != fan.rank() + 1) return false;
  for (const auto& c : fan.max_cones())
    if (cone_multiplicity(fan, c) != 1) return false;
  return recognize_fwps(fan).cover_index == 1;
}

}  // namespace toric
