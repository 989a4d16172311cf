#pragma once
// Independent brute-force computations used as test oracles. None of these call the
// library routine they are checking.

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "toric/arith.hpp"
#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/linalg.hpp"

namespace doctest {
template <>
struct StringMaker<toric::Int> {
  static String convert(const toric::Int& x) { return toric::to_string(x).c_str(); }
};
template <>
struct StringMaker<toric::Rat> {
  static String convert(const toric::Rat& x) { return toric::to_string(x).c_str(); }
};
}  // namespace doctest

namespace oracle {

using toric::Int;
using toric::IntMat;
using toric::IntVec;
using toric::Rat;
using toric::RatVec;

inline Int euclid_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int det2(const IntMat& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Smith invariants of a 2x2 matrix by searching unimodular pairs with small entries.
inline std::vector<Int> snf2_search(const IntMat& m) {
  std::vector<IntMat> uni;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d)
          if (a * d - b * c == 1 || a * d - b * c == -1) {
            IntMat u(2, 2);
            u(0, 0) = a;
            u(0, 1) = b;
            u(1, 0) = c;
            u(1, 1) = d;
            uni.push_back(u);
          }
  for (const auto& u : uni)
    for (const auto& v : uni) {
      IntMat p = u * m * v;
      if (p(0, 1) != 0 || p(1, 0) != 0) continue;
      Int d1 = p(0, 0), d2 = p(1, 1);
      if (d1 < 0 || d2 < 0) continue;
      if (d1 == 0 && d2 != 0) continue;
      if (d1 != 0 && d2 % d1 != 0) continue;
      return {d1, d2};
    }
  return {};
}

// Smith invariants of a 2x2 matrix from its determinantal divisors.
inline std::vector<Int> snf2_divisors(const IntMat& m) {
  Int d1 = euclid_gcd(euclid_gcd(m(0, 0), m(0, 1)), euclid_gcd(m(1, 0), m(1, 1)));
  if (d1 == 0) return {0, 0};
  Int det = det2(m);
  if (det < 0) det = -det;
  return {d1, det / d1};
}

// Every choice of all but one weight is coprime.
inline bool well_formed(const std::vector<long>& q) {
  for (std::size_t skip = 0; skip < q.size(); ++skip) {
    Int g = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (i != skip) g = euclid_gcd(g, q[i]);
    if (g != 1) return false;
  }
  return true;
}

// Lattice points of conv(0, rays of a simplicial cone) other than 0 and the rays,
// by scanning the bounding box.
inline std::vector<IntVec> extra_simplex_points(const std::vector<IntVec>& rays) {
  const std::size_t n = rays.size();
  IntVec lo(n, Int(0)), hi(n, Int(0));
  for (const auto& r : rays)
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] < lo[i]) lo[i] = r[i];
      if (r[i] > hi[i]) hi[i] = r[i];
    }
  toric::RatMat m(n, RatVec(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m[i][j] = rays[j][i];
  auto inv = *toric::inverse(m);
  std::vector<IntVec> out;
  IntVec x = lo;
  for (;;) {
    RatVec lambda = toric::apply(inv, x);
    Rat sum = 0;
    bool ok = true;
    for (const auto& l : lambda) {
      if (l < 0) ok = false;
      sum += l;
    }
    bool zero = true;
    for (const auto& c : x)
      if (c != 0) zero = false;
    bool vertex = false;
    for (const auto& r : rays)
      if (r == x) vertex = true;
    if (ok && sum <= 1 && !zero && !vertex) out.push_back(x);
    std::size_t k = 0;
    while (k < n && x[k] == hi[k]) x[k++] = lo[k];
    if (k == n) break;
    x[k] += 1;
  }
  return out;
}

inline bool brute_terminal(const toric::Fan& fan) {
  for (const auto& c : fan.max_cones())
    if (!extra_simplex_points(fan.cone_rays(c)).empty()) return false;
  return true;
}

// Coefficients of prod 1/(1 - t^{q_i}) up to degree dmax.
inline std::vector<Int> generating_function_counts(const std::vector<long>& q, long dmax) {
  std::vector<Int> c(dmax + 1, Int(0));
  c[0] = 1;
  for (long w : q)
    for (long d = w; d <= dmax; ++d) c[d] += c[d - w];
  return c;
}

// Index of a two-dimensional cone's generators in their saturation: gcd of the 2x2 minors.
inline Int pair_multiplicity(const IntVec& a, const IntVec& b) {
  Int g = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) g = euclid_gcd(g, a[i] * b[j] - a[j] * b[i]);
  return g;
}

// D_i . D_j on the weighted projective plane P(q): q_i q_j / (q_0 q_1 q_2).
inline Rat wps_plane_product(const std::vector<Int>& q, int i, int j) {
  return Rat(q[i] * q[j], q[0] * q[1] * q[2]);
}

// Quotient of P(q) by mu_m acting with the given residues: the lattice N' of wps_fan(q)
// enlarged by (sum c_i v_i) / m. Returns nothing when some ray stops being primitive or
// the enlargement has the wrong index.
inline std::optional<toric::Fan> fake_quotient(const std::vector<Int>& q, const std::vector<Int>& c, long m) {
  toric::Fan base = toric::wps_fan(q);
  const std::size_t n = base.rank();
  std::vector<IntVec> gens;
  IntVec u(n, Int(0));
  for (std::size_t i = 0; i <= n; ++i) {
    IntVec v = base.ray(i);
    for (std::size_t k = 0; k < n; ++k) u[k] += c[i] * v[k];
    for (auto& x : v) x *= m;
    gens.push_back(v);
  }
  gens.push_back(u);
  IntMat basis = toric::lattice_basis(gens, n);
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i <= n; ++i) {
    // gens span m N, so coordinates of m v_i there are coordinates of v_i in N.
    rays.push_back(toric::integral_coordinates(basis, gens[i]));
  }
  for (const auto& r : rays) {
    Int g = 0;
    for (const auto& x : r) g = euclid_gcd(g, x);
    if (g != 1) return std::nullopt;
  }
  toric::Fan f = toric::build_fan(n, rays, base.max_cones());
  if (toric::recognize_fwps(f).cover_index != m) return std::nullopt;
  return f;
}

// Random complete simplicial fans: repeated star subdivisions at random lattice points
// of random cones, starting from projective space or a weighted projective space.
struct RandomFan {
  toric::Fan base;
  toric::Fan fan;
  toric::TorusDivisor nef;  // pullback of the anticanonical class of the base
};

inline RandomFan random_fan_with_nef(std::mt19937& rng, std::size_t rank, int subdivisions) {
  std::uniform_int_distribution<int> coin(0, 2);
  RandomFan out;
  int kind = coin(rng);
  if (kind == 0 || rank > 3) {
    out.base = toric::projective_space_fan(rank);
  } else {
    std::uniform_int_distribution<int> w(1, 3);
    std::vector<Int> q;
    for (std::size_t i = 0; i <= rank; ++i) q.push_back(w(rng));
    q[0] = 1;
    out.base = toric::wps_fan(q);
  }
  toric::Fan f = out.base;
  for (int s = 0; s < subdivisions; ++s) {
    std::uniform_int_distribution<std::size_t> pick(0, f.max_cones().size() - 1);
    const auto& c = f.max_cones()[pick(rng)];
    std::uniform_int_distribution<int> coef(0, 2);
    IntVec v(rank, Int(0));
    bool nonzero = false;
    for (int r : c) {
      int k = coef(rng);
      if (k > 0) nonzero = true;
      for (std::size_t i = 0; i < rank; ++i) v[i] += k * f.ray(r)[i];
    }
    if (!nonzero) continue;
    v = toric::primitive_part(v);
    if (f.ray_index(v)) continue;
    f = toric::star_subdivision(f, v).fan;
  }
  out.fan = f;
  out.nef = toric::pullback(out.base, toric::TorusDivisor(out.base.num_rays(), Rat(1)), out.fan);
  return out;
}

inline toric::Fan random_subdivided_fan(std::mt19937& rng, std::size_t rank, int subdivisions) {
  return random_fan_with_nef(rng, rank, subdivisions).fan;
}

// Lowest order of a nonvanishing partial derivative at (1, ..., 1), by direct differentiation.
inline int jet_order(const std::map<std::vector<int>, toric::Rat>& f, std::size_t n, int max_order) {
  for (int t = 0; t <= max_order; ++t) {
    std::vector<int> a(n, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) -> bool {
      if (i + 1 == n) {
        a[i] = left;
        toric::Rat v = 0;
        for (const auto& [e, c] : f) {
          Int d = 1;
          for (std::size_t k = 0; k < n; ++k)
            for (int j = 0; j < a[k]; ++j) d *= e[k] - j;
          v += c * d;
        }
        return v != 0;
      }
      for (int k = 0; k <= left; ++k) {
        a[i] = k;
        if (rec(i + 1, left - k)) return true;
      }
      return false;
    };
    if (rec(0, t)) return t;
  }
  return -1;
}

// Hessian of f at (1,1,1) restricted to u2 = 0, as (u0^2, u0 u1, u1^2) coefficients.
inline std::vector<toric::Rat> hessian_quadratic(const std::map<std::vector<int>, toric::Rat>& f) {
  auto second = [&](int i, int j) {
    toric::Rat v = 0;
    for (const auto& [e, c] : f) v += i == j ? c * e[i] * (e[i] - 1) : c * e[i] * e[j];
    return v;
  };
  return {second(0, 0) / 2, second(0, 1), second(1, 1) / 2};
}

}  // namespace oracle
