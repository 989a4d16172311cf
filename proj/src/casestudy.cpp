#include "toric/casestudy.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "toric/errors.hpp"
#include "toric/fan.hpp"
#include "toric/linalg.hpp"

namespace toric {

namespace {

using Upoly = RatVec;  // low degree first
using Mpoly = std::vector<std::int64_t>;

int total(const Exponent& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

bool monomial_before(const Exponent& a, const Exponent& b) {
  int ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

Int weighted_degree(const std::vector<Int>& q, const Exponent& e) {
  Int d = 0;
  for (std::size_t i = 0; i < q.size(); ++i) d += q[i] * e[i];
  return d;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Int falling(int n, int k) {
  if (k > n) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

// Every exponent vector of length n with entries summing to t.
void compositions(std::size_t n, int t, const std::function<void(const Exponent&)>& fn) {
  Exponent e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      e[i] = left;
      fn(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n == 0) return;
  rec(0, t);
}

void trim(Upoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Upoly& f) { return static_cast<int>(f.size()) - 1; }

Upoly derivative(const Upoly& f) {
  Upoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<long>(k));
  trim(d);
  return d;
}

// Quotient and remainder; g nonzero.
std::pair<Upoly, Upoly> divmod(Upoly f, const Upoly& g) {
  trim(f);
  if (deg(f) < deg(g)) return {{}, f};
  Upoly quo(f.size() - g.size() + 1, Rat(0));
  for (int k = deg(f); k >= deg(g); --k) {
    Rat c = f[k] / g.back();
    quo[k - deg(g)] = c;
    for (int j = 0; j <= deg(g); ++j) f[k - deg(g) + j] -= c * g[j];
  }
  trim(f);
  trim(quo);
  return {quo, f};
}

Upoly ugcd(Upoly a, Upoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Upoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

Rat eval(const Upoly& f, const Rat& x) {
  Rat v = 0;
  for (int k = deg(f); k >= 0; --k) v = v * x + f[k];
  return v;
}

IntVec integerize(const Upoly& f) {
  IntVec v = primitive_integral(f);
  return v;
}

std::vector<Int> divisors(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> primes;
  std::vector<int> exps;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) {
      primes.push_back(p);
      exps.push_back(e);
    }
  }
  if (n > 1) {
    primes.push_back(n);
    exps.push_back(1);
  }
  std::vector<Int> out{1};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::vector<Int> next;
    for (const Int& d : out) {
      Int pw = 1;
      for (int k = 0; k <= exps[i]; ++k) {
        next.push_back(d * pw);
        pw *= primes[i];
      }
    }
    out = std::move(next);
  }
  return out;
}

// --- arithmetic modulo a small prime -------------------------------------------------

std::int64_t mpow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

void mtrim(Mpoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Mpoly mmod(Mpoly f, const Mpoly& g, std::int64_t p) {
  mtrim(f);
  const std::int64_t inv = mpow(g.back(), p - 2, p);
  while (f.size() >= g.size()) {
    std::int64_t c = f.back() * inv % p;
    std::size_t shift = f.size() - g.size();
    for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] = ((f[shift + j] - c * g[j]) % p + p) % p;
    mtrim(f);
  }
  return f;
}

Mpoly mdiv(Mpoly f, const Mpoly& g, std::int64_t p) {
  mtrim(f);
  const std::int64_t inv = mpow(g.back(), p - 2, p);
  Mpoly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
  while (f.size() >= g.size()) {
    std::int64_t c = f.back() * inv % p;
    std::size_t shift = f.size() - g.size();
    q[shift] = c;
    for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] = ((f[shift + j] - c * g[j]) % p + p) % p;
    mtrim(f);
  }
  return q;
}

Mpoly mmul(const Mpoly& a, const Mpoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Mpoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  mtrim(c);
  return c;
}

Mpoly mgcd(Mpoly a, Mpoly b, std::int64_t p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    Mpoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::int64_t inv = mpow(a.back(), p - 2, p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

Mpoly mpowmod(Mpoly base, std::int64_t e, const Mpoly& g, std::int64_t p) {
  Mpoly r{1};
  base = mmod(base, g, p);
  while (e) {
    if (e & 1) r = mmod(mmul(r, base, p), g, p);
    base = mmod(mmul(base, base, p), g, p);
    e >>= 1;
  }
  return r;
}

Mpoly msub(Mpoly a, const Mpoly& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  mtrim(a);
  return a;
}

// Degrees of the irreducible factors of a squarefree g mod p.
std::vector<int> ddf_degrees(Mpoly g, std::int64_t p) {
  std::vector<int> out;
  Mpoly x{0, 1};
  Mpoly h = x;
  for (int i = 1; 2 * i <= static_cast<int>(g.size()) - 1; ++i) {
    h = mpowmod(h, p, g, p);
    Mpoly d = mgcd(g, msub(h, x, p), p);
    int dd = static_cast<int>(d.size()) - 1;
    if (dd > 0) {
      for (int k = 0; k < dd / i; ++k) out.push_back(i);
      g = mdiv(g, d, p);
      h = mmod(h, g, p);
    }
  }
  if (g.size() > 1) out.push_back(static_cast<int>(g.size()) - 1);
  return out;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

// True only when the degree patterns of several primes rule out every proper factor.
bool proven_irreducible(const Upoly& f_in) {
  Upoly f = f_in;
  trim(f);
  const int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  IntVec z = integerize(f);
  std::set<int> possible;
  for (int k = 1; k < n; ++k) possible.insert(k);
  for (int p = 3; p < 2000 && !possible.empty(); ++p) {
    if (!is_prime(p)) continue;
    Mpoly g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      Int r = z[i] % p;
      if (r < 0) r += p;
      g[i] = static_cast<std::int64_t>(r);
    }
    if (g.back() == 0) continue;
    Mpoly dg;
    for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<std::int64_t>(i) % p);
    mtrim(dg);
    if (mgcd(g, dg, p).size() != 1) continue;
    std::set<int> sums{0};
    for (int d : ddf_degrees(g, p)) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + d);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int k : possible)
      if (sums.count(k)) keep.insert(k);
    possible = std::move(keep);
  }
  return possible.empty();
}

// Homogeneous part of total degree t of f(1 + u).
Poly shifted_part(const Poly& f, std::size_t n, int t) {
  Poly out;
  compositions(n, t, [&](const Exponent& a) {
    Rat c = 0;
    for (const auto& [e, coef] : f) {
      Int b = 1;
      for (std::size_t i = 0; i < n && b != 0; ++i) b *= binomial(e[i], a[i]);
      c += coef * b;
    }
    if (c != 0) out[a] = c;
  });
  return out;
}

std::string var_name(std::size_t i, std::size_t n) {
  if (n <= 3) return std::string(1, "xyz"[i]);
  return "w" + std::to_string(i);
}

struct Roots {
  int rational = 0;
  Upoly rest;
};

// Rational roots of a squarefree f, each removed once.
Roots rational_roots(Upoly f) {
  Roots r;
  trim(f);
  while (deg(f) >= 1 && f[0] == 0) {
    f.erase(f.begin());
    ++r.rational;
  }
  if (deg(f) >= 1) {
    IntVec z = integerize(f);
    std::vector<Int> ps = divisors(z.front()), qs = divisors(z.back());
    std::set<Rat> tried;
    for (const Int& a : ps)
      for (const Int& b : qs)
        for (int sign : {1, -1}) {
          Rat x = Rat(a * sign) / b;
          if (!tried.insert(x).second) continue;
          if (deg(f) >= 1 && eval(f, x) == 0) {
            f = divmod(f, Upoly{-x, Rat(1)}).first;
            ++r.rational;
          }
        }
  }
  r.rest = f;
  return r;
}

}  // namespace

// --- forms --------------------------------------------------------------------------

void WeightedForm::validate() const {
  if (weights.empty()) throw BadWeights("no weights");
  for (const auto& q : weights)
    if (q <= 0) throw BadWeights("weights must be positive");
  for (const auto& [e, c] : terms) {
    if (e.size() != weights.size()) throw DimensionError("exponent length differs from the number of weights");
    if (c == 0) throw DimensionError("zero coefficient stored");
    if (weighted_degree(weights, e) != degree) throw DimensionError("monomial of the wrong weighted degree");
  }
}

std::string WeightedForm::to_string() const {
  std::vector<Exponent> order;
  for (const auto& kv : terms) order.push_back(kv.first);
  std::sort(order.begin(), order.end(), monomial_before);
  std::ostringstream os;
  bool first = true;
  for (const auto& e : order) {
    Rat c = terms.at(e);
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit = c == 1 && total(e) > 0;
    if (!unit) os << (den(c) == 1 ? toric::to_string(num(c)) : toric::to_string(c));
    bool need_star = !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(i, e.size());
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::vector<Exponent> monomial_basis(const std::vector<Int>& q, const Int& d) {
  for (const auto& w : q)
    if (w <= 0) throw BadWeights("weights must be positive");
  std::vector<Exponent> out;
  if (d < 0 || q.empty()) return out;
  Exponent e(q.size(), 0);
  std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int left) {
    if (i + 1 == q.size()) {
      if (left % q[i] == 0) {
        e[i] = static_cast<int>(left / q[i]);
        out.push_back(e);
      }
      return;
    }
    for (Int k = 0; k * q[i] <= left; ++k) {
      e[i] = static_cast<int>(k);
      rec(i + 1, left - k * q[i]);
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), monomial_before);
  return out;
}

WeightedForm form_from_coefficients(const std::vector<Int>& q, const Int& d, const RatVec& coeffs) {
  auto basis = monomial_basis(q, d);
  if (basis.size() != coeffs.size()) throw DimensionError("coefficient count differs from the monomial count");
  WeightedForm f{q, d, {}};
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) f.terms[basis[i]] = coeffs[i];
  return f;
}

Rat evaluate_at_one(const Poly& f) {
  Rat s = 0;
  for (const auto& kv : f) s += kv.second;
  return s;
}

Int squarefree_part(const Int& n_in) {
  if (n_in == 0) return 0;
  Int n = n_in < 0 ? Int(-n_in) : n_in;
  Int out = 1;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= n;
  return n_in < 0 ? Int(-out) : out;
}

TangentReport mult_and_tangent_at_one(const WeightedForm& f) {
  f.validate();
  if (f.weights.size() != 3) throw DimensionError("tangent analysis is implemented for weighted planes");
  if (f.terms.empty()) throw NonVanishing("the zero form defines no curve");
  if (evaluate_at_one(f.terms) != 0) throw NonVanishing("the form does not vanish at [1:1:1]");
  TangentReport t;
  int top = 0;
  for (const auto& kv : f.terms) top = std::max(top, total(kv.first));
  Poly lowest;
  for (int m = 1; m <= top; ++m) {
    lowest = shifted_part(f.terms, 3, m);
    if (!lowest.empty()) {
      t.multiplicity = m;
      break;
    }
  }
  ensure(t.multiplicity > 0, "a nonzero form has a nonzero shifted part");
  const int m = t.multiplicity;
  t.tangent.assign(m + 1, Rat(0));
  for (const auto& [e, c] : lowest)
    if (e[2] == 0) t.tangent[e[0]] = c;
  ensure(std::any_of(t.tangent.begin(), t.tangent.end(), [](const Rat& c) { return c != 0; }),
         "tangent cone is invariant along the Euler direction");
  if (m == 2) {
    Rat disc = t.tangent[1] * t.tangent[1] - 4 * t.tangent[2] * t.tangent[0];
    t.discriminant = num(disc) * den(disc);
  }
  // f(s) = F(s, 1); a missing top coefficient is the direction u1 = 0.
  Upoly g = t.tangent;
  trim(g);
  int at_infinity = m - deg(g);
  if (at_infinity > 1) throw UnsupportedBranchType("repeated tangent direction");
  if (deg(g) >= 1 && deg(ugcd(g, derivative(g))) > 0) throw UnsupportedBranchType("repeated tangent direction");
  Roots r = rational_roots(g);
  t.rational_directions = r.rational + at_infinity;
  const int left = deg(r.rest);
  if (left == 2) {
    Rat disc = r.rest[1] * r.rest[1] - 4 * r.rest[2] * r.rest[0];
    IntVec z = integerize(r.rest);
    Int zdisc = z[1] * z[1] - 4 * z[2] * z[0];
    t.has_quadratic_pair = true;
    t.field_d = squarefree_part(num(disc) * den(disc));
    if (!t.discriminant) t.discriminant = zdisc;
  } else if (left > 2) {
    throw UnsupportedBranchType("tangent directions need a field of degree above 2");
  }
  ensure(t.rational_directions + (t.has_quadratic_pair ? 2 : 0) == m, "tangent directions account for the multiplicity");
  return t;
}

BranchData branches_at_one(const TangentReport& t, const ArithmeticContext& ctx) {
  BranchData b(static_cast<std::size_t>(t.rational_directions), Branch{1, ctx.branch_r(1)});
  if (t.has_quadratic_pair) {
    int r = ctx.branch_r(t.field_d);
    b.push_back({1, r});
    b.push_back({1, r});
  }
  return b;
}

std::vector<RatVec> sections_vanishing_to_order(const std::vector<Int>& q, const Int& d, int s) {
  auto basis = monomial_basis(q, d);
  const std::size_t n = q.size();
  RatMat rows;
  for (int t = 0; t < s; ++t)
    compositions(n, t, [&](const Exponent& a) {
      RatVec row;
      for (const auto& e : basis) {
        Int v = 1;
        for (std::size_t i = 0; i < n && v != 0; ++i) v *= falling(e[i], a[i]);
        row.push_back(Rat(v));
      }
      rows.push_back(std::move(row));
    });
  std::vector<RatVec> ker = rows.empty() ? std::vector<RatVec>{} : nullspace(rows, basis.size());
  if (rows.empty())
    for (std::size_t i = 0; i < basis.size(); ++i) {
      RatVec e(basis.size(), Rat(0));
      e[i] = 1;
      ker.push_back(e);
    }
  if (ker.empty()) return ker;
  RatMat k = ker;
  rref(k, basis.size());
  k.resize(ker.size());
  return k;
}

Rat weighted_pairing(const std::vector<Int>& q, const Rat& a, const Rat& b) {
  if (q.size() != 3) throw DimensionError("pairing is implemented for weighted planes");
  if (a < 0 || b < 0) throw NegativeDegree("degrees must be non-negative");
  return a * b / Rat(q[0] * q[1] * q[2]);
}

Rat blowup_selfintersection(const std::vector<Int>& q, const Rat& a, const Rat& b) {
  if (q.size() != 3) throw DimensionError("blowup is implemented for weighted planes");
  return a * a / Rat(q[0] * q[1] * q[2]) - b * b;
}

const char* to_string(Irreducibility s) {
  switch (s) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    case Irreducibility::Undetermined: return "undetermined";
  }
  return "?";
}

Irreducibility irreducibility_over_q(const WeightedForm& f) {
  f.validate();
  const std::size_t n = f.weights.size();
  if (f.terms.empty()) return Irreducibility::Reducible;
  if (f.terms.size() == 1) return total(f.terms.begin()->first) == 1 ? Irreducibility::Irreducible : Irreducibility::Reducible;
  for (std::size_t i = 0; i < n; ++i) {
    int lo = std::numeric_limits<int>::max();
    for (const auto& kv : f.terms) lo = std::min(lo, kv.first[i]);
    if (lo > 0) return Irreducibility::Reducible;
  }
  if (n != 3) return Irreducibility::Undetermined;
  // Set one variable to 1; irreducibility of what remains implies irreducibility of f.
  for (int drop : {2, 1, 0}) {
    int a = drop == 0 ? 1 : 0;
    int b = 3 - drop - a;
    for (auto [main, other] : {std::pair{a, b}, std::pair{b, a}}) {
      std::map<int, Upoly> coeff;  // power of main -> polynomial in other
      for (const auto& [e, c] : f.terms) {
        Upoly& u = coeff[e[main]];
        if (u.size() <= static_cast<std::size_t>(e[other])) u.resize(e[other] + 1, Rat(0));
        u[e[other]] += c;
      }
      for (auto& kv : coeff) trim(kv.second);
      int dmain = coeff.rbegin()->first;
      if (dmain == 0) continue;
      Upoly cont;
      for (const auto& kv : coeff) cont = ugcd(cont, kv.second);
      if (deg(cont) > 0) continue;
      if (dmain == 1) return Irreducibility::Irreducible;
      const Upoly& lc = coeff.rbegin()->second;
      for (int c : {1, -1, 2, -2, 3, -3, 5, -5, 7, 11}) {
        if (eval(lc, c) == 0) continue;
        Upoly g(dmain + 1, Rat(0));
        for (const auto& kv : coeff) g[kv.first] = eval(kv.second, c);
        if (proven_irreducible(g)) return Irreducibility::Irreducible;
      }
    }
  }
  return Irreducibility::Undetermined;
}

// --- the weighted plane P(4,7,13) ---------------------------------------------------

P4713Report casestudy_p4713(const ArithmeticContext& ctx) {
  ctx.validate();
  const std::vector<Int> q{4, 7, 13};
  const Int h = q[0] * q[1] * q[2];  // D = O(364) generates the Picard group
  P4713Report r;

  ApproxResult drv = approximation_driver(wps_fan(q), {Rat(h / q[0]), Rat(0), Rat(0)}, {}, ctx, true);
  r.driver_degree = drv.degree;
  r.driver_alpha = drv.alpha;
  r.driver_trace = drv.certificate.trace;

  r.x5_yz = WeightedForm{q, 20, {{{5, 0, 0}, Rat(1)}, {{0, 1, 1}, Rat(-1)}}};
  r.x5_yz_degree = weighted_pairing(q, 20, Rat(h));
  r.x5_yz_alpha = alpha_rational_curve(r.x5_yz_degree, branches_at_one(mult_and_tangent_at_one(r.x5_yz), ctx));

  r.c1 = WeightedForm{q, 39, {{{8, 1, 0}, Rat(1)}, {{1, 5, 0}, Rat(1)}, {{3, 2, 1}, Rat(-3)}, {{0, 0, 3}, Rat(1)}}};
  r.c1_degree = weighted_pairing(q, 39, Rat(h));
  r.c1_tangent = mult_and_tangent_at_one(r.c1);
  ensure(r.c1_tangent.has_quadratic_pair, "the degree-39 curve has conjugate tangents");
  r.c1_alpha = alpha_rational_curve(r.c1_degree, branches_at_one(r.c1_tangent, ctx));
  const int r1 = ctx.branch_r(r.c1_tangent.field_d);
  const std::string field = "sqrt(" + to_string(r.c1_tangent.field_d) + ")";
  r.c1_case = r1 == 2 ? field + " in k_v but not in k" : (r1 == 1 ? field + " in k" : field + " not in k_v");

  r.h0_dim = monomial_basis(q, 56).size();
  auto order3 = sections_vanishing_to_order(q, 56, 3);
  r.order3_dim = order3.size();
  ensure(r.order3_dim >= 1, "a degree-56 form vanishing to order 3 exists");
  r.c2 = form_from_coefficients(q, 56, order3.front());
  r.c2_degree = weighted_pairing(q, 56, Rat(h));
  r.c2_tangent = mult_and_tangent_at_one(r.c2);
  ensure(r.c2_tangent.multiplicity >= 3, "order-3 section has multiplicity at least 3");
  // Smooth branches and r <= 2 bound every term d / (r m) from below by d / 2.
  r.c2_alpha_lower = r.c2_degree / 2;
  try {
    r.c2_alpha = alpha_rational_curve(r.c2_degree, branches_at_one(r.c2_tangent, ctx));
    ensure(r.c2_alpha->infinite || r.c2_alpha->value >= r.c2_alpha_lower, "alpha of the order-3 curve above its bound");
  } catch (const AssumptionRequired&) {
    r.c2_alpha.reset();
  }
  r.c2_irreducibility = irreducibility_over_q(r.c2);

  // Smallest power of g landing in a multiple of D.
  r.power = h / gcd(Int(56), h);
  r.multiple = r.power * 56 / h;
  r.order = r.power * 3;
  r.selfintersection = blowup_selfintersection(q, Rat(r.multiple * h), Rat(r.order));
  r.lower_bound = Rat(r.order) / Rat(r.multiple);

  const bool pair_in_kv_only = r1 == 2;
  r.best_approximation = pair_in_kv_only && r.selfintersection < 0 && !r.c1_alpha.infinite &&
                         r.c1_alpha.value == r.lower_bound && r.c2_alpha_lower > r.c1_alpha.value;
  if (r.best_approximation)
    r.verdict = "the degree-39 curve attains the lower bound " + to_string(r.lower_bound) +
                " off the base locus, and the only curve in the base locus has alpha at least " +
                to_string(r.c2_alpha_lower) + ": it is a curve of best approximation";
  else if (r1 == 1)
    r.verdict = "both tangent branches are k-rational, so the degree-39 curve has alpha " + to_string(r.c1_alpha) +
                "; this context lies outside the hypothesis of the best-approximation argument, no verdict";
  else if (r1 == 0)
    r.verdict = "the tangent branches are not defined over k_v, so the degree-39 curve contributes infinity; "
                "the remaining candidates are x^5 = yz at 20 and the driver curve at 28";
  else
    r.verdict = "no verdict";
  return r;
}

const char* to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Ranked: return "ranked";
    case CandidateStatus::Reducible: return "reducible";
    case CandidateStatus::IrreducibilityUndetermined: return "irreducibility-undetermined";
    case CandidateStatus::UnsupportedBranch: return "unsupported-branch";
    case CandidateStatus::UndeclaredField: return "undeclared-field";
  }
  return "?";
}

std::vector<Candidate> curve_alpha_search(const std::vector<Int>& q, const Int& cap, const ArithmeticContext& ctx) {
  if (q.size() != 3) throw DimensionError("the search runs on weighted planes");
  ctx.validate();
  const Int h = q[0] * q[1] * q[2];
  std::vector<Candidate> out;
  std::set<IntVec> seen;
  for (Int d = 1; d <= cap; ++d) {
    if (monomial_basis(q, d).size() < 2) continue;
    for (int s = 1;; ++s) {
      auto ker = sections_vanishing_to_order(q, d, s);
      if (ker.empty()) break;
      for (const auto& v : ker) {
        IntVec key = primitive_integral(v);
        auto lead = std::find_if(key.begin(), key.end(), [](const Int& x) { return x != 0; });
        if (lead != key.end() && *lead < 0)
          for (auto& x : key) x = -x;
        if (!seen.insert(key).second) continue;
        Candidate c;
        c.form = form_from_coefficients(q, d, to_rat(key));
        c.degree = weighted_pairing(q, Rat(d), Rat(h));
        Irreducibility irr = irreducibility_over_q(c.form);
        if (irr == Irreducibility::Reducible) {
          c.status = CandidateStatus::Reducible;
          out.push_back(std::move(c));
          continue;
        }
        TangentReport t;
        try {
          t = mult_and_tangent_at_one(c.form);
        } catch (const UnsupportedBranchType&) {
          c.status = CandidateStatus::UnsupportedBranch;
          out.push_back(std::move(c));
          continue;
        }
        c.multiplicity = t.multiplicity;
        c.field_d = t.field_d;
        try {
          c.alpha = alpha_rational_curve(c.degree, branches_at_one(t, ctx));
        } catch (const AssumptionRequired&) {
          c.status = CandidateStatus::UndeclaredField;
          out.push_back(std::move(c));
          continue;
        }
        c.status = irr == Irreducibility::Irreducible ? CandidateStatus::Ranked : CandidateStatus::IrreducibilityUndetermined;
        out.push_back(std::move(c));
      }
    }
  }
  auto alpha_less = [](const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return !a.infinite && b.infinite;
    return a.value < b.value;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Candidate& a, const Candidate& b) {
    bool ra = a.status == CandidateStatus::Ranked, rb = b.status == CandidateStatus::Ranked;
    if (ra != rb) return ra;
    if (ra) {
      if (alpha_less(a.alpha, b.alpha)) return true;
      if (alpha_less(b.alpha, a.alpha)) return false;
    } else if (a.status != b.status) {
      return a.status < b.status;
    }
    return a.degree < b.degree;
  });
  return out;
}

}  // namespace toric
