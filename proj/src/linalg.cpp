#include "toric/linalg.hpp"

#include <algorithm>

namespace toric {

RatMat to_rat(const IntMat& m) {
  RatMat a(m.rows(), RatVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

std::vector<std::size_t> rref(RatMat& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RatMat& a, std::size_t cols) {
  RatMat b = a;
  return rref(b, cols).size();
}

std::size_t rank(const IntMat& m) { return rank(to_rat(m), m.cols()); }

std::optional<RatVec> solve(const RatMat& a, std::size_t cols, const RatVec& b) {
  RatMat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug, cols + 1);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
  return x;
}

std::vector<RatVec> nullspace(const RatMat& a, std::size_t cols) {
  RatMat b = a;
  auto piv = rref(b, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -b[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatMat> inverse(const RatMat& a) {
  std::size_t n = a.size();
  if (n == 0) return RatMat{};
  RatMat aug(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug, 2 * n);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

RatVec apply(const RatMat& a, const RatVec& x) {
  RatVec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

RatVec apply(const RatMat& a, const IntVec& x) {
  RatVec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

IntVec primitive_integral(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, den(x));
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = num(v[i] * l);
  Int g = content(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

bool lp_feasible(const RatMat& a, std::size_t cols, const RatVec& b) {
  const std::size_t m = a.size();
  if (m == 0) return true;
  // Tableau columns: original, artificial, rhs.
  const std::size_t width = cols + m + 1;
  RatMat t(m, RatVec(width, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = neg ? -a[i][j] : a[i][j];
    t[i][cols + i] = 1;
    t[i][width - 1] = neg ? -b[i] : b[i];
    basis[i] = cols + i;
  }
  // Objective: minimize the sum of artificials; reduced costs row.
  RatVec cost(width, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < cols || j == width - 1) cost[j] -= t[i][j];
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen for phase one
    Rat p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return cost[width - 1] == 0;
}

}  // namespace toric
