#include "toric/lattice.hpp"

#include "toric/errors.hpp"
#include "toric/linalg.hpp"

namespace toric {

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace

Snf smith_normal_form(const IntMat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMat d = m;
  IntMat u = IntMat::identity(r);
  IntMat v = IntMat::identity(c);
  const std::size_t k = std::min(r, c);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // Pivot on the entry of least absolute value in the trailing block.
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (d(i, j) == 0) continue;
          Int a = abs(d(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        add_row(d, i, t, q);
        add_row(u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        add_col(d, j, t, q);
        add_col(v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad_row = r;
      for (std::size_t i = t + 1; i < r && bad_row == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == r) break;
      add_row(d, t, bad_row, Int(-1));
      add_row(u, t, bad_row, Int(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < r; ++j) u(t, j) = -u(t, j);
    }
  }
  Snf out;
  out.diag.resize(k);
  for (std::size_t t = 0; t < k; ++t) out.diag[t] = d(t, t);
  out.U = std::move(u);
  out.V = std::move(v);
  return out;
}

IntMat unimodular_inverse(const IntMat& u) {
  auto inv = inverse(to_rat(u));
  ensure(inv.has_value(), "unimodular_inverse: singular matrix");
  IntMat out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      const Rat& x = (*inv)[i][j];
      ensure(den(x) == 1, "unimodular_inverse: matrix is not unimodular");
      out(i, j) = num(x);
    }
  return out;
}

Hnf hermite_normal_form(const IntMat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMat h = m;
  IntMat w = IntMat::identity(r);
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    // Euclid on column `col` among rows >= row.
    for (;;) {
      std::size_t p = r;
      for (std::size_t i = row; i < r; ++i)
        if (h(i, col) != 0 && (p == r || abs(h(i, col)) < abs(h(p, col)))) p = i;
      if (p == r) break;
      swap_rows(h, row, p);
      swap_rows(w, row, p);
      bool done = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(row, col);
        add_row(h, i, row, q);
        add_row(w, i, row, q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      for (std::size_t j = 0; j < c; ++j) h(row, j) = -h(row, j);
      for (std::size_t j = 0; j < r; ++j) w(row, j) = -w(row, j);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int q = floor_div(h(i, col), h(row, col));
      if (q == 0) continue;
      add_row(h, i, row, q);
      add_row(w, i, row, q);
    }
    ++row;
  }
  return {std::move(h), std::move(w)};
}

Int sublattice_index(const std::vector<IntVec>& gens, std::size_t ambient_rank) {
  if (ambient_rank == 0) return 1;
  IntMat m = IntMat::from_columns(gens, ambient_rank);
  Snf s = smith_normal_form(m);
  if (s.diag.size() < ambient_rank) throw NotFullRank("generators span a proper subspace");
  Int idx = 1;
  for (const auto& d : s.diag) {
    if (d == 0) throw NotFullRank("generators span a proper subspace");
    idx *= d;
  }
  return idx;
}

IntVec primitive_part(const IntVec& v) {
  Int g = content(v);
  if (g == 0) throw ZeroVector("primitive_part of the zero vector");
  IntVec out = v;
  for (auto& x : out) x /= g;
  return out;
}

QuotientMap quotient_lattice(const std::vector<IntVec>& kernel_gens, std::size_t n) {
  const std::size_t k = kernel_gens.size();
  QuotientMap q;
  q.ambient_rank = n;
  if (k == 0) {
    q.projection = IntMat::identity(n);
    q.section = IntMat::identity(n);
    q.quotient_rank = n;
    return q;
  }
  IntMat km = IntMat::from_columns(kernel_gens, n);
  Snf s = smith_normal_form(km);
  std::size_t nonzero = 0;
  for (const auto& d : s.diag)
    if (d != 0) ++nonzero;
  if (nonzero < k) throw DependentKernel("kernel generators are linearly dependent");
  IntMat uinv = unimodular_inverse(s.U);
  q.quotient_rank = n - k;
  for (std::size_t j = 0; j < k; ++j) q.kernel_basis.push_back(uinv.col(j));
  IntMat proj(n - k, n);
  IntMat sec(n, n - k);
  for (std::size_t i = 0; i < n - k; ++i) {
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = s.U(k + i, j);
    for (std::size_t j = 0; j < n; ++j) sec(j, i) = uinv(j, k + i);
  }
  // Canonical projection: the Hermite form of the dual lattice basis.
  Hnf h = hermite_normal_form(proj);
  q.projection = h.H;
  q.section = sec * unimodular_inverse(h.W);
  return q;
}

IntMat saturation_basis(const std::vector<IntVec>& gens, std::size_t n) {
  IntMat m = IntMat::from_columns(gens, n);
  Snf s = smith_normal_form(m);
  std::size_t r = 0;
  for (const auto& d : s.diag)
    if (d != 0) ++r;
  IntMat uinv = unimodular_inverse(s.U);
  IntMat out(n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = uinv(i, j);
  return out;
}

IntMat lattice_basis(const std::vector<IntVec>& gens, std::size_t n) {
  IntMat m = IntMat::from_columns(gens, n);
  Snf s = smith_normal_form(m);
  ensure(s.diag.size() >= n, "lattice_basis: too few generators");
  IntMat uinv = unimodular_inverse(s.U);
  IntMat out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    ensure(s.diag[j] != 0, "lattice_basis: generators do not have full rank");
    for (std::size_t i = 0; i < n; ++i) out(i, j) = uinv(i, j) * s.diag[j];
  }
  return out;
}

IntVec integral_coordinates(const IntMat& b, const IntVec& v) {
  auto x = solve(to_rat(b), b.cols(), to_rat(v));
  ensure(x.has_value(), "integral_coordinates: vector outside the span");
  IntVec out(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) {
    ensure(den((*x)[i]) == 1, "integral_coordinates: vector outside the lattice");
    out[i] = num((*x)[i]);
  }
  return out;
}

}  // namespace toric
