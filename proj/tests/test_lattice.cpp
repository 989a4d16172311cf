#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/lattice.hpp"

using namespace toric;

namespace {

IntMat mat(std::size_t r, std::size_t c, std::initializer_list<long> xs) {
  IntMat m(r, c);
  std::size_t k = 0;
  for (long x : xs) {
    m(k / c, k % c) = x;
    ++k;
  }
  return m;
}

IntMat diag_matrix(const Snf& s, std::size_t r, std::size_t c) {
  IntMat d(r, c);
  for (std::size_t i = 0; i < s.diag.size(); ++i) d(i, i) = s.diag[i];
  return d;
}

bool is_unimodular(const IntMat& m) {
  Int d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form: identity") {
  IntMat id = IntMat::identity(2);
  Snf s = smith_normal_form(id);
  CHECK(s.diag == std::vector<Int>{1, 1});
  CHECK(s.U == id);
  CHECK(s.V == id);
}

TEST_CASE("smith normal form: diag(2,3) against unimodular search") {
  IntMat m = mat(2, 2, {2, 0, 0, 3});
  Snf s = smith_normal_form(m);
  CHECK(s.diag == oracle::snf2_search(m));
  CHECK(s.diag == std::vector<Int>{1, 6});
  CHECK(s.U * m * s.V == diag_matrix(s, 2, 2));
}

TEST_CASE("smith normal form: a single row") {
  IntMat m = mat(1, 3, {4, 7, 13});
  Snf s = smith_normal_form(m);
  REQUIRE(s.diag.size() == 1);
  CHECK(s.diag[0] == oracle::euclid_gcd(oracle::euclid_gcd(4, 7), 13));
  CHECK(s.U * m * s.V == diag_matrix(s, 1, 3));
}

TEST_CASE("smith normal form: random identities") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    Snf s = smith_normal_form(m);
    CHECK(s.U * m * s.V == diag_matrix(s, r, c));
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
      else CHECK(s.diag[i + 1] == 0);
    }
    if (r == 2 && c == 2) CHECK(s.diag == oracle::snf2_divisors(m));
  }
}

TEST_CASE("sublattice index") {
  CHECK(sublattice_index({{1, 0}, {0, 1}}, 2) == 1);
  IntMat m = mat(2, 2, {2, 0, 0, 3});
  CHECK(sublattice_index({{2, 0}, {0, 3}}, 2) == abs(oracle::det2(m)));
  CHECK_THROWS_AS(sublattice_index({{1, 1}}, 2), NotFullRank);
  // Permuting and negating generators leaves the index unchanged.
  CHECK(sublattice_index({{0, -3}, {2, 0}, {2, 3}}, 2) == 6);
}

TEST_CASE("primitive part") {
  CHECK(primitive_part({4, 6}) == IntVec{2, 3});
  CHECK(primitive_part({-3, 0}) == IntVec{-1, 0});
  CHECK_THROWS_AS(primitive_part({0, 0}), ZeroVector);
}

TEST_CASE("quotient lattice") {
  SUBCASE("coordinate kernel") {
    QuotientMap q = quotient_lattice({{0, 0, 1}}, 3);
    CHECK(q.quotient_rank == 2);
    CHECK(q.project({5, -2, 9}) == IntVec{5, -2});
  }
  SUBCASE("kernel (4,7)") {
    QuotientMap q = quotient_lattice({{4, 7}}, 2);
    REQUIRE(q.quotient_rank == 1);
    Int a = q.project({1, 0})[0], b = q.project({0, 1})[0];
    CHECK(4 * a + 7 * b == 0);
    CHECK(oracle::euclid_gcd(a, b) == 1);
    CHECK(abs(a) == 7);
    CHECK(abs(b) == 4);
  }
  SUBCASE("dependent kernel") { CHECK_THROWS_AS(quotient_lattice({{1, 0}, {2, 0}}, 2), DependentKernel); }
  SUBCASE("section property on random kernels") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int t = 0; t < 40; ++t) {
      IntVec k1{entry(rng), entry(rng), entry(rng), entry(rng)};
      if (content(k1) == 0) continue;
      QuotientMap q = quotient_lattice({k1}, 4);
      CHECK(q.project(k1) == IntVec(3, Int(0)));
      for (int i = 0; i < 4; ++i) {
        IntVec e(4, Int(0));
        e[i] = 1;
        IntVec img = q.project(e);
        CHECK(q.project(q.lift(img)) == img);
      }
    }
  }
}
