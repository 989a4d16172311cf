#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/fan.hpp"

using namespace toric;

namespace {

std::vector<IntVec> p2_rays() { return {{1, 0}, {0, 1}, {-1, -1}}; }

Fan f1_fan() { return star_subdivision(projective_space_fan(2), {1, 1}).fan; }

}  // namespace

TEST_CASE("build_fan: projective plane and rejections") {
  Fan p2 = build_fan(2, p2_rays(), {{0, 1}, {0, 2}, {1, 2}});
  CHECK(p2.max_cones().size() == 3);
  CHECK(p2.walls().size() == 3);
  CHECK_THROWS_AS(build_fan(2, p2_rays(), {{0, 1}, {0, 2}}), NotComplete);
  CHECK_THROWS_AS(build_fan(2, {{1, 0}, {0, 1}, {1, 1}, {-1, -1}}, {{0, 1}, {0, 3}, {1, 3}, {0, 2}}), NotAFan);
  CHECK_THROWS_AS(build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1, 2}}), NotSimplicial);
}

TEST_CASE("wps_fan") {
  SUBCASE("(1,1,1) is the projective plane") {
    Fan f = wps_fan({1, 1, 1});
    CHECK(is_projective_space(f));
  }
  SUBCASE("(4,7,13)") {
    Fan f = wps_fan({4, 7, 13});
    IntVec sum(2, Int(0));
    std::vector<Int> q{4, 7, 13};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 2; ++k) sum[k] += q[i] * f.ray(i)[k];
    CHECK(sum == IntVec{0, 0});
    CHECK(sublattice_index(f.rays(), 2) == 1);
    // The cone omitting ray i has multiplicity q_i.
    CHECK(cone_multiplicity(f, {1, 2}) == 4);
    CHECK(cone_multiplicity(f, {0, 2}) == 7);
    CHECK(cone_multiplicity(f, {0, 1}) == 13);
    IntMat m = IntMat::from_columns(f.cone_rays({1, 2}), 2);
    CHECK(abs(oracle::det2(m)) == 4);
    FwpsData d = recognize_fwps(f);
    CHECK(d.weights == std::vector<Int>{4, 7, 13});
    CHECK(d.cover_index == 1);
  }
  SUBCASE("(1,1,2) has one singular cone") {
    Fan f = wps_fan({1, 1, 2});
    int singular = 0;
    for (const auto& c : f.max_cones())
      if (cone_multiplicity(f, c) != 1) {
        ++singular;
        CHECK(cone_multiplicity(f, c) == 2);
      }
    CHECK(singular == 1);
  }
  CHECK_THROWS_AS(wps_fan({2, 4, 6}), BadWeights);
  CHECK_THROWS_AS(wps_fan({0, 1, 1}), BadWeights);
}

TEST_CASE("cone multiplicity") {
  Fan p2 = projective_space_fan(2);
  for (const auto& c : p2.max_cones()) CHECK(cone_multiplicity(p2, c) == 1);
  Fan f = build_fan(2, {{1, 0}, {1, 2}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(cone_multiplicity(f, {0, 1}) == 2);
}

TEST_CASE("terminality agrees with simplex enumeration") {
  Fan p2 = projective_space_fan(2);
  CHECK(is_terminal(p2).terminal);
  Fan w112 = wps_fan({1, 1, 2});
  CHECK_FALSE(is_terminal(w112).terminal);
  CHECK_FALSE(oracle::brute_terminal(w112));
  Fan w1112 = wps_fan({1, 1, 1, 2});
  CHECK(is_terminal(w1112).terminal);
  CHECK(oracle::brute_terminal(w1112));
  for (auto q : std::vector<std::vector<Int>>{{1, 2, 3}, {4, 7, 13}, {1, 1, 3}, {2, 3, 5}, {1, 2, 2, 3}, {1, 1, 2, 3}, {2, 3, 5, 7}}) {
    Fan f = wps_fan(q);
    CHECK(is_terminal(f).terminal == oracle::brute_terminal(f));
  }
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    Fan f = oracle::random_subdivided_fan(rng, 3, 3);
    CHECK(is_terminal(f).terminal == oracle::brute_terminal(f));
  }
}

TEST_CASE("star fans") {
  Fan p2 = projective_space_fan(2);
  StarFan s = star_fan(p2, {0});
  CHECK(s.fan.rank() == 1);
  CHECK(s.fan.num_rays() == 2);
  CHECK(s.b == std::vector<Int>{1, 1});
  StarFan z = star_fan(p2, {});
  CHECK(z.fan.same_as(p2));
  StarFan w = star_fan(p2, {0, 1});
  CHECK(w.fan.rank() == 0);
  CHECK(w.fan.max_cones().size() == 1);
  Fan f = wps_fan({4, 7, 13});
  StarFan d0 = star_fan(f, {0});
  CHECK(d0.fan.rank() == 1);
  CHECK(d0.fan.num_rays() == 2);
  CHECK(d0.m == std::vector<Int>{13, 7});
  CHECK_THROWS_AS(star_fan(f1_fan(), {0, 1}), ConeNotInFan);
}

TEST_CASE("star subdivisions") {
  Fan f1 = f1_fan();
  CHECK(f1.num_rays() == 4);
  CHECK(f1.max_cones().size() == 4);
  Fan checked = build_fan(2, f1.rays(), f1.max_cones());
  CHECK(checked.same_as(f1));
  CHECK_THROWS_AS(star_subdivision(f1, {1, 0}), RayAlreadyPresent);
  Fan f5 = star_subdivision(f1, {1, -1}).fan;
  CHECK(f5.num_rays() == 5);
  CHECK_NOTHROW(build_fan(2, f5.rays(), f5.max_cones()));
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Fan r = oracle::random_subdivided_fan(rng, 3, 4);
    CHECK_NOTHROW(build_fan(3, r.rays(), r.max_cones()));
  }
}

TEST_CASE("recognize_fwps") {
  FwpsData p2 = recognize_fwps(projective_space_fan(2));
  CHECK(p2.weights == std::vector<Int>{1, 1, 1});
  CHECK(p2.cover_index == 1);
  CHECK_THROWS_AS(recognize_fwps(f1_fan()), NotFwps);
  // P^2 / mu_3 on the lattice Z^2 + Z(1/3)(1,-1): in a basis of that lattice the rays
  // of P^2 become (1,2), (1,-1), (-2,-1).
  Fan fake = build_fan(2, {{1, 2}, {1, -1}, {-2, -1}}, {{0, 1}, {0, 2}, {1, 2}});
  FwpsData d = recognize_fwps(fake);
  CHECK(d.weights == std::vector<Int>{1, 1, 1});
  CHECK(d.cover_index == 3);
  CHECK(is_projective_space(d.cover_fan));
  CHECK_FALSE(is_projective_space(fake));
}

TEST_CASE("recognize_fwps inverts wps_fan on well-formed weights") {
  int count = 0;
  for (long a = 1; a <= 38; ++a)
    for (long b = a; a + b <= 39; ++b)
      for (long c = b; a + b + c <= 40; ++c) {
        if (!oracle::well_formed({a, b, c})) continue;
        std::vector<Int> q{a, b, c};
        FwpsData d = recognize_fwps(wps_fan(q));
        CHECK(d.weights == q);
        CHECK(d.cover_index == 1);
        ++count;
      }
  CHECK(count > 100);
}
