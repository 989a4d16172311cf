#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/fwps.hpp"

using namespace toric;

namespace {

// Every intersection in the certificate recomputed one divisor at a time.
void check_certificate(const Fan& fan, const CurveCertificate& c) {
  Rat sum = 0;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    TorusDivisor e(fan.num_rays(), Rat(0));
    e[i] = 1;
    CHECK(one_ps_degree(fan, e, c.curve) == c.intersections[i]);
    sum += c.intersections[i];
  }
  CHECK(sum == c.anti_canonical);
  CHECK(one_ps_degree(fan, scale(-1, canonical_divisor(fan)), c.curve) == c.anti_canonical);
  CHECK_FALSE(c.trace.empty());
}

std::vector<Cone> all_cones(const Fan& fan) {
  std::vector<Cone> out;
  for (const auto& m : fan.max_cones())
    for (unsigned mask = 0; mask < (1u << m.size()); ++mask) {
      Cone c;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (mask & (1u << k)) c.push_back(m[k]);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

}  // namespace

TEST_CASE("universal cover") {
  CoverData w = universal_cover_codim1(recognize_fwps(fixtures::p4713()));
  CHECK(w.index == 1);
  CHECK(w.index_factorization.empty());
  CoverData q = universal_cover_codim1(recognize_fwps(fixtures::p2_mod3()));
  CHECK(q.index == 3);
  CHECK(q.index_factorization == std::vector<std::pair<Int, int>>{{3, 1}});
  CHECK(is_projective_space(q.cover));
  // Index agrees with |det| of two rays computed by hand.
  CHECK(oracle::det2(IntMat::from_columns({{1, 2}, {1, -1}}, 2)) == -3);
  CHECK(universal_cover_codim1(recognize_fwps(projective_space_fan(3))).index == 1);
}

TEST_CASE("terminality inequality") {
  CHECK(terminal_wps_inequality({1, 1, 2}, 2));
  CHECK(terminal_wps_inequality({4, 7, 13}, 2));
  CHECK_THROWS_AS(terminal_wps_inequality({1, 1, 1}, 2), KappaOutOfRange);
  CHECK_THROWS_AS(terminal_wps_inequality({4, 7, 13}, 23), KappaOutOfRange);
  // P(1,1,2) passes but is not terminal: the inequality is only necessary.
  CHECK_FALSE(is_terminal(wps_fan({1, 1, 2})).terminal);
}

TEST_CASE("curves with every D.C at most one") {
  CurveCertificate line = wps_curve_all_leq1(fixtures::p2(), {});
  for (const auto& x : line.intersections) CHECK(x == 1);
  Fan w = fixtures::p4713();
  CurveCertificate c = wps_curve_all_leq1(w, {});
  CHECK(c.intersections == RatVec{Rat(4, 13), Rat(7, 13), Rat(1)});
  CHECK(c.anti_canonical == Rat(24, 13));
  CHECK(dot(fixtures::o364(), c.intersections) == 28);
  check_certificate(w, c);
  // P(1,1,2) with P on D_1: the curve is D_1 itself.
  std::vector<Int> q{1, 1, 2};
  Fan w112 = wps_fan(q);
  CurveCertificate d1 = wps_curve_all_leq1(w112, {1});
  CHECK(d1.curve.tau == Cone{1});
  for (int i = 0; i < 3; ++i) CHECK(d1.intersections[i] == oracle::wps_plane_product(q, i, 1));
  CHECK(d1.trace.front() == "star-recursion:ray=1");
  CHECK_THROWS_AS(wps_curve_all_leq1(fixtures::p2_mod3(), {}), NotWps);
  CHECK_THROWS_AS(wps_curve_all_leq1(fixtures::f1(), {}), NotWps);
}

TEST_CASE("all-at-most-one sweep on weighted planes") {
  for (long a = 1; a <= 12; ++a)
    for (long b = a; b <= 12; ++b)
      for (long c = b; c <= 12; ++c) {
        if (oracle::euclid_gcd(oracle::euclid_gcd(a, b), c) != 1) continue;
        std::vector<Int> q{a, b, c};
        Fan f = wps_fan(q);
        for (const auto& o : all_cones(f)) {
          CurveCertificate cert = wps_curve_all_leq1(f, o);
          for (const auto& x : cert.intersections) CHECK(x <= 1);
          CHECK(curve_meets_orbit(f, cert.curve, o));
        }
      }
}

TEST_CASE("mu_p weight normalization") {
  MuPAction a = mu_p_normalize({0, 1, 2}, 3, 2);
  CHECK(a.sorted == std::vector<Int>{3, 2, 1});
  CHECK(a.patch == 0);
  CHECK(a.patch_weights == std::vector<Int>{0, 1, 2});
  MuPAction b = mu_p_normalize({0, 1, 2, 3, 4}, 5, 4);
  for (const auto& w : b.patch_weights) CHECK(w * 5 <= 5 * 4);
  CHECK_THROWS_AS(mu_p_normalize({2, 2, 2}, 3, 2), TrivialAction);
  // Pigeonhole replay over every residue vector for small primes.
  for (long p : {2, 3, 5, 7})
    for (long r1 = 0; r1 < p; ++r1)
      for (long r2 = 0; r2 < p; ++r2)
        for (long r3 = 0; r3 < p; ++r3) {
          if (r1 == 0 && r2 == 0 && r3 == 0) continue;
          MuPAction m = mu_p_normalize({0, r1, r2, r3}, p, 3);
          CHECK(m.patch_weights[m.patch] == 0);
          for (const auto& w : m.patch_weights) CHECK(w * 4 <= p * 3);
        }
}

TEST_CASE("fake projective spaces in the torus") {
  Fan q3 = fixtures::p2_mod3();
  CurveCertificate c = mu_p_torus_curve(q3);
  CHECK(c.anti_canonical == 2);
  check_certificate(q3, c);
  Fan q2 = fixtures::p3_mod2();
  CurveCertificate d = mu_p_torus_curve(q2);
  CHECK(d.anti_canonical == 2);
  check_certificate(q2, d);
  CHECK_THROWS_AS(mu_p_torus_curve(fixtures::p2()), NotPnModP);
  auto q9 = oracle::fake_quotient({1, 1, 1}, {0, 1, 2}, 9);
  REQUIRE(q9);
  CHECK_THROWS_AS(mu_p_torus_curve(*q9), NotPnModP);
}

TEST_CASE("boundary divisors of P^n / mu_p") {
  for (const Fan& f : {fixtures::p2_mod3(), fixtures::p3_mod2()}) {
    for (int k = 0; k < static_cast<int>(f.num_rays()); ++k) {
      BoundaryCase b = classify_boundary(f, k);
      bool some_pair = false;
      for (int i = 0; i < static_cast<int>(f.num_rays()); ++i)
        if (i != k && oracle::pair_multiplicity(f.ray(i), f.ray(k)) > 1) some_pair = true;
      CHECK(b.weighted == some_pair);
      if (b.weighted) CHECK(oracle::pair_multiplicity(f.ray(b.witness), f.ray(k)) == b.witness_multiplicity);
    }
  }
  // On P^2 / mu_3 every boundary curve is P^1 with a multiplicity-3 neighbor.
  BoundaryCase b = classify_boundary(fixtures::p2_mod3(), 0);
  CHECK(b.weighted);
  CHECK(b.witness_multiplicity == 3);
}

TEST_CASE("fwps curves") {
  Fan p3 = projective_space_fan(3);
  CHECK(fwps_curve(p3, {}).anti_canonical == 4);
  CHECK(fwps_curve(fixtures::p4713(), {}).anti_canonical == Rat(24, 13));
  CHECK(fwps_curve(fixtures::p2_mod3(), {}).anti_canonical == 2);
  CHECK_THROWS_AS(fwps_curve(fixtures::f1(), {}), NotFwps);
  auto q9 = oracle::fake_quotient({1, 1, 1}, {0, 1, 2}, 9);
  REQUIRE(q9);
  for (const auto& o : all_cones(*q9)) {
    CurveCertificate c = fwps_curve(*q9, o);
    CHECK(c.anti_canonical <= 2);
    check_certificate(*q9, c);
  }
}

TEST_CASE("fwps curves on random fake quotients") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> wt(1, 4), res(0, 5), ord(2, 6), rk(2, 3);
  int built = 0, pn_covers = 0;
  for (int t = 0; t < 400 && built < 60; ++t) {
    std::size_t n = rk(rng);
    std::vector<Int> q, c;
    for (std::size_t i = 0; i <= n; ++i) q.push_back(t % 3 == 0 ? 1 : wt(rng));
    for (std::size_t i = 0; i <= n; ++i) c.push_back(res(rng));
    Int g = 0;
    for (const auto& x : q) g = oracle::euclid_gcd(g, x);
    if (g != 1) continue;
    auto f = oracle::fake_quotient(q, c, ord(rng));
    if (!f) continue;
    ++built;
    bool pn_cover = recognize_fwps(*f).weights == std::vector<Int>(n + 1, Int(1));
    if (pn_cover) ++pn_covers;
    for (const auto& o : all_cones(*f)) {
      CurveCertificate cert = fwps_curve(*f, o);
      check_certificate(*f, cert);
      CHECK(cert.anti_canonical <= static_cast<long>(n + 1));
      if (pn_cover) CHECK(cert.anti_canonical <= static_cast<long>(n));
    }
  }
  CHECK(built >= 30);
  CHECK(pn_covers > 0);
}

TEST_CASE("base case") {
  Fan f1 = fixtures::f1();
  auto rays = mori_extremal_rays(f1);
  const ExtremalRay* fiber = nullptr;
  for (const auto& r : rays)
    if (classify_contraction(f1, r).kind == StepKind::MoriFiber) fiber = &r;
  REQUIRE(fiber);
  TorusDivisor d{Rat(1), Rat(0), Rat(0), Rat(0)};
  for (const Cone& o : {Cone{}, Cone{0}, Cone{2}}) {
    BaseCase b = base_case_curve(f1, *fiber, d, o);
    CHECK(b.certificate.anti_canonical == 2);
    CHECK(b.alpha == 0);
    CHECK_FALSE(b.target_is_point);
    CHECK(is_projective_space(b.fiber));
    check_certificate(f1, b.certificate);
  }
  Fan w = fixtures::p4713();
  BaseCase bw = base_case_curve(w, mori_extremal_rays(w)[0], TorusDivisor(3, Rat(0)), {});
  CHECK(bw.target_is_point);
  CHECK(bw.certificate.anti_canonical == Rat(24, 13));
  CHECK(bw.alpha == 0);
  Fan p2 = fixtures::p2();
  CHECK_THROWS_AS(base_case_curve(p2, mori_extremal_rays(p2)[0], TorusDivisor(3, Rat(0)), {}), IsProjectiveSpace);
  const ExtremalRay* exc = nullptr;
  for (const auto& r : rays)
    if (classify_contraction(f1, r).kind == StepKind::Divisorial) exc = &r;
  REQUIRE(exc);
  CHECK_THROWS_AS(base_case_curve(f1, *exc, fixtures::f1_pullback_line(), {}), OrbitNotInExc);
  BaseCase onE = base_case_curve(f1, *exc, fixtures::f1_pullback_line(), {3});
  CHECK(onE.certificate.anti_canonical == 1);
  CHECK(onE.certificate.intersections[3] == -1);
}

TEST_CASE("base case on random fans") {
  std::mt19937 rng(77);
  int cases = 0;
  for (int t = 0; t < 25; ++t) {
    auto rf = oracle::random_fan_with_nef(rng, 2 + t % 2, 1 + t % 4);
    const Fan& f = rf.fan;
    if (is_projective_space(f)) continue;
    for (const auto& r : mori_extremal_rays(f)) {
      Cone neg = classify_contraction(f, r).exc;
      BaseCase b = base_case_curve(f, r, TorusDivisor(f.num_rays(), Rat(0)), neg);
      CHECK(b.certificate.anti_canonical <= b.fiber_anti_canonical);
      CHECK(b.alpha == 0);
      check_certificate(f, b.certificate);
      ++cases;
    }
  }
  CHECK(cases > 20);
}
