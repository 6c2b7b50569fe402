#include <doctest.h>

#include <cmath>

#include "berglab/norms.hpp"

using namespace berglab;

namespace {
// ||z^n||^2 against (alpha+1)(1-|z|^2)^alpha: n! Gamma(alpha+2) / Gamma(n+alpha+2).
double monomial_norm2(int n, double alpha) {
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) -
                  std::lgamma(n + alpha + 2.0));
}
}  // namespace

TEST_CASE("bergman norm of constants") {
  const Weight w = standard_weight(1.0);
  const double m = total_mass(w);
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(bergman_norm(AnalyticFunction::constant(cplx(0.0, 2.0)), w, p) ==
          doctest::Approx(2.0 * std::pow(m, 1.0 / p)).epsilon(1e-8));
  }
}

TEST_CASE("monomial norms match the gamma closed form") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.0}) {
    const Weight w = standard_weight(alpha);
    for (int n : {0, 1, 2, 4, 8, 16, 32}) {
      const double got = bergman_norm(AnalyticFunction::monomial(n), w, 2.0);
      CHECK(got == doctest::Approx(std::sqrt(monomial_norm2(n, alpha)))
                       .epsilon(1e-5));
    }
  }
}

TEST_CASE("first monomial norm for the flat weight") {
  CHECK(bergman_norm(AnalyticFunction::monomial(1), standard_weight(0.0), 2.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("derivative functional closed forms") {
  const Weight w = standard_weight(0.0);
  const AnalyticFunction id = AnalyticFunction::monomial(1);
  // only the origin term survives for constants
  CHECK(lp_functional(AnalyticFunction::constant(3.0), w, 2.0, 1) ==
        doctest::Approx(3.0).epsilon(1e-10));
  // int (1-|z|)^2 dA = 1/6, no origin terms
  CHECK(lp_functional(id, w, 2.0, 1) ==
        doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-8));
  // second derivative vanishes: |f'(0)|^2 remains
  CHECK(lp_functional(id, w, 2.0, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm homogeneity") {
  const Weight w = standard_weight(1.0);
  const AnalyticFunction f = AnalyticFunction::kernel_power(DiscPoint(0.4, 0.1), 2.0);
  const AnalyticFunction cf = AnalyticFunction::scale(f, cplx(0.0, -2.5));
  for (double p : {1.0, 2.0}) {
    CHECK(bergman_norm(cf, w, p) ==
          doctest::Approx(2.5 * bergman_norm(f, w, p)).epsilon(1e-9));
    CHECK(lp_functional(cf, w, p, 1) ==
          doctest::Approx(2.5 * lp_functional(f, w, p, 1)).epsilon(1e-9));
  }
}

TEST_CASE("weight monotonicity of the norm") {
  const Weight small = radial_power_weight(1.0);   // (1-|z|) <= 1
  const Weight large = standard_weight(0.0);
  for (const AnalyticFunction& f :
       {AnalyticFunction::monomial(3),
        AnalyticFunction::kernel_power(DiscPoint(0.7, 0.0), 2.0)}) {
    CHECK(bergman_norm(f, small, 2.0) <= bergman_norm(f, large, 2.0) + 1e-10);
  }
}

TEST_CASE("ratio suite on monomials reproduces (2n+1)/n") {
  const Weight w = standard_weight(0.0);
  std::vector<AnalyticFunction> suite;
  for (int n = 1; n <= 8; ++n) suite.push_back(AnalyticFunction::monomial(n));
  const LPReport r = lp_ratio_suite(w, 2.0, 1, suite);
  REQUIRE(r.rows.size() == 8);
  for (int n = 1; n <= 8; ++n) {
    CHECK(r.rows[n - 1].ratio ==
          doctest::Approx((2.0 * n + 1.0) / n).epsilon(1e-6));
  }
  CHECK(r.max_ratio == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(r.spread == doctest::Approx(3.0 / (17.0 / 8.0)).epsilon(1e-6));
}

TEST_CASE("constants give ratio one and spread one") {
  const Weight w = standard_weight(1.0);
  const std::vector<AnalyticFunction> suite = {AnalyticFunction::constant(1.0),
                                               AnalyticFunction::constant(5.0)};
  const LPReport r = lp_ratio_suite(w, 2.0, 1, suite);
  CHECK(r.spread == doctest::Approx(1.0).epsilon(1e-10));
  for (const LPRow& row : r.rows)
    CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ratios are rotation invariant for radial weights") {
  const Weight w = standard_weight(1.0);
  const AnalyticFunction f =
      AnalyticFunction::kernel_power(DiscPoint(0.6, 0.0), 3.0);
  const AnalyticFunction g =
      AnalyticFunction::kernel_power(DiscPoint(std::polar(0.6, 2.1)), 3.0);
  const LPReport r = lp_ratio_suite(w, 2.0, 1, {f, g});
  CHECK(r.rows[0].ratio == doctest::Approx(r.rows[1].ratio).epsilon(1e-6));
}

TEST_CASE("tilde equivalence for the flat weight over monomials") {
  const Weight w = standard_weight(0.0);
  std::vector<AnalyticFunction> suite = {AnalyticFunction::constant(1.0)};
  for (int n = 1; n <= 16; n *= 2) suite.push_back(AnalyticFunction::monomial(n));
  const TildeReport r = tilde_equivalence_suite(w, 2.0, 1, suite);
  CHECK(std::isfinite(r.norm_spread));
  CHECK(r.norm_spread < 3.0);
  CHECK(std::isfinite(r.lp_spread));
  // tilde norm of z^n against (1+|z|)/(2pi): (1/(n+1) + 2/(2n+3)) / (2 pi)
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const int n = 1 << (i - 1);
    const double expected =
        (1.0 / (n + 1.0) + 2.0 / (2.0 * n + 3.0)) / (2.0 * kPi);
    CHECK(r.rows[i].tilde_p == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("tilde equivalence is stable under suite refinement") {
  const Weight w = standard_weight(1.0);
  const double gamma = 8.0;
  const TildeReport r6 =
      tilde_equivalence_suite(w, 2.0, 1, default_suite(2.0, gamma, 5, 8));
  const TildeReport r7 =
      tilde_equivalence_suite(w, 2.0, 1, default_suite(2.0, gamma, 6, 8));
  CHECK(std::abs(r7.norm_spread - r6.norm_spread) <= 0.05 * r6.norm_spread);
}

TEST_CASE("local subharmonic bound check") {
  // f(z) = z, k = 1, p = 2, s = 1/2 at the origin: 1 / (r^4/2) = 32
  const AnalyticFunction id = AnalyticFunction::monomial(1);
  const ConstantEstimate at0 =
      subharmonic_bound_check(id, 2.0, 1, 0.5, {DiscPoint(0.0, 0.0)});
  CHECK(at0.value == doctest::Approx(32.0).epsilon(1e-5));

  const ConstantEstimate zero = subharmonic_bound_check(
      AnalyticFunction::constant(2.0), 2.0, 1, 0.5,
      {DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.2)});
  CHECK(zero.value == doctest::Approx(0.0));

  // rotation invariance of the maximum for monomials
  std::vector<DiscPoint> grid1, grid2;
  for (double m : {0.2, 0.5, 0.8}) {
    grid1.emplace_back(std::polar(m, 0.3));
    grid2.emplace_back(std::polar(m, 0.3 + 1.7));
  }
  const AnalyticFunction f = AnalyticFunction::monomial(3);
  const ConstantEstimate a = subharmonic_bound_check(f, 2.0, 1, 0.4, grid1);
  const ConstantEstimate b = subharmonic_bound_check(f, 2.0, 1, 0.4, grid2);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
}

TEST_CASE("one- and two-sided suites stay bounded under refinement for a doubling weight") {
  const Weight w = standard_weight(0.0);
  const LPReport r4 = lp_ratio_suite(w, 2.0, 1, default_suite(2.0, 8.0, 4, 8));
  const LPReport r6 = lp_ratio_suite(w, 2.0, 1, default_suite(2.0, 8.0, 6, 8));
  CHECK(std::isfinite(r6.spread));
  CHECK(r6.one_sided_max <= r4.one_sided_max * std::pow(2.0, 0.15 * 2) + 1e-9);
  CHECK(r6.spread <= r4.spread * std::pow(2.0, 0.15 * 2) + 1e-9);
}
