#include <doctest.h>

#include <cmath>
#include <random>

#include "berglab/volterra.hpp"

using namespace berglab;

namespace {
const AnalyticFunction kId = AnalyticFunction::monomial(1);
}

TEST_CASE("integration operator closed forms") {
  const VolterraSymbol g = VolterraSymbol::from(kId);
  // int_0^z dzeta = z
  for (const cplx z : {cplx(0.5, 0.0), cplx(0.2, -0.6)}) {
    CHECK(std::abs(apply_tg(g, AnalyticFunction::constant(1.0), DiscPoint(z)) - z) <
          1e-12);
    CHECK(std::abs(apply_tg(g, kId, DiscPoint(z)) - 0.5 * z * z) < 1e-12);
    CHECK(std::abs(apply_tg(g, AnalyticFunction::constant(0.0), DiscPoint(z))) <
          1e-15);
  }
}

TEST_CASE("applying the operator to one recovers g - g(0)") {
  const AnalyticFunction logk = AnalyticFunction::log_kernel(cplx(0.9, 0.2));
  const VolterraSymbol g = VolterraSymbol::from(logk);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 20; ++i) {
    const cplx z(u(rng), u(rng));
    const cplx got = apply_tg(g, AnalyticFunction::constant(1.0), DiscPoint(z));
    CHECK(std::abs(got - (logk(z) - logk(cplx(0.0, 0.0)))) < 1e-9);
  }
}

TEST_CASE("operator linearity in the integrand") {
  const VolterraSymbol g =
      VolterraSymbol::from(AnalyticFunction::polynomial({0.0, 1.0, 0.5}));
  const AnalyticFunction f1 = AnalyticFunction::monomial(2);
  const AnalyticFunction f2 = AnalyticFunction::kernel_power(DiscPoint(0.4, 0.0), 2.0);
  const cplx c(1.5, -0.5);
  const DiscPoint z(0.45, 0.3);
  const cplx lhs = apply_tg(g, f1 + AnalyticFunction::scale(f2, c), z);
  const cplx rhs = apply_tg(g, f1, z) + c * apply_tg(g, f2, z);
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("boundedness criterion at p = q is weight independent") {
  const SquareFamily fam = SquareFamily::dyadic(6);
  const VolterraSymbol g = VolterraSymbol::from(kId);
  const ConstantEstimate flat = tg_bounded_constant(g, standard_weight(0.0), 2.0, 2.0, fam);
  const ConstantEstimate heavy =
      tg_bounded_constant(g, radial_power_weight(1.5), 2.0, 2.0, fam);
  CHECK(flat.value == doctest::Approx(heavy.value).epsilon(1e-12));
  // grid estimate of sup (1-|a|)|g'|: largest at the innermost anchors
  CHECK(flat.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("log symbol is bloch but not little bloch") {
  const VolterraSymbol g =
      VolterraSymbol::from(AnalyticFunction::log_kernel(cplx(1.0, 0.0)));
  CHECK(g.bloch_estimate < 2.1);
  const TgProfile prof = tg_compact_profile(g, standard_weight(0.0), 2.0, 2.0, 8);
  CHECK_FALSE(prof.compactness_plausible);
  // along the real axis (1-r) |g'(r)| approaches one
  CHECK(prof.rows.back().value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("polynomial symbols are compact at p = q") {
  const VolterraSymbol g =
      VolterraSymbol::from(AnalyticFunction::polynomial({0.0, 1.0, -0.3}));
  const TgProfile prof = tg_compact_profile(g, standard_weight(0.0), 2.0, 2.0, 8);
  CHECK(prof.compactness_plausible);
  const VolterraSymbol c = VolterraSymbol::from(AnalyticFunction::constant(2.0));
  const TgProfile zero = tg_compact_profile(c, standard_weight(0.0), 2.0, 2.0, 6);
  for (const ProfileLevel& row : zero.rows) CHECK(row.value == doctest::Approx(0.0));
}

TEST_CASE("upward index growth at q > p follows the square-mass exponent") {
  // (1-|a|) w(S(a))^{1/q-1/p} for the flat weight scales like
  // 2^{-n(1 + 2(1/q - 1/p))} along dyadic levels.
  const VolterraSymbol g = VolterraSymbol::from(kId);
  const double p = 2.0, q = 4.0;
  const TgProfile prof = tg_compact_profile(g, standard_weight(0.0), p, q, 8);
  std::vector<double> vals;
  for (const ProfileLevel& r : prof.rows) vals.push_back(r.value);
  const double slope = tail_log2_slope(vals);
  CHECK(slope == doctest::Approx(-(1.0 + 2.0 * (1.0 / q - 1.0 / p))).epsilon(0.05));
}

TEST_CASE("q below p reduces to a bergman norm of the symbol") {
  const VolterraSymbol c = VolterraSymbol::from(AnalyticFunction::constant(5.0));
  CHECK(std::isfinite(tg_qlessp_norm(c, standard_weight(0.0), 2.0, 1.0)));
  // index arithmetic: p = 2, q = 1 gives s = 2
  const VolterraSymbol logk =
      VolterraSymbol::from(AnalyticFunction::log_kernel(cplx(1.0, 0.0)));
  const double norm = tg_qlessp_norm(logk, standard_weight(0.0), 2.0, 1.0);
  const double direct = bergman_norm(logk.g, standard_weight(0.0), 2.0);
  CHECK(norm == doctest::Approx(direct).epsilon(1e-10));
  CHECK(std::isfinite(norm));
  CHECK_THROWS_AS(tg_qlessp_norm(logk, standard_weight(0.0), 2.0, 3.0),
                  std::invalid_argument);
}

TEST_CASE("resolvent closed forms") {
  const VolterraSymbol g = VolterraSymbol::from(kId);
  const cplx lambda(0.8, 0.3);
  // constant data: R h = e^{g/lambda}
  for (const cplx z : {cplx(0.4, 0.0), cplx(-0.1, 0.55)}) {
    const cplx got =
        resolvent_apply(lambda, g, AnalyticFunction::constant(1.0), DiscPoint(z));
    CHECK(std::abs(got - std::exp(z / lambda)) < 1e-10);
  }
  // zero symbol: R h = h
  const VolterraSymbol zero = VolterraSymbol::from(AnalyticFunction::constant(0.0));
  const AnalyticFunction h = AnalyticFunction::polynomial({1.0, 2.0, -0.5});
  for (const cplx z : {cplx(0.3, 0.2), cplx(-0.7, 0.1)}) {
    CHECK(std::abs(resolvent_apply(lambda, zero, h, DiscPoint(z)) - h(z)) < 1e-10);
  }
  CHECK_THROWS_AS(resolvent_apply(cplx(0.0, 0.0), g, h, DiscPoint(0.1, 0.1)),
                  std::invalid_argument);
}

TEST_CASE("resolvent solves the defining equation") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-0.65, 0.65);
  std::uniform_real_distribution<double> lam(0.5, 2.0);
  const std::vector<AnalyticFunction> symbols = {
      kId, AnalyticFunction::polynomial({0.0, 0.4, 0.3}),
      AnalyticFunction::log_kernel(cplx(0.9, 0.0))};
  const std::vector<AnalyticFunction> data = {
      AnalyticFunction::polynomial({1.0, -0.5, 0.25}),
      AnalyticFunction::kernel_power(DiscPoint(0.5, 0.2), 2.0)};
  for (const AnalyticFunction& gs : symbols) {
    const VolterraSymbol g = VolterraSymbol::from(gs);
    for (const AnalyticFunction& h : data) {
      const cplx lambda = std::polar(lam(rng), u(rng));
      for (int i = 0; i < 8; ++i) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) > 0.9) z *= 0.5;
        // f = R h / lambda must satisfy lambda f - T_g f = h
        auto f = [&](cplx zz) {
          return resolvent_apply(lambda, g, h, DiscPoint(zz)) / lambda;
        };
        const AnalyticFunction gp = g.g.derivative(1);
        QuadratureSpec spec;
        spec.relative_tolerance = 1e-11;
        const cplx tgf =
            integrate_segment(z, [&](cplx uu) { return f(uu) * gp(uu); }, spec)
                .value;
        const cplx resid = lambda * f(z) - tgf - h(z);
        CHECK(std::abs(resid) < 1e-8);
      }
    }
  }
}

TEST_CASE("classifier: zero symbol matches the base weight verdict") {
  const Weight w = standard_weight(0.0);
  const SquareFamily fam = SquareFamily::dyadic(4);
  const std::vector<AnalyticFunction> suite = default_suite(2.0, 8.0, 4, 8);
  ResolventOptions options;
  options.run_tilde_surrogate = false;
  const VolterraSymbol zero = VolterraSymbol::from(AnalyticFunction::constant(0.0));
  const ResolventVerdict v =
      resolvent_classify(cplx(1.0, 0.0), zero, w, 2.0, suite, fam, options);
  const LPReport base = lp_ratio_suite(w, 2.0, 1, suite);
  CHECK(v.spread == doctest::Approx(base.spread).epsilon(1e-9));
  CHECK(v.verdict == ResolventCall::kPlausible);
}

TEST_CASE("classifier: conjugate lambda symmetry and large-lambda limit") {
  const Weight w = standard_weight(0.0);
  const SquareFamily fam = SquareFamily::dyadic(4);
  const std::vector<AnalyticFunction> suite = default_suite(2.0, 8.0, 4, 8);
  ResolventOptions options;
  options.run_tilde_surrogate = false;
  const VolterraSymbol g =
      VolterraSymbol::from(AnalyticFunction::log_kernel(cplx(1.0, 0.0)));

  const cplx lambda(2.0, 0.5);
  const ResolventVerdict v1 =
      resolvent_classify(lambda, g, w, 2.0, suite, fam, options);
  const ResolventVerdict v2 =
      resolvent_classify(std::conj(lambda), g, w, 2.0, suite, fam, options);
  CHECK(v1.spread == doctest::Approx(v2.spread).epsilon(1e-6));

  const ResolventVerdict vbig =
      resolvent_classify(cplx(1e6, 0.0), g, w, 2.0, suite, fam, options);
  const VolterraSymbol zero = VolterraSymbol::from(AnalyticFunction::constant(0.0));
  const ResolventVerdict vzero =
      resolvent_classify(cplx(1e6, 0.0), zero, w, 2.0, suite, fam, options);
  CHECK(vbig.verdict == vzero.verdict);
  CHECK(vbig.spread == doctest::Approx(vzero.spread).epsilon(1e-4));
}

TEST_CASE("classifier verdicts are stable under small lambda perturbations") {
  const Weight w = standard_weight(0.0);
  const SquareFamily fam = SquareFamily::dyadic(4);
  const std::vector<AnalyticFunction> suite = default_suite(2.0, 8.0, 4, 8);
  ResolventOptions options;
  options.run_tilde_surrogate = false;
  const VolterraSymbol g = VolterraSymbol::from(kId);
  const cplx lambda(1.2, 0.5);
  const ResolventVerdict v =
      resolvent_classify(lambda, g, w, 2.0, suite, fam, options);
  const ResolventVerdict vp = resolvent_classify(lambda * (1.0 + 1e-3), g, w, 2.0,
                                                 suite, fam, options);
  CHECK(v.verdict == vp.verdict);
  CHECK(v.spread == doctest::Approx(vp.spread).epsilon(1e-2));
}
