#include <doctest.h>

#include <cmath>
#include <random>

#include "berglab/quadrature.hpp"

using namespace berglab;

namespace {

// Uniform-rejection Monte Carlo against normalized area; the independent
// oracle for 2-D integrals.
struct McResult {
  double mean;
  double stderr3;  // three standard errors
};

McResult mc_disc(const std::function<double(cplx)>& f, long n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double acc = 0.0, acc2 = 0.0;
  long kept = 0;
  while (kept < n) {
    const double x = uni(rng), y = uni(rng);
    if (x * x + y * y >= 1.0) continue;
    const double v = f(cplx(x, y));
    acc += v;
    acc2 += v * v;
    ++kept;
  }
  const double mean = acc / n;
  const double var = std::max(acc2 / n - mean * mean, 0.0);
  return {mean, 3.0 * std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("whole disc of the constant is one") {
  const IntegralResult r = integrate(whole_disc(), [](cplx) { return 1.0; });
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("square mass closed form") {
  const CarlesonSquare s(0.5, 0.0);
  const IntegralResult r = integrate(region_of(s), [](cplx) { return 1.0; });
  CHECK(r.value == doctest::Approx(0.375 / (2.0 * kPi)).epsilon(1e-8));
}

TEST_CASE("beta identity for standard densities") {
  for (double alpha : {-0.5, 1.0, 2.0}) {
    const IntegralResult r = integrate(whole_disc(), [alpha](cplx z) {
      return (alpha + 1.0) * std::pow(1.0 - std::norm(z), alpha);
    });
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("boundary-singular masses on deep squares") {
  // int over S(a) of (1-|z|)^alpha equals the separable closed form.
  for (double mod : {0.5, 1.0 - std::ldexp(1.0, -8)}) {
    for (double alpha : {-0.5, 1.0}) {
      const CarlesonSquare s(mod, 0.3);
      auto anti = [alpha](double r) {
        const double u = 1.0 - r;
        return std::pow(u, alpha + 1.0) / (alpha + 1.0) -
               std::pow(u, alpha + 2.0) / (alpha + 2.0);
      };
      const double expected = (1.0 - mod) / kPi * anti(mod);
      const IntegralResult r = integrate(
          region_of(s),
          [alpha](cplx z) { return std::pow(1.0 - std::abs(z), alpha); });
      CHECK(r.value == doctest::Approx(expected).epsilon(1e-7));
    }
  }
}

TEST_CASE("pseudo-disc region area") {
  const PseudoDisc d(DiscPoint(0.5, 0.0), 0.5);
  const IntegralResult r = integrate(region_of(d), [](cplx) { return 1.0; });
  CHECK(r.value == doctest::Approx(0.16).epsilon(1e-8));
}

TEST_CASE("additivity over the k-top split") {
  const CarlesonSquare s(0.6, -1.0);
  auto f = [](cplx z) { return 1.0 + z.real() + std::norm(z); };
  const double whole = integrate(region_of(s), f).value;
  const double top = integrate(region_of(k_top(s, 3.0)), f).value;
  const double rest = integrate(square_minus_ktop(s, 3.0), f).value;
  CHECK(whole == doctest::Approx(top + rest).epsilon(1e-8));
}

TEST_CASE("linearity") {
  const CarlesonSquare s(0.4, 2.0);
  auto f = [](cplx z) { return std::exp(z.real()); };
  auto g = [](cplx z) { return std::pow(1.0 - std::abs(z), -0.25); };
  const double both =
      integrate(region_of(s), [&](cplx z) { return f(z) + 2.5 * g(z); }).value;
  const double separate = integrate(region_of(s), f).value +
                          2.5 * integrate(region_of(s), g).value;
  CHECK(both == doctest::Approx(separate).epsilon(1e-7));
}

TEST_CASE("refinement consistency") {
  QuadratureSpec coarse;
  coarse.nodes_per_cell = 16;
  QuadratureSpec fine;
  fine.nodes_per_cell = 32;
  auto f = [](cplx z) {
    return std::cos(3.0 * z.real()) * std::pow(1.0 - std::abs(z), -0.5);
  };
  const IntegralResult rc = integrate(whole_disc(), f, coarse);
  const IntegralResult rf = integrate(whole_disc(), f, fine);
  CHECK(std::abs(rf.value - rc.value) <=
        10.0 * std::max(rc.error_estimate, rf.error_estimate) + 1e-12);
}

TEST_CASE("monte carlo oracle agreement on randomized integrands") {
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> coeff(0.2, 1.5);
  const double alphas[3] = {-0.5, 0.0, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    const double a0 = coeff(rng), a1 = coeff(rng), a2 = coeff(rng);
    const double alpha = alphas[trial % 3];
    auto f = [=](cplx z) {
      const double u = std::norm(z);
      return (a0 + a1 * u + a2 * u * u) * std::pow(1.0 - std::abs(z), alpha);
    };
    const IntegralResult r = integrate(whole_disc(), f);
    const McResult mc = mc_disc(f, 1000000, 1000 + trial);
    CHECK(std::abs(r.value - mc.mean) <= mc.stderr3);
  }
}

TEST_CASE("non-finite integrands flag non-convergence") {
  // (1-|z|)^{-1.5} is not integrable; the tail cannot contract.
  const IntegralResult r = integrate(
      whole_disc(), [](cplx z) { return std::pow(1.0 - std::abs(z), -1.5); });
  CHECK_FALSE(r.converged);
}

TEST_CASE("empty regions are rejected") {
  CHECK_THROWS_AS(integrate(PolarRect{0.5, 0.5, 0.0, 1.0}, [](cplx) { return 1.0; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(PolarRect{0.5, 0.6, 1.0, 1.0}, [](cplx) { return 1.0; }),
                  std::invalid_argument);
}

TEST_CASE("segment quadrature on closed forms") {
  const SegmentResult r1 =
      integrate_segment(cplx(0.5, 0.0), [](cplx) { return cplx(1.0, 0.0); });
  CHECK(r1.converged);
  CHECK(std::abs(r1.value - cplx(0.5, 0.0)) < 1e-12);

  const SegmentResult r2 =
      integrate_segment(cplx(0.5, 0.0), [](cplx z) { return z; });
  CHECK(std::abs(r2.value - cplx(0.125, 0.0)) < 1e-12);

  const SegmentResult r3 =
      integrate_segment(cplx(0.0, 0.5), [](cplx z) { return z; });
  CHECK(std::abs(r3.value - cplx(-0.125, 0.0)) < 1e-12);
}

TEST_CASE("line quadrature with boundary singularity") {
  // int_r^1 (1-s)^alpha ds = (1-r)^{alpha+1}/(alpha+1). Accuracy at the
  // -0.5 exponent is limited by roundoff in the deepest bands.
  for (double alpha : {-0.5, 0.0, 1.0, 2.0}) {
    for (double r : {0.0, 0.5, 0.9, 0.99}) {
      const IntegralResult res = integrate_line(
          [alpha](double s) { return std::pow(1.0 - s, alpha); }, r, 1.0);
      CHECK(res.value ==
            doctest::Approx(std::pow(1.0 - r, alpha + 1.0) / (alpha + 1.0))
                .epsilon(5e-9));
    }
  }
}
