#include "berglab/norms.hpp"

#include <cmath>
#include <limits>

namespace berglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureSpec merged_spec(const Weight& w, const AnalyticFunction& f,
                           QuadratureSpec spec) {
  spec = effective_spec(w, std::move(spec));
  for (const AngularGrading& g : f.concentrations()) spec.angular_grading.push_back(g);
  return spec;
}

double integral_power(const AnalyticFunction& f, const Weight& w, double p,
                      int k, const QuadratureSpec& base) {
  // k = 0: plain |f|^p w. k >= 1: |f^{(k)}|^p (1-|z|)^{kp} w.
  const AnalyticFunction g = k == 0 ? f : f.derivative(k);
  const QuadratureSpec spec = merged_spec(w, g, base);
  auto wd = w.density;
  const double kp = k * p;
  const IntegralResult r = integrate(
      whole_disc(),
      [&g, wd, p, kp](cplx z) {
        const double m = std::abs(g(z));
        const double weight = wd(z);
        if (weight == 0.0) return 0.0;
        double v = std::pow(m, p) * weight;
        if (kp != 0.0) v *= std::pow(1.0 - std::abs(z), kp);
        return v;
      },
      spec);
  return std::isfinite(r.value) ? r.value : kInf;
}

}  // namespace

double bergman_norm(const AnalyticFunction& f, const Weight& w, double p,
                    const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw std::invalid_argument("bergman_norm: p must be > 0");
  return std::pow(integral_power(f, w, p, 0, spec), 1.0 / p);
}

double lp_functional(const AnalyticFunction& f, const Weight& w, double p, int k,
                     const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_functional: p must be > 0");
  if (k < 1) throw std::invalid_argument("lp_functional: k must be >= 1");
  double value = integral_power(f, w, p, k, spec);
  for (int j = 0; j < k; ++j) {
    const AnalyticFunction fj = j == 0 ? f : f.derivative(j);
    value += std::pow(std::abs(fj(cplx{0.0, 0.0})), p);
  }
  return std::pow(value, 1.0 / p);
}

LPReport lp_ratio_suite(const Weight& w, double p, int k,
                        const std::vector<AnalyticFunction>& suite,
                        const QuadratureSpec& spec) {
  if (suite.empty()) throw std::invalid_argument("lp_ratio_suite: empty suite");
  LPReport report;
  report.rows.resize(suite.size());
  parallel_for(suite.size(), [&](std::size_t i) {
    LPRow row;
    row.label = suite[i].label();
    row.bergman_p = std::pow(bergman_norm(suite[i], w, p, spec), p);
    row.lp_p = std::pow(lp_functional(suite[i], w, p, k, spec), p);
    row.ratio = row.bergman_p / row.lp_p;
    report.rows[i] = std::move(row);
  });
  double mn = kInf, mx = 0.0, one_sided = 0.0;
  std::vector<LPRow> kept;
  for (LPRow& row : report.rows) {
    if (row.bergman_p <= 0.0 && row.lp_p <= 0.0) continue;  // zero function
    if (!std::isfinite(row.bergman_p) || !std::isfinite(row.lp_p))
      report.any_nonfinite = true;
    mn = std::min(mn, row.ratio);
    mx = std::max(mx, row.ratio);
    one_sided = std::max(one_sided, row.lp_p / row.bergman_p);
    kept.push_back(std::move(row));
  }
  report.rows = std::move(kept);
  report.min_ratio = mn;
  report.max_ratio = mx;
  report.spread = mx / mn;
  report.one_sided_max = one_sided;
  return report;
}

TildeReport tilde_equivalence_suite(const Weight& w, double p, int k,
                                    const std::vector<AnalyticFunction>& suite,
                                    const QuadratureSpec& spec) {
  if (suite.empty())
    throw std::invalid_argument("tilde_equivalence_suite: empty suite");
  const Weight wt = tilde_average(w);
  TildeReport report;
  report.rows.resize(suite.size());
  parallel_for(suite.size(), [&](std::size_t i) {
    TildeRow row;
    row.label = suite[i].label();
    row.base_p = std::pow(bergman_norm(suite[i], w, p, spec), p);
    row.tilde_p = std::pow(bergman_norm(suite[i], wt, p, spec), p);
    row.lp_tilde_p = std::pow(lp_functional(suite[i], wt, p, k, spec), p);
    report.rows[i] = std::move(row);
  });
  double mn1 = kInf, mx1 = 0.0, mn2 = kInf, mx2 = 0.0;
  for (const TildeRow& row : report.rows) {
    if (row.base_p <= 0.0) continue;
    mn1 = std::min(mn1, row.base_p / row.tilde_p);
    mx1 = std::max(mx1, row.base_p / row.tilde_p);
    mn2 = std::min(mn2, row.tilde_p / row.lp_tilde_p);
    mx2 = std::max(mx2, row.tilde_p / row.lp_tilde_p);
  }
  report.norm_spread = mx1 / mn1;
  report.lp_spread = mx2 / mn2;
  return report;
}

ConstantEstimate subharmonic_bound_check(const AnalyticFunction& f, double p,
                                         int k, double s,
                                         const std::vector<DiscPoint>& grid) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("subharmonic_bound_check: s must lie in (0,1)");
  if (grid.empty())
    throw std::invalid_argument("subharmonic_bound_check: empty grid");
  const AnalyticFunction fk = f.derivative(k);
  ConstantEstimate est;
  est.value = 0.0;
  QuadratureSpec spec;
  spec.relative_tolerance = 1e-7;
  spec.nodes_per_cell = 16;
  for (const DiscPoint& z : grid) {
    const PseudoDisc d(z, s);
    const double denom = integrate(
                             region_of(d),
                             [&f, p](cplx u) { return std::pow(std::abs(f(u)), p); },
                             spec)
                             .value;
    ++est.samples;
    if (!(denom > 0.0)) continue;
    const double num = std::pow(std::abs(fk(z.z)), p) *
                       std::pow(1.0 - z.modulus(), 2.0 + k * p);
    const double v = num / denom;
    if (v > est.value) {
      est.value = v;
      est.witness_anchor = z.z;
    }
  }
  return est;
}

ConstantEstimate bloch_seminorm(const AnalyticFunction& g, int grid_depth) {
  if (grid_depth < 4)
    throw std::invalid_argument("bloch_seminorm: grid_depth must be >= 4");
  const AnalyticFunction gp = g.derivative(1);
  const SquareFamily fam = SquareFamily::dyadic(grid_depth);
  ConstantEstimate est = scan_family(fam, false, [&](const DiscPoint& a) {
    return (1.0 - std::norm(a.z)) * std::abs(gp(a.z));
  });
  const double origin = std::abs(gp(cplx{0.0, 0.0}));
  ++est.samples;
  if (origin > est.value) {
    est.value = origin;
    est.witness_anchor = cplx{0.0, 0.0};
  }
  return est;
}

AnalyticFunction normalized_test_function(const Weight& w, const DiscPoint& a,
                                          double p, double gamma) {
  if (!(p > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("normalized_test_function: need p, gamma > 0");
  const double mass = square_mass(w, CarlesonSquare(a));
  return AnalyticFunction::scale(AnalyticFunction::kernel_power(a, gamma / p),
                                 std::pow(mass, -1.0 / p));
}

std::vector<AnalyticFunction> default_suite(double p, double gamma, int depth,
                                            int max_monomial) {
  std::vector<AnalyticFunction> suite;
  suite.push_back(AnalyticFunction::constant(1.0));
  for (int n = 1; n <= max_monomial; ++n)
    suite.push_back(AnalyticFunction::monomial(n));
  const double args[4] = {0.0, 0.5 * kPi, kPi, -0.5 * kPi};
  for (int n = 1; n <= depth; ++n) {
    const double t = 1.0 - std::ldexp(1.0, -n);
    for (double arg : args)
      suite.push_back(AnalyticFunction::kernel_power(
          DiscPoint(std::polar(t, arg)), gamma / p));
  }
  suite.push_back(AnalyticFunction::log_kernel(cplx{1.0, 0.0}));
  suite.push_back(AnalyticFunction::log_kernel(cplx{-1.0, 0.0}));
  return suite;
}

}  // namespace berglab
