#include "berglab/volterra.hpp"

#include <cmath>
#include <limits>

namespace berglab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

VolterraSymbol VolterraSymbol::from(const AnalyticFunction& g, int grid_depth) {
  VolterraSymbol sym;
  sym.g = g;
  sym.bloch_estimate = bloch_seminorm(g, grid_depth).value;
  return sym;
}

cplx apply_tg(const VolterraSymbol& g, const AnalyticFunction& f,
              const DiscPoint& z, const QuadratureSpec& spec) {
  const AnalyticFunction gp = g.g.derivative(1);
  return integrate_segment(
             z.z, [&f, &gp](cplx u) { return f(u) * gp(u); }, spec)
      .value;
}

ConstantEstimate tg_bounded_constant(const VolterraSymbol& g, const Weight& w,
                                     double p, double q, const SquareFamily& family) {
  if (!(p > 0.0) || !(q >= p))
    throw std::invalid_argument("tg_bounded_constant: need 0 < p <= q");
  const AnalyticFunction gp = g.g.derivative(1);
  const double e = 1.0 / q - 1.0 / p;
  return scan_family(family, false, [&](const DiscPoint& a) {
    double v = (1.0 - a.modulus()) * std::abs(gp(a.z));
    if (e != 0.0) v *= std::pow(square_mass(w, CarlesonSquare(a)), e);
    return v;
  });
}

TgProfile tg_compact_profile(const VolterraSymbol& g, const Weight& w, double p,
                             double q, int levels) {
  if (levels < 1)
    throw std::invalid_argument("tg_compact_profile: levels must be >= 1");
  const SquareFamily family = SquareFamily::dyadic(levels);
  const ConstantEstimate est = tg_bounded_constant(g, w, p, q, family);
  TgProfile profile;
  std::vector<double> vals;
  for (int lev = 0; lev < levels; ++lev) {
    ProfileLevel row;
    row.level = lev + 1;
    row.value = est.level_max[static_cast<std::size_t>(lev)];
    profile.rows.push_back(row);
    vals.push_back(row.value);
  }
  profile.tail_slope = tail_log2_slope(vals);
  profile.compactness_plausible =
      vals.back() == 0.0 || profile.tail_slope < -kDivergenceSlope;
  return profile;
}

double tg_qlessp_norm(const VolterraSymbol& g, const Weight& w, double p, double q,
                      const QuadratureSpec& spec) {
  if (!(q > 0.0) || !(q < p))
    throw std::invalid_argument("tg_qlessp_norm: need 0 < q < p");
  const double s = 1.0 / (1.0 / q - 1.0 / p);
  return bergman_norm(g.g, w, s, spec);
}

cplx resolvent_apply(cplx lambda, const VolterraSymbol& g,
                     const AnalyticFunction& h, const DiscPoint& z,
                     const QuadratureSpec& spec) {
  if (std::abs(lambda) == 0.0)
    throw std::invalid_argument("resolvent_apply: lambda must be nonzero");
  const AnalyticFunction hp = h.derivative(1);
  const AnalyticFunction& gg = g.g;
  QuadratureSpec inner = spec;
  inner.relative_tolerance = std::min(spec.relative_tolerance, 1e-11);
  const cplx integral =
      integrate_segment(
          z.z,
          [&gg, &hp, lambda](cplx u) { return std::exp(-gg(u) / lambda) * hp(u); },
          inner)
          .value;
  const cplx front = std::exp(gg(z.z) / lambda);
  return h(cplx{0.0, 0.0}) * front + front * integral;
}

std::string to_string(ResolventCall verdict) {
  switch (verdict) {
    case ResolventCall::kPlausible:
      return "in-resolvent-plausible";
    case ResolventCall::kEquivalenceFails:
      return "equivalence-fails";
    case ResolventCall::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ResolventVerdict resolvent_classify(cplx lambda, const VolterraSymbol& g,
                                    const Weight& w, double p,
                                    const std::vector<AnalyticFunction>& suite,
                                    const SquareFamily& family,
                                    const ResolventOptions& options) {
  if (std::abs(lambda) == 0.0)
    throw std::invalid_argument("resolvent_classify: lambda must be nonzero");
  ResolventVerdict verdict;
  verdict.lambda = lambda;
  // A non-integrable twist already settles the question: the twisted norm is
  // identically infinite and the equivalence cannot hold.
  try {
    const Weight twisted = exponential_twist(w, g.g, lambda, p);
    verdict.twisted_weight_label = twisted.label;
    const LPReport report =
        lp_ratio_suite(twisted, p, options.k, suite, options.spec);
    verdict.spread = report.spread;
    verdict.diverging = report.any_nonfinite || !std::isfinite(report.spread);
  } catch (const std::invalid_argument&) {
    verdict.twisted_weight_label = "exp_twist(" + w.label + ") [not integrable]";
    verdict.spread = kInf;
    verdict.diverging = true;
    verdict.verdict = ResolventCall::kEquivalenceFails;
    return verdict;
  }

  if (options.run_tilde_surrogate) {
    // Twisted average weight against the flat reference.
    try {
      const Weight twisted_tilde =
          exponential_twist(tilde_average(w), g.g, lambda, p);
      const BinftyReport scan = binfty_scan(twisted_tilde, standard_weight(0.0),
                                            options.p_grid, family);
      verdict.tilde_surrogate_member = scan.member_any;
    } catch (const std::invalid_argument&) {
      verdict.tilde_surrogate_member = false;
    }
  }

  if (verdict.diverging) {
    verdict.verdict = ResolventCall::kEquivalenceFails;
  } else if (verdict.spread < options.spread_threshold) {
    verdict.verdict = ResolventCall::kPlausible;
  } else {
    verdict.verdict = ResolventCall::kInconclusive;
  }
  return verdict;
}

}  // namespace berglab
