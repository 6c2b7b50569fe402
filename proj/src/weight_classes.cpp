#include "berglab/weight_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace berglab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConstantEstimate dhat_constant(const Weight& w, const SquareFamily& family) {
  return scan_family(family, w.radial, [&](const DiscPoint& a) {
    const CarlesonSquare s(a);
    const CarlesonSquare outer(0.5 * (1.0 + a.modulus()), a.argument());
    const double denom = square_mass(w, outer);
    const double num = square_mass(w, s);
    if (!(denom > 0.0)) return kInf;
    return num / denom;
  });
}

ConstantEstimate dcheck_constant(const Weight& w, double K,
                                 const SquareFamily& family) {
  if (!(K > 1.0)) throw std::invalid_argument("dcheck_constant: K must be > 1");
  return scan_family(family, w.radial, [&](const DiscPoint& a) {
    const CarlesonSquare s(a);
    const double denom =
        polar_mass(w, std::get<PolarRect>(region_of(k_top(s, K))));
    const double num = square_mass(w, s);
    if (!(denom > 0.0)) return kInf;
    return num / denom;
  });
}

DcheckBetaFit dcheck_beta(const Weight& w, double K, const SquareFamily& family,
                          int b_levels) {
  if (!(K > 1.0)) throw std::invalid_argument("dcheck_beta: K must be > 1");
  if (b_levels < 1) throw std::invalid_argument("dcheck_beta: b_levels must be >= 1");
  if (family.empty()) throw std::invalid_argument("dcheck_beta: empty family");
  DcheckBetaFit fit;
  double beta0 = kInf;
  std::vector<std::size_t> picked;
  int last = -1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (w.radial && family.levels[i] == last) continue;
    picked.push_back(i);
    last = family.levels[i];
  }
  std::vector<double> local(picked.size(), kInf);
  parallel_for(picked.size(), [&](std::size_t j) {
    const DiscPoint& a = family.anchors[picked[j]];
    const CarlesonSquare s(a);
    const double mass_s = square_mass(w, s);
    double best = kInf;
    for (int m = 1; m <= b_levels; ++m) {
      const double bmod = 1.0 - (1.0 - a.modulus()) / std::pow(K, m);
      if (bmod >= 1.0 - 1e-13) break;
      const double outer = polar_mass(w, std::get<PolarRect>(
                                             square_outside_radius(s, bmod)));
      if (!(outer > 0.0)) continue;  // empty outer slice constrains nothing
      if (!(mass_s > 0.0)) {
        best = 0.0;
        break;
      }
      const double ratio = mass_s / outer;
      // Largest beta with ratio >= (K^m)^beta.
      const double b = std::log(std::max(ratio, 1.0)) / (m * std::log(K));
      best = std::min(best, b);
    }
    local[j] = best;
  });
  for (std::size_t j = 0; j < picked.size(); ++j) {
    beta0 = std::min(beta0, local[j]);
    fit.samples += b_levels;
  }
  if (!std::isfinite(beta0)) beta0 = 0.0;
  fit.beta0 = std::max(beta0, 0.0);
  fit.implied_C = std::pow(K, fit.beta0);
  fit.holds = fit.beta0 > 0.0;
  return fit;
}

ConstantEstimate bp_constant(const Weight& w, const Weight& nu, double p,
                             const SquareFamily& family) {
  if (!(p > 1.0)) throw std::invalid_argument("bp_constant: p must be > 1");
  const double pprime = p / (p - 1.0);
  const double dual_exponent = -pprime / p;
  // w nu and w^{-p'/p} nu as derived weights so their rectangle masses memoize.
  Weight wnu;
  wnu.label = "(" + w.label + ")*(" + nu.label + ")";
  wnu.radial = w.radial && nu.radial;
  {
    auto dw = w.density, dn = nu.density;
    wnu.density = [dw, dn](cplx z) { return dw(z) * dn(z); };
    if (wnu.radial && w.has_profile() && nu.has_profile()) {
      auto pw = w.radial_profile, pn = nu.radial_profile;
      wnu.radial_profile = [pw, pn](double s) { return pw(s) * pn(s); };
    }
    wnu.angular_hints = w.angular_hints;
    for (const AngularGrading& h : nu.angular_hints) wnu.angular_hints.push_back(h);
    if (w.boundary_exponent || nu.boundary_exponent)
      wnu.boundary_exponent =
          w.boundary_exponent.value_or(0.0) + nu.boundary_exponent.value_or(0.0);
  }
  Weight wdual;
  wdual.label = "(" + w.label + ")^(-p'/p)*(" + nu.label + ")";
  wdual.radial = w.radial && nu.radial;
  {
    auto dw = w.density, dn = nu.density;
    wdual.density = [dw, dn, dual_exponent](cplx z) {
      return std::pow(dw(z), dual_exponent) * dn(z);
    };
    if (wdual.radial && w.has_profile() && nu.has_profile()) {
      auto pw = w.radial_profile, pn = nu.radial_profile;
      wdual.radial_profile = [pw, pn, dual_exponent](double s) {
        return std::pow(pw(s), dual_exponent) * pn(s);
      };
    }
    wdual.angular_hints = wnu.angular_hints;
  }
  return scan_family(family, wnu.radial, [&](const DiscPoint& a) {
    const CarlesonSquare s(a);
    const PolarRect rect = std::get<PolarRect>(region_of(s));
    const double m_wnu = polar_mass(wnu, rect);
    const double m_dual = polar_mass(wdual, rect);
    const double m_nu = polar_mass(nu, rect);
    if (!std::isfinite(m_dual) || !std::isfinite(m_wnu)) return kInf;
    if (!(m_nu > 0.0)) return kInf;
    return std::pow(m_wnu, 1.0 / p) * std::pow(m_dual, 1.0 / pprime) / m_nu;
  });
}

BinftyReport binfty_scan(const Weight& w, const Weight& nu,
                         const std::vector<double>& p_grid,
                         const SquareFamily& family) {
  if (p_grid.empty()) throw std::invalid_argument("binfty_scan: empty p grid");
  BinftyReport report;
  const Weight phi = quotient_weight(w, nu);
  for (double p : p_grid) {
    BinftyEntry entry;
    entry.p = p;
    entry.estimate = bp_constant(phi, nu, p, family);
    entry.member = !entry.estimate.diverging;
    report.member_any = report.member_any || entry.member;
    report.per_p.push_back(std::move(entry));
  }
  return report;
}

std::pair<double, double> kt_subset_ratios(const Weight& w, const Weight& nu,
                                           const CarlesonSquare& s,
                                           const std::function<bool(cplx)>& subset) {
  const PolarRect rect = std::get<PolarRect>(region_of(s));
  QuadratureSpec spec_w = effective_spec(w, w.mass_spec);
  QuadratureSpec spec_n = effective_spec(nu, nu.mass_spec);
  auto restricted = [&subset](const std::function<double(cplx)>& d) {
    return [d, &subset](cplx z) { return subset(z) ? d(z) : 0.0; };
  };
  const double we = integrate(rect, restricted(w.density), spec_w).value;
  const double ne = integrate(rect, restricted(nu.density), spec_n).value;
  const double ws = polar_mass(w, rect);
  const double ns = polar_mass(nu, rect);
  return {we / ws, ne / ns};
}

KTFit kt_estimate(const Weight& w, const Weight& nu, const SquareFamily& family,
                  int subsets_per_square) {
  if (subsets_per_square < 4)
    throw std::invalid_argument("kt_estimate: subsets_per_square must be >= 4");
  if (family.empty()) throw std::invalid_argument("kt_estimate: empty family");
  KTFit fit;
  std::vector<double> lx, ly;  // log(w(E)/w(S)), log(nu(E)/nu(S))
  for (std::size_t i = 0; i < family.size(); ++i) {
    if ((w.radial && nu.radial) && family.levels[i] > 1 &&
        family.anchors[i].argument() != family.anchors[0].argument())
      continue;  // rotation-invariant data: one ray suffices
    const DiscPoint& a = family.anchors[i];
    const CarlesonSquare s(a);
    const double ws = square_mass(w, s);
    const double ns = square_mass(nu, s);
    if (!(ws > 0.0) || !(ns > 0.0)) continue;
    std::vector<PolarRect> subsets;
    // Dyadic sub-squares at three sub-levels.
    for (int j = 1; j <= 3 && static_cast<int>(subsets.size()) < subsets_per_square; ++j) {
      const double sub_mod = 1.0 - (1.0 - a.modulus()) / std::pow(2.0, j);
      const int count = 1 << j;
      for (int q = 0; q < count; ++q) {
        const double arg = a.argument() - s.angular_half_width() +
                           (2.0 * q + 1.0) * s.angular_half_width() / count;
        subsets.push_back(
            std::get<PolarRect>(region_of(CarlesonSquare(sub_mod, arg))));
        if (static_cast<int>(subsets.size()) >= subsets_per_square) break;
      }
    }
    // Outer annular slices S \ D(0, t).
    for (int m = 1; m <= 3; ++m) {
      const double t = 1.0 - (1.0 - a.modulus()) / std::pow(2.0, m);
      subsets.push_back(std::get<PolarRect>(square_outside_radius(s, t)));
    }
    for (const PolarRect& e : subsets) {
      const double we = polar_mass(w, e);
      const double ne = polar_mass(nu, e);
      if (!(ne > 0.0)) continue;
      if (!(we > 0.0)) {
        fit.failed = true;
        fit.witness_anchor = a.z;
        continue;
      }
      const double x = std::log(we / ws);
      const double y = std::log(ne / ns);
      if (x < -1e-12) {  // proper subsets only; x = 0 carries no slope data
        lx.push_back(x);
        ly.push_back(y);
      }
      ++fit.samples;
    }
  }
  if (fit.failed) {
    fit.delta = 0.0;
    fit.C = 1.0;
    return fit;
  }
  if (lx.empty()) return fit;
  // Through-origin least squares for the exponent, envelope lift for C.
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double delta = sxx > 0.0 ? sxy / sxx : 0.0;
  delta = std::clamp(delta, 0.0, 1.0);
  double maxc = -kInf, minc = kInf;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double c = ly[i] - delta * lx[i];
    maxc = std::max(maxc, c);
    minc = std::min(minc, c);
  }
  fit.delta = delta;
  fit.C = std::exp(maxc);
  fit.worst_residual = maxc - minc;
  return fit;
}

ConstantEstimate lemma_b_iv_constant(const Weight& w, double eta,
                                     const SquareFamily& family) {
  if (!(eta > 0.0))
    throw std::invalid_argument("lemma_b_iv_constant: eta must be > 0");
  QuadratureSpec spec = effective_spec(w, w.mass_spec);
  spec.relative_tolerance = std::max(spec.relative_tolerance, 1e-6);
  return scan_family(family, false, [&](const DiscPoint& a) {
    const cplx abar = std::conj(a.z);
    QuadratureSpec s = spec;
    // The kernel concentrates toward the anchor direction.
    s.angular_grading.push_back(
        AngularGrading{a.argument(), 0.25 * (1.0 - a.modulus())});
    auto d = w.density;
    const IntegralResult kernel = integrate(
        whole_disc(),
        [d, abar, eta](cplx z) {
          return d(z) / std::pow(std::abs(1.0 - abar * z), eta);
        },
        s);
    if (!std::isfinite(kernel.value)) return kInf;
    const double mass = square_mass(w, CarlesonSquare(a));
    if (!(mass > 0.0)) return kInf;
    return std::pow(1.0 - a.modulus(), eta) * kernel.value / mass;
  });
}

double find_eta(const Weight& w, const SquareFamily& family) {
  const double base = w.boundary_exponent.value_or(0.0);
  for (double eta : {base + 3.0, base + 4.0, base + 5.0}) {
    const ConstantEstimate est = lemma_b_iv_constant(w, eta, family);
    if (!est.diverging) return eta;
  }
  return base + 5.0;
}

}  // namespace berglab
