#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "berglab/functions.hpp"
#include "berglab/geometry.hpp"
#include "berglab/quadrature.hpp"

namespace berglab {

// A nonnegative integrable density on the disc. Weights are value types;
// copies share the memoized mass caches. Radial weights carry a 1-D profile
// and may carry a closed-form tail; a few catalog weights also carry a
// closed-form polar-rectangle mass.
class Weight {
 public:
  std::string label;
  bool radial = false;
  std::function<double(cplx)> density;
  std::function<double(double)> radial_profile;            // radial weights only
  std::function<double(double)> tail_closed;               // r -> int_r^1 w(s) ds
  std::function<double(const PolarRect&)> rect_mass_closed;
  std::optional<double> pure_power_alpha;  // set when w(s) = (1-s)^alpha exactly
  std::optional<double> boundary_exponent;
  std::vector<AngularGrading> angular_hints;
  QuadratureSpec mass_spec;  // spec for internal mass quadratures

  Weight();
  double operator()(cplx z) const { return density(z); }
  bool has_profile() const { return static_cast<bool>(radial_profile); }

  struct Caches;
  const std::shared_ptr<Caches>& caches() const { return caches_; }
  void reset_caches();

 private:
  std::shared_ptr<Caches> caches_;
};

// --- catalog ---------------------------------------------------------------

// (alpha+1) (1-|z|^2)^alpha, alpha > -1.
Weight standard_weight(double alpha);
// (1-|z|)^alpha, alpha > -1.
Weight radial_power_weight(double alpha);
// exp(-c/(1-|z|)), c > 0; rapidly vanishing at the boundary, non-doubling.
Weight exp_radial_weight(double c);
// W(r e^{i theta}) = (1-r)^{eps/2-1} |theta|^{eps/2-1} for theta != 0, 1 on
// the positive real ray; eps in (0,1). theta is the principal argument.
Weight spiral_w_weight(double eps);
// Indicator of the complement of the nontangential region at 1.
Weight stolz_indicator_weight();
// User-supplied density; integrability is checked numerically.
Weight custom_weight(std::string label, std::function<double(cplx)> density,
                     bool radial = false,
                     std::function<double(double)> profile = nullptr);

// --- transforms --------------------------------------------------------------

// (1-|z|)^beta w(z); rejects non-integrable results.
Weight beta_shift(const Weight& w, double beta);
// z -> w(S(z)) / (1-|z|)^2, extended below |z| = 0.01 by its value there.
Weight tilde_average(const Weight& w);
// z -> w(Delta(z, r)) / (1-|z|)^2.
Weight horizontal_average(const Weight& w, double r);
// w(z) exp(p Re(g(z)/lambda)), lambda != 0, p > 0.
Weight exponential_twist(const Weight& w, const AnalyticFunction& g, cplx lambda,
                         double p);
Weight product_weight(const Weight& a, const Weight& b);
Weight scale_weight(const Weight& w, double c);
// Pointwise quotient a/b, used to scan quotient weights.
Weight quotient_weight(const Weight& a, const Weight& b);

// --- mass operations ---------------------------------------------------------

// Tail integral int_r^1 w(s) ds of a radial weight; closed form when
// available, otherwise graded 1-D quadrature. Throws for non-radial weights.
double tail_integral(const Weight& w, double r);

// Memoized w-mass of a polar rectangle (closed form, radial reduction, or
// 2-D quadrature in that order).
double polar_mass(const Weight& w, const PolarRect& rect);
double square_mass(const Weight& w, const CarlesonSquare& s);
double total_mass(const Weight& w);

// Base spec merged with the weight's singularity hints.
QuadratureSpec effective_spec(const Weight& w, QuadratureSpec base);

}  // namespace berglab
