#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "berglab/geometry.hpp"

namespace berglab {

// Polar rectangle [r_lo, r_hi) x [theta_lo, theta_hi]; theta width <= 2 pi.
// r_hi == 1 means the region abuts the boundary.
struct PolarRect {
  double r_lo, r_hi;
  double theta_lo, theta_hi;
};

// Euclidean disc, used for pseudohyperbolic discs.
struct DiscArea {
  cplx center;
  double radius;
};

using Region = std::variant<PolarRect, DiscArea>;

Region whole_disc();
Region region_of(const CarlesonSquare& s);
Region region_of(const KTop& t);
Region region_of(const PseudoDisc& d);
// S(a) without its K-top: the outer slice [1 - (1-|a|)/K, 1).
Region square_minus_ktop(const CarlesonSquare& s, double K);
// S(a) \ D(0, t): outer annular slice of the square, t >= |a|.
Region square_outside_radius(const CarlesonSquare& s, double t);

// Points toward which the angular mesh is geometrically graded; used for
// integrands concentrated near a boundary direction.
struct AngularGrading {
  double theta;
  double scale;  // finest panel width requested around theta
};

struct QuadratureSpec {
  double relative_tolerance = 1e-8;
  int max_annuli = 40;
  int nodes_per_cell = 32;  // per axis; clamped to even values in [4, 64]
  std::optional<double> boundary_exponent_hint;
  int max_subdivision_depth = 6;
  long max_cells = 30000;
  std::vector<AngularGrading> angular_grading;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long cells_used = 0;
  bool converged = false;
};

using RealIntegrand = std::function<double(cplx)>;

// Integral of f against normalized area measure dA = dx dy / pi over the
// region, via boundary-graded annular bands, tensor Gauss-Legendre cells,
// adaptive subdivision and geometric tail extrapolation at r = 1.
IntegralResult integrate(const Region& region, const RealIntegrand& f,
                         const QuadratureSpec& spec = {});

struct SegmentResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

using ComplexIntegrand = std::function<cplx(cplx)>;

// Line integral of h along the straight segment from 0 to z_end.
SegmentResult integrate_segment(cplx z_end, const ComplexIntegrand& h,
                                const QuadratureSpec& spec = {});

// 1-D integral of f over [lo, hi] with the same boundary grading toward 1
// when hi == 1. Used for radial profiles and tail integrals.
IntegralResult integrate_line(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec = {});

// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

}  // namespace berglab
