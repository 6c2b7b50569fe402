#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace berglab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Wraps an angle into (-pi, pi].
double wrap_angle(double t);

// Shorter-arc distance between two angles, in [0, pi].
double angular_distance(double a, double b);

// A point of the open unit disc. The constructor rejects |z| >= 1.
struct DiscPoint {
  cplx z{0.0, 0.0};

  DiscPoint() = default;
  explicit DiscPoint(cplx value);
  DiscPoint(double re, double im) : DiscPoint(cplx(re, im)) {}

  double modulus() const { return std::abs(z); }
  double argument() const { return std::arg(z); }
};

// A point of the unit circle, kept as its angle. Only nontangential
// approach regions consume these.
struct BoundaryPoint {
  double argument = 0.0;

  cplx value() const { return std::polar(1.0, argument); }
};

// Polar rectangle S(a) = {z : |z| >= |a|, |arg(a e^{-i arg z})| <= (1-|a|)/2}
// anchored at a != 0, abutting the boundary.
class CarlesonSquare {
 public:
  explicit CarlesonSquare(const DiscPoint& anchor);
  CarlesonSquare(double anchor_modulus, double anchor_argument);

  double anchor_modulus() const { return modulus_; }
  double anchor_argument() const { return argument_; }
  DiscPoint anchor() const { return DiscPoint(std::polar(modulus_, argument_)); }

  double radial_lo() const { return modulus_; }
  double angular_half_width() const { return 0.5 * (1.0 - modulus_); }
  // Normalized area (1-|a|)(1-|a|^2)/(2 pi).
  double area() const;

 private:
  double modulus_;
  double argument_;
};

CarlesonSquare carleson_square(const DiscPoint& a);

// Inner radial slice of a Carleson square: same arc, radii
// [|a|, 1 - (1-|a|)/K) with K > 1.
struct KTop {
  CarlesonSquare parent;
  double K;

  double radial_lo() const { return parent.radial_lo(); }
  double radial_hi() const { return 1.0 - (1.0 - parent.anchor_modulus()) / K; }
  double area() const;
};

KTop k_top(const CarlesonSquare& square, double K);

// Pseudohyperbolic disc Delta(z, r) = {u : rho(u, z) < r}. As a set it is a
// Euclidean disc strictly inside the unit disc.
struct PseudoDisc {
  DiscPoint center;
  double radius;

  PseudoDisc(const DiscPoint& c, double r);

  cplx euclidean_center() const;
  double euclidean_radius() const;
};

// Nontangential approach region Gamma(zeta) = {z : |arg zeta - arg z| < (1-|z|)/2}.
struct StolzRegion {
  BoundaryPoint vertex;
};

double pseudo_distance(const DiscPoint& z1, const DiscPoint& z2);

// Disc automorphism phi_a(z) = (a - z)/(1 - conj(a) z).
cplx mobius_transform(const DiscPoint& a, const DiscPoint& z);

bool contains(const CarlesonSquare& s, const DiscPoint& z);
bool contains(const KTop& t, const DiscPoint& z);
bool contains(const PseudoDisc& d, const DiscPoint& z);
bool contains(const StolzRegion& g, const DiscPoint& z);

// Finite index set for the suprema over Carleson squares: dyadic moduli
// 1 - 2^{-n}, n = 1..depth, with 2^{n+2} equispaced arguments per level.
struct SquareFamily {
  int depth = 0;
  std::vector<DiscPoint> anchors;
  std::vector<int> levels;  // per-anchor dyadic level, 1-based

  static SquareFamily dyadic(int depth);
  // Anchors 1 - 2^{-n} along a single ray.
  static SquareFamily ray(int depth, double angle);

  bool empty() const { return anchors.empty(); }
  std::size_t size() const { return anchors.size(); }
};

// Family members containing z, plus the square anchored at z itself
// whenever |z| > 0. The origin lies in no Carleson square.
std::vector<CarlesonSquare> squares_containing(const DiscPoint& z,
                                               const SquareFamily& family);

}  // namespace berglab
