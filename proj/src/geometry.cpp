#include "berglab/geometry.hpp"

#include <cmath>

namespace berglab {

double wrap_angle(double t) {
  double w = std::remainder(t, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

DiscPoint::DiscPoint(cplx value) : z(value) {
  if (!(std::abs(value) < 1.0))
    throw std::invalid_argument("DiscPoint: |z| must be < 1");
}

CarlesonSquare::CarlesonSquare(const DiscPoint& anchor)
    : CarlesonSquare(anchor.modulus(), anchor.argument()) {}

CarlesonSquare::CarlesonSquare(double anchor_modulus, double anchor_argument)
    : modulus_(anchor_modulus), argument_(wrap_angle(anchor_argument)) {
  if (!(modulus_ > 0.0) || !(modulus_ < 1.0))
    throw std::invalid_argument("CarlesonSquare: anchor must satisfy 0 < |a| < 1");
}

double CarlesonSquare::area() const {
  const double u = 1.0 - modulus_;
  return u * (1.0 - modulus_ * modulus_) / (2.0 * kPi);
}

CarlesonSquare carleson_square(const DiscPoint& a) { return CarlesonSquare(a); }

double KTop::area() const {
  const double lo = radial_lo();
  const double hi = radial_hi();
  return (1.0 - parent.anchor_modulus()) * (hi * hi - lo * lo) / (2.0 * kPi);
}

KTop k_top(const CarlesonSquare& square, double K) {
  if (!(K > 1.0)) throw std::invalid_argument("k_top: K must be > 1");
  return KTop{square, K};
}

PseudoDisc::PseudoDisc(const DiscPoint& c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("PseudoDisc: radius must lie in (0,1)");
}

cplx PseudoDisc::euclidean_center() const {
  const double r2 = radius * radius;
  const double a2 = std::norm(center.z);
  return (1.0 - r2) * center.z / (1.0 - r2 * a2);
}

double PseudoDisc::euclidean_radius() const {
  const double r2 = radius * radius;
  const double a2 = std::norm(center.z);
  return radius * (1.0 - a2) / (1.0 - r2 * a2);
}

double pseudo_distance(const DiscPoint& z1, const DiscPoint& z2) {
  return std::abs((z1.z - z2.z) / (1.0 - std::conj(z1.z) * z2.z));
}

cplx mobius_transform(const DiscPoint& a, const DiscPoint& z) {
  return (a.z - z.z) / (1.0 - std::conj(a.z) * z.z);
}

bool contains(const CarlesonSquare& s, const DiscPoint& z) {
  if (z.modulus() < s.anchor_modulus()) return false;
  return angular_distance(z.argument(), s.anchor_argument()) <= s.angular_half_width();
}

bool contains(const KTop& t, const DiscPoint& z) {
  if (!contains(t.parent, z)) return false;
  return z.modulus() < t.radial_hi();
}

bool contains(const PseudoDisc& d, const DiscPoint& z) {
  return pseudo_distance(d.center, z) < d.radius;
}

bool contains(const StolzRegion& g, const DiscPoint& z) {
  return angular_distance(g.vertex.argument, z.argument()) <
         0.5 * (1.0 - z.modulus());
}

SquareFamily SquareFamily::dyadic(int depth) {
  if (depth < 1) throw std::invalid_argument("SquareFamily: depth must be >= 1");
  SquareFamily fam;
  fam.depth = depth;
  for (int n = 1; n <= depth; ++n) {
    const double t = 1.0 - std::ldexp(1.0, -n);
    const long m = 1L << (n + 2);
    for (long j = 0; j < m; ++j) {
      const double theta = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
      fam.anchors.emplace_back(std::polar(t, theta));
      fam.levels.push_back(n);
    }
  }
  return fam;
}

SquareFamily SquareFamily::ray(int depth, double angle) {
  if (depth < 1) throw std::invalid_argument("SquareFamily: depth must be >= 1");
  SquareFamily fam;
  fam.depth = depth;
  for (int n = 1; n <= depth; ++n) {
    const double t = 1.0 - std::ldexp(1.0, -n);
    fam.anchors.emplace_back(std::polar(t, angle));
    fam.levels.push_back(n);
  }
  return fam;
}

std::vector<CarlesonSquare> squares_containing(const DiscPoint& z,
                                               const SquareFamily& family) {
  std::vector<CarlesonSquare> out;
  for (const DiscPoint& a : family.anchors) {
    CarlesonSquare s(a);
    if (contains(s, z)) out.push_back(s);
  }
  if (z.modulus() > 0.0) out.emplace_back(z);
  return out;
}

}  // namespace berglab
