#pragma once

#include <memory>
#include <string>
#include <vector>

#include "berglab/geometry.hpp"
#include "berglab/quadrature.hpp"

namespace berglab {

// Closed-form analytic function families on the disc with exact derivatives:
// polynomials, kernel powers ((1-|a|^2)/(1 - conj(a) z))^e, principal
// logarithms log(1/(1 - conj(a) z)), exponentials, and combinators. Deeply
// nested derivative trees fall back to Cauchy-circle differentiation.
class AnalyticFunction {
 public:
  AnalyticFunction();  // zero function

  cplx operator()(cplx z) const;
  cplx operator()(const DiscPoint& z) const { return (*this)(z.z); }

  // Exact k-th derivative within the family algebra.
  AnalyticFunction derivative(int k = 1) const;

  std::string label() const;
  std::size_t node_count() const;

  // Boundary directions where the function concentrates (kernel/log anchors),
  // exposed so norms can grade the angular quadrature mesh accordingly.
  std::vector<AngularGrading> concentrations() const;

  static AnalyticFunction constant(cplx c);
  static AnalyticFunction polynomial(std::vector<cplx> coefficients);
  static AnalyticFunction monomial(int n, cplx c = 1.0);
  static AnalyticFunction kernel_power(const DiscPoint& a, double exponent);
  // log(1/(1 - conj(a) z)); |a| <= 1 is allowed (the kernel direction may
  // sit on the boundary).
  static AnalyticFunction log_kernel(cplx a);
  static AnalyticFunction exp_of(const AnalyticFunction& inner, cplx scale);
  static AnalyticFunction scale(const AnalyticFunction& f, cplx c);
  static AnalyticFunction sum(const AnalyticFunction& f, const AnalyticFunction& g);
  static AnalyticFunction product(const AnalyticFunction& f, const AnalyticFunction& g);
  static AnalyticFunction cauchy_derivative(const AnalyticFunction& f, int k);

  struct Node;

 private:
  explicit AnalyticFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline AnalyticFunction operator+(const AnalyticFunction& f, const AnalyticFunction& g) {
  return AnalyticFunction::sum(f, g);
}
inline AnalyticFunction operator*(const AnalyticFunction& f, const AnalyticFunction& g) {
  return AnalyticFunction::product(f, g);
}
inline AnalyticFunction operator*(cplx c, const AnalyticFunction& f) {
  return AnalyticFunction::scale(f, c);
}

}  // namespace berglab
