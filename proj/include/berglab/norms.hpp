#pragma once

#include <string>
#include <vector>

#include "berglab/estimate.hpp"
#include "berglab/functions.hpp"
#include "berglab/weights.hpp"

namespace berglab {

// (int_D |f|^p w dA)^{1/p}.
double bergman_norm(const AnalyticFunction& f, const Weight& w, double p,
                    const QuadratureSpec& spec = {});

// (int_D |f^{(k)}|^p (1-|z|)^{kp} w dA + sum_{j<k} |f^{(j)}(0)|^p)^{1/p}.
double lp_functional(const AnalyticFunction& f, const Weight& w, double p, int k,
                     const QuadratureSpec& spec = {});

struct LPRow {
  std::string label;
  double bergman_p = 0.0;  // p-th power of the Bergman norm
  double lp_p = 0.0;       // p-th power of the derivative functional
  double ratio = 0.0;      // bergman_p / lp_p
};

struct LPReport {
  std::vector<LPRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;         // max_ratio / min_ratio
  double one_sided_max = 0.0;  // max of lp_p / bergman_p
  bool any_nonfinite = false;
};

// Ratio suite for the norm equivalence against the k-th derivative
// functional; the spread summarizes the two-sided comparison, one_sided_max
// the upper inequality alone.
LPReport lp_ratio_suite(const Weight& w, double p, int k,
                        const std::vector<AnalyticFunction>& suite,
                        const QuadratureSpec& spec = {});

struct TildeRow {
  std::string label;
  double base_p = 0.0;   // |f| norm power against w
  double tilde_p = 0.0;  // against the square-average weight
  double lp_tilde_p = 0.0;
};

struct TildeReport {
  std::vector<TildeRow> rows;
  double norm_spread = 0.0;  // two-sided spread of base vs tilde
  double lp_spread = 0.0;    // tilde norm vs derivative functional with tilde
};

TildeReport tilde_equivalence_suite(const Weight& w, double p, int k,
                                    const std::vector<AnalyticFunction>& suite,
                                    const QuadratureSpec& spec = {});

// max over grid points of |f^{(k)}(z)|^p (1-|z|)^{2+kp} / int_{Delta(z,s)} |f|^p dA.
ConstantEstimate subharmonic_bound_check(const AnalyticFunction& f, double p,
                                         int k, double s,
                                         const std::vector<DiscPoint>& grid);

// sup over the dyadic grid (plus the origin) of (1-|z|^2) |g'(z)|.
ConstantEstimate bloch_seminorm(const AnalyticFunction& g, int grid_depth);

// F_{a}(z) = ((1-|a|^2)/(1-conj(a) z))^{gamma/p} scaled by w(S(a))^{-1/p}.
AnalyticFunction normalized_test_function(const Weight& w, const DiscPoint& a,
                                          double p, double gamma);

// Default ratio suite: constants, monomials up to degree 32, kernel powers
// with dyadic anchors on four rays up to the given depth, and boundary
// log kernels. gamma is the kernel-power exponent times p.
std::vector<AnalyticFunction> default_suite(double p, double gamma, int depth,
                                            int max_monomial = 32);

}  // namespace berglab
