#pragma once

#include <string>
#include <vector>

#include "berglab/norms.hpp"
#include "berglab/weight_classes.hpp"

namespace berglab {

// Symbol of the integration operator f -> int_0^z f g'; requires a closed-form
// derivative and a finite Bloch-seminorm estimate.
struct VolterraSymbol {
  AnalyticFunction g;
  double bloch_estimate = 0.0;

  static VolterraSymbol from(const AnalyticFunction& g, int grid_depth = 8);
};

// T_g(f)(z) along the straight segment from 0.
cplx apply_tg(const VolterraSymbol& g, const AnalyticFunction& f,
              const DiscPoint& z, const QuadratureSpec& spec = {});

// Boundedness criterion quantity: max over anchors of
// (1-|a|) |g'(a)| w(S(a))^{1/q - 1/p}, p <= q. At p = q the weight factor
// drops and the estimate is the (1-|a|)-normalized derivative supremum.
ConstantEstimate tg_bounded_constant(const VolterraSymbol& g, const Weight& w,
                                     double p, double q, const SquareFamily& family);

struct ProfileLevel {
  int level = 0;
  double value = 0.0;
  cplx witness_anchor{0.0, 0.0};
};

struct TgProfile {
  std::vector<ProfileLevel> rows;
  bool compactness_plausible = false;
  double tail_slope = 0.0;
};

// Per-level maxima of the boundedness quantity; decay flags compactness
// (the little-Bloch detection at p = q).
TgProfile tg_compact_profile(const VolterraSymbol& g, const Weight& w, double p,
                             double q, int levels);

// q < p regime: the criterion is g in A^s_w with 1/s = 1/q - 1/p (positive
// index reading); returns ||g||_{A^s_w}.
double tg_qlessp_norm(const VolterraSymbol& g, const Weight& w, double p, double q,
                      const QuadratureSpec& spec = {});

// R_{lambda,g} h(z) = h(0) e^{g/lambda} + e^{g/lambda} int_0^z e^{-g/lambda} h'.
cplx resolvent_apply(cplx lambda, const VolterraSymbol& g,
                     const AnalyticFunction& h, const DiscPoint& z,
                     const QuadratureSpec& spec = {});

enum class ResolventCall { kPlausible, kEquivalenceFails, kInconclusive };

struct ResolventVerdict {
  cplx lambda{0.0, 0.0};
  double spread = 0.0;
  ResolventCall verdict = ResolventCall::kInconclusive;
  std::string twisted_weight_label;
  bool diverging = false;
  bool tilde_surrogate_member = false;  // twisted tilde weight scan verdict
};

std::string to_string(ResolventCall verdict);

struct ResolventOptions {
  double spread_threshold = 1e3;
  int k = 1;
  std::vector<double> p_grid{2.0};  // for the twisted-tilde surrogate scan
  bool run_tilde_surrogate = true;
  QuadratureSpec spec;
};

// Classifies lambda by the twisted-weight norm equivalence: builds
// w exp(p Re(g/lambda)), runs the first-derivative ratio suite, and reports
// the twisted-tilde quotient scan as a side check.
ResolventVerdict resolvent_classify(cplx lambda, const VolterraSymbol& g,
                                    const Weight& w, double p,
                                    const std::vector<AnalyticFunction>& suite,
                                    const SquareFamily& family,
                                    const ResolventOptions& options = {});

}  // namespace berglab
