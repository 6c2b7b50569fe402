#pragma once

#include <optional>
#include <vector>

#include "berglab/estimate.hpp"
#include "berglab/functions.hpp"
#include "berglab/weights.hpp"

namespace berglab {

// Positive Borel measure on the disc: an absolutely continuous part given by
// a density against normalized area, or a finite list of atoms.
struct DiscMeasure {
  std::optional<Weight> density;
  struct Atom {
    DiscPoint point;
    double mass;
  };
  std::vector<Atom> atoms;

  static DiscMeasure from_density(Weight w);
  static DiscMeasure from_atoms(std::vector<Atom> atoms);
  bool is_atomic() const { return !atoms.empty(); }
};

double measure_of(const DiscMeasure& mu, const CarlesonSquare& s);
double measure_of(const DiscMeasure& mu, const KTop& t);
double measure_of(const DiscMeasure& mu, const PolarRect& rect);
double total_measure(const DiscMeasure& mu);

// Embedding constant: max over family squares of mu(S) / w(S)^{q/p}, p <= q.
ConstantEstimate carleson_constant(const DiscMeasure& mu, const Weight& w,
                                   double p, double q, const SquareFamily& family);

// Test-function lower bound for the embedding norm:
//   max over anchors of (int |F_a|^q dmu)^{1/q} / ||F_a||_{A^p_w},
// with kernel exponent gamma/p.
ConstantEstimate embedding_lower_bound(const DiscMeasure& mu, const Weight& w,
                                       double p, double q, double gamma,
                                       const SquareFamily& family);

struct ProfileRow {
  int level = 0;
  double value = 0.0;
  cplx witness_anchor{0.0, 0.0};
};

struct VanishingProfile {
  std::vector<ProfileRow> rows;
  bool vanishing = false;
  double tail_slope = 0.0;  // log2 slope of the level maxima
};

// Per-dyadic-level maxima of mu(S)/w(S)^{q/p}; "vanishing" when the level
// maxima decay (slope below the negative divergence threshold, or an exact
// zero tail).
VanishingProfile vanishing_profile(const DiscMeasure& mu, const Weight& w,
                                   double p, double q, int levels);

// sup over family squares containing z (plus the square anchored at z) of
// the w-average of |phi| over the square.
double hormander_maximal(const std::function<double(cplx)>& phi, const Weight& w,
                         const DiscPoint& z, const SquareFamily& family);

// Memoizes per-square averages of one fixed phi across many evaluation points.
class MaximalEvaluator {
 public:
  MaximalEvaluator(std::function<double(cplx)> phi, Weight w, SquareFamily family,
                   QuadratureSpec spec = {});
  double operator()(const DiscPoint& z) const;

 private:
  std::function<double(cplx)> phi_;
  Weight w_;
  SquareFamily family_;
  QuadratureSpec spec_;
  struct State;
  std::shared_ptr<State> state_;
};

// Probe-based estimate of the maximal-power operator norm
//   max over probes of || [M_w(|phi|^{1/alpha})]^alpha ||_{L^q_mu} / ||phi||_{L^p_w},
// with p alpha > 1.
ConstantEstimate maximal_power_operator_constant(
    const Weight& w, double p, double q, double alpha, const DiscMeasure& mu,
    const SquareFamily& family, const std::vector<std::function<double(cplx)>>& probes);

// max over grid of |f(z)|^s / M_w(|f|^s)(z).
ConstantEstimate pointwise_domination_check(const AnalyticFunction& f,
                                            const Weight& w, double s,
                                            const std::vector<DiscPoint>& grid,
                                            const SquareFamily& family);

}  // namespace berglab
