#pragma once

#include <vector>

#include "berglab/estimate.hpp"
#include "berglab/weights.hpp"

namespace berglab {

// Doubling constant over squares: max of w(S(a)) / w(S((1+|a|)/2 e^{i arg a})).
ConstantEstimate dhat_constant(const Weight& w, const SquareFamily& family);

// Reverse-doubling constant at level K: max of w(S(a)) / w(T_K(a)), K > 1.
ConstantEstimate dcheck_constant(const Weight& w, double K,
                                 const SquareFamily& family);

struct DcheckBetaFit {
  double beta0 = 0.0;       // largest exponent valid across all samples
  double implied_C = 1.0;   // K^beta0
  bool holds = false;       // beta0 > 0
  long samples = 0;
};

// Fits the largest beta with
//   w(S(a)) >= ((1-|a|)/(1-|b|))^beta  w(S(a) \ D(0,|b|))
// over |b| = 1 - (1-|a|)/K^m, m = 1..b_levels, across the family.
DcheckBetaFit dcheck_beta(const Weight& w, double K, const SquareFamily& family,
                          int b_levels);

// Hoelder-dual constant of w against the reference nu at exponent p > 1:
//   max over S of (int_S w nu)^{1/p} (int_S w^{-p'/p} nu)^{1/p'} / int_S nu.
ConstantEstimate bp_constant(const Weight& w, const Weight& nu, double p,
                             const SquareFamily& family);

struct BinftyEntry {
  double p = 0.0;
  ConstantEstimate estimate;
  bool member = false;  // bounded (non-diverging) at this p
};

struct BinftyReport {
  std::vector<BinftyEntry> per_p;
  bool member_any = false;
};

// Scans p -> bp_constant(w/nu, nu, p); membership of the quotient class at
// any sampled p. A fixed finite p-grid can only certify membership, never
// its absence.
BinftyReport binfty_scan(const Weight& w, const Weight& nu,
                         const std::vector<double>& p_grid,
                         const SquareFamily& family);

struct KTFit {
  double delta = 0.0;
  double C = 1.0;
  double worst_residual = 0.0;  // spread of log-intercepts around the fit
  bool failed = false;          // some subset had w(E)=0 with nu(E)>0
  cplx witness_anchor{0.0, 0.0};
  long samples = 0;
};

// Fits (delta, C) with nu(E)/nu(S) <= C (w(E)/w(S))^delta over generated
// subsets of each family square (dyadic sub-squares and outer slices).
KTFit kt_estimate(const Weight& w, const Weight& nu, const SquareFamily& family,
                  int subsets_per_square);

// Ratio pair (w(E)/w(S), nu(E)/nu(S)) for E = S cap {indicator}; exposes the
// KT test for explicitly chosen subsets.
std::pair<double, double> kt_subset_ratios(const Weight& w, const Weight& nu,
                                           const CarlesonSquare& s,
                                           const std::function<bool(cplx)>& subset);

// Kernel-domination constant at exponent eta > 0:
//   max over anchors of (1-|a|)^eta / w(S(a)) * int_D w(z)/|1 - conj(a) z|^eta dA.
ConstantEstimate lemma_b_iv_constant(const Weight& w, double eta,
                                     const SquareFamily& family);

// Smallest eta from a small grid whose kernel-domination constant is
// non-diverging; feeds the default test-function exponent.
double find_eta(const Weight& w, const SquareFamily& family);

}  // namespace berglab
