#pragma once

#include <functional>
#include <vector>

#include "berglab/geometry.hpp"

namespace berglab {

// Maximum of a quantity over a finite square family: a certified lower bound
// for the true supremum. level_slope is the log2 growth per dyadic level of
// the running maximum over the last levels; a slope above the divergence
// threshold flags an unbounded supremum.
struct ConstantEstimate {
  double value = 0.0;
  cplx witness_anchor{0.0, 0.0};
  long samples = 0;
  double level_slope = 0.0;
  bool diverging = false;
  std::vector<double> level_max;  // per dyadic level, 1-based levels
};

inline constexpr double kDivergenceSlope = 0.15;

// Evaluates fn on every family anchor and reduces to a ConstantEstimate.
// When dedupe_radial is set, only one anchor per level is evaluated (valid
// when the scanned quantity is rotation invariant).
ConstantEstimate scan_family(const SquareFamily& family, bool dedupe_radial,
                             const std::function<double(const DiscPoint&)>& fn);

// Least-squares slope of log2(values) against level index over the last
// window entries; non-finite values make the fit diverge.
double tail_log2_slope(const std::vector<double>& values, int window = 4);

// Global worker cap for embarrassingly parallel scans (1 = serial).
void set_worker_count(int n);
int worker_count();

// Index-space parallel map; results are written by index so output is
// deterministic regardless of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace berglab
