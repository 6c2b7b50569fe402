#include "berglab/estimate.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace berglab {

namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int n) { g_workers.store(n < 1 ? 1 : n); }
int worker_count() { return g_workers.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  }
  for (auto& t : pool) t.join();
}

double tail_log2_slope(const std::vector<double>& values, int window) {
  if (values.size() < 2) return 0.0;
  const int n = static_cast<int>(values.size());
  const int w = std::min(window + 1, n);  // number of points in the fit
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = n - w; i < n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    const double y = std::log2(std::max(v, 1e-300));
    const double x = static_cast<double>(i);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = w * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (w * sxy - sx * sy) / denom;
}

ConstantEstimate scan_family(const SquareFamily& family, bool dedupe_radial,
                             const std::function<double(const DiscPoint&)>& fn) {
  if (family.empty()) throw std::invalid_argument("scan_family: empty family");
  ConstantEstimate est;
  std::vector<std::size_t> picked;
  picked.reserve(family.size());
  int last_level = -1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (dedupe_radial && family.levels[i] == last_level) continue;
    picked.push_back(i);
    last_level = family.levels[i];
  }
  std::vector<double> vals(picked.size());
  parallel_for(picked.size(),
               [&](std::size_t j) { vals[j] = fn(family.anchors[picked[j]]); });

  const int depth = family.depth;
  std::vector<double> level_max(static_cast<std::size_t>(depth), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(depth), false);
  double best = -std::numeric_limits<double>::infinity();
  cplx witness{0.0, 0.0};
  bool any_bad = false;
  for (std::size_t j = 0; j < picked.size(); ++j) {
    const double v = vals[j];
    const int lev = family.levels[picked[j]] - 1;
    if (!std::isfinite(v)) {
      any_bad = true;
      level_max[static_cast<std::size_t>(lev)] =
          std::numeric_limits<double>::infinity();
      seen[static_cast<std::size_t>(lev)] = true;
      if (!(best == std::numeric_limits<double>::infinity())) {
        best = std::numeric_limits<double>::infinity();
        witness = family.anchors[picked[j]].z;
      }
      continue;
    }
    seen[static_cast<std::size_t>(lev)] = true;
    if (v > level_max[static_cast<std::size_t>(lev)])
      level_max[static_cast<std::size_t>(lev)] = v;
    if (v > best) {
      best = v;
      witness = family.anchors[picked[j]].z;
    }
  }
  // Running max per level, restricted to levels actually present.
  std::vector<double> running;
  double run = 0.0;
  for (int lev = 0; lev < depth; ++lev) {
    if (!seen[static_cast<std::size_t>(lev)]) continue;
    run = std::max(run, level_max[static_cast<std::size_t>(lev)]);
    running.push_back(run);
  }
  est.value = best;
  est.witness_anchor = witness;
  est.samples = static_cast<long>(picked.size());
  est.level_max = level_max;
  est.level_slope = tail_log2_slope(running);
  est.diverging = any_bad || est.level_slope > kDivergenceSlope;
  return est;
}

}  // namespace berglab
