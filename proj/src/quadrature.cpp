#include "berglab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace berglab {

namespace {

constexpr double kTiny = 1e-300;

int clamp_even(int n, int lo, int hi) {
  n = std::clamp(n, lo, hi);
  if (n % 2 != 0) ++n;
  return n;
}

bool reaches_boundary(const PolarRect& r) { return r.r_hi >= 1.0 - 1e-14; }

// Radial band edges: each band halves the remaining gap to 1, so the mesh
// refines dyadically toward the boundary.
std::vector<double> radial_edges(double lo, double hi, int max_annuli) {
  std::vector<double> edges{lo};
  const bool to_one = hi >= 1.0 - 1e-14;
  double cur = lo;
  for (int k = 0; k < max_annuli; ++k) {
    double next = cur + 0.5 * (1.0 - cur);
    if (!to_one && next >= hi) break;
    if (next <= cur) break;  // ran out of double resolution near 1
    edges.push_back(next);
    cur = next;
  }
  if (!to_one) edges.push_back(hi);
  return edges;
}

std::vector<double> angular_edges(double lo, double hi,
                                  const std::vector<AngularGrading>& grading) {
  std::vector<double> edges;
  const double width = hi - lo;
  const int base = std::max(1, static_cast<int>(std::ceil(width / (0.5 * kPi))));
  for (int i = 0; i <= base; ++i)
    edges.push_back(lo + width * static_cast<double>(i) / base);
  for (const AngularGrading& g : grading) {
    for (int wrap = -1; wrap <= 1; ++wrap) {
      const double t = g.theta + 2.0 * kPi * wrap;
      if (t <= lo || t >= hi) continue;
      const double span = std::max(hi - t, t - lo);
      const int levels = std::clamp(
          static_cast<int>(std::ceil(std::log2(span / std::max(g.scale, 1e-12)))), 0, 16);
      edges.push_back(t);
      double h = span;
      for (int j = 0; j < levels; ++j) {
        h *= 0.5;
        if (t + h < hi) edges.push_back(t + h);
        if (t - h > lo) edges.push_back(t - h);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  for (double e : edges) {
    if (out.empty() || e - out.back() > 1e-13 * std::max(1.0, std::abs(e)))
      out.push_back(e);
  }
  if (out.size() < 2) out = {lo, hi};
  out.front() = lo;
  out.back() = hi;
  return out;
}

struct Cell {
  double a0, a1;  // radial (or local-rho) extent
  double b0, b1;  // angular extent
  int depth = 0;
  int band = -1;  // index of the originating radial band, -1 after splits
  double value = 0.0;
  double error = 0.0;
  bool finite = true;
};

struct CellWorse {
  bool operator()(const Cell& x, const Cell& y) const { return x.error < y.error; }
};

// f2 maps (radial coordinate, angular coordinate) -> integrand including the
// Jacobian and the 1/pi normalisation.
using MappedIntegrand = std::function<double(double, double)>;

void eval_rule(Cell& c, const MappedIntegrand& f, int n, double& coarse) {
  const auto& [xs, ws] = gauss_legendre(n);
  const auto& [xc, wc] = gauss_legendre(n / 2);
  const double ma = 0.5 * (c.a0 + c.a1), ha = 0.5 * (c.a1 - c.a0);
  const double mb = 0.5 * (c.b0 + c.b1), hb = 0.5 * (c.b1 - c.b0);
  double fine = 0.0;
  bool ok = true;
  for (int i = 0; i < n && ok; ++i) {
    const double a = ma + ha * xs[i];
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = f(a, mb + hb * xs[j]);
      if (!std::isfinite(v)) {
        ok = false;
        fine = v;
        break;
      }
      row += ws[j] * v;
    }
    if (ok) fine += ws[i] * row;
  }
  coarse = 0.0;
  if (ok) {
    for (std::size_t i = 0; i < xc.size(); ++i) {
      const double a = ma + ha * xc[i];
      double row = 0.0;
      for (std::size_t j = 0; j < xc.size(); ++j) {
        const double v = f(a, mb + hb * xc[j]);
        if (!std::isfinite(v)) {
          ok = false;
          break;
        }
        row += wc[j] * v;
      }
      if (!ok) break;
      coarse += wc[i] * row;
    }
  }
  const double jac = ha * hb;
  c.value = fine * jac;
  c.finite = ok && std::isfinite(c.value);
  c.error = c.finite ? std::abs(c.value - coarse * jac)
                     : std::numeric_limits<double>::infinity();
}

IntegralResult run_cells(std::vector<Cell> initial, const MappedIntegrand& f,
                         const QuadratureSpec& spec, bool to_boundary,
                         int n_bands) {
  const int n = clamp_even(spec.nodes_per_cell, 4, 64);
  IntegralResult res;
  std::priority_queue<Cell, std::vector<Cell>, CellWorse> active;
  double total = 0.0, err = 0.0, frozen_err = 0.0;
  std::vector<double> band_sums(std::max(n_bands, 0), 0.0);

  for (Cell& c : initial) {
    double coarse;
    eval_rule(c, f, n, coarse);
    ++res.cells_used;
    if (!c.finite) {
      res.value = c.value;
      res.error_estimate = std::numeric_limits<double>::infinity();
      res.converged = false;
      return res;
    }
    total += c.value;
    err += c.error;
    if (c.band >= 0 && c.band < n_bands) band_sums[c.band] += c.value;
    active.push(c);
  }

  // Geometric tail beyond the deepest band when the region reaches r = 1.
  double tail = 0.0, tail_err = 0.0;
  bool tail_ok = true;
  if (to_boundary && n_bands >= 3) {
    const double v0 = band_sums[n_bands - 3];
    const double v1 = band_sums[n_bands - 2];
    const double v2 = band_sums[n_bands - 1];
    if (std::abs(v2) > 1e-14 * std::abs(total) && std::abs(v2) > kTiny) {
      const double q1 = (std::abs(v1) > kTiny) ? v2 / v1 : 0.0;
      const double q0 = (std::abs(v0) > kTiny) ? v1 / v0 : 0.0;
      if (q1 > 0.0 && q1 < 0.95) {
        tail = v2 * q1 / (1.0 - q1);
        // Exact for geometric band decay; the drift term covers curvature
        // in the ratio and roundoff noise in the deepest bands.
        tail_err =
            std::abs(tail) * (3.0 * std::abs(q1 - q0) / (1.0 - q1) + 1e-6);
      } else {
        // Band masses not contracting: the boundary singularity is too
        // strong to extrapolate. Report the last band as unresolved.
        tail_ok = false;
        tail_err = 10.0 * std::abs(v2);
      }
    }
  }

  const auto target = [&](double t, double e) {
    return e <= spec.relative_tolerance * std::max(std::abs(t), kTiny) + kTiny;
  };

  while (!active.empty() && res.cells_used < spec.max_cells) {
    if (target(total + tail, err + frozen_err + tail_err)) break;
    // Splitting cells cannot reduce the tail or frozen contributions.
    if (tail_err + frozen_err >
        spec.relative_tolerance * std::max(std::abs(total + tail), kTiny))
      break;
    Cell top = active.top();
    active.pop();
    if (top.error <= 0.0) break;
    if (top.depth >= spec.max_subdivision_depth) {
      frozen_err += top.error;
      err -= top.error;
      continue;
    }
    total -= top.value;
    err -= top.error;
    const double am = 0.5 * (top.a0 + top.a1);
    const double bm = 0.5 * (top.b0 + top.b1);
    const Cell quads[4] = {
        {top.a0, am, top.b0, bm, top.depth + 1},
        {top.a0, am, bm, top.b1, top.depth + 1},
        {am, top.a1, top.b0, bm, top.depth + 1},
        {am, top.a1, bm, top.b1, top.depth + 1},
    };
    for (Cell c : quads) {
      double coarse;
      eval_rule(c, f, n, coarse);
      ++res.cells_used;
      if (!c.finite) {
        res.value = c.value;
        res.error_estimate = std::numeric_limits<double>::infinity();
        res.converged = false;
        return res;
      }
      total += c.value;
      err += c.error;
      active.push(c);
    }
  }

  res.value = total + tail;
  res.error_estimate = err + frozen_err + tail_err;
  res.converged = tail_ok && target(res.value, res.error_estimate);
  return res;
}

IntegralResult integrate_polar(const PolarRect& rect, const RealIntegrand& f,
                               const QuadratureSpec& spec) {
  if (!(rect.r_hi > rect.r_lo) || !(rect.theta_hi > rect.theta_lo) ||
      rect.r_lo < 0.0 || rect.theta_hi - rect.theta_lo > 2.0 * kPi + 1e-12)
    throw std::invalid_argument("integrate: empty or invalid polar region");
  const bool to_one = reaches_boundary(rect);
  const std::vector<double> redges =
      radial_edges(rect.r_lo, rect.r_hi, spec.max_annuli);
  const std::vector<double> tedges =
      angular_edges(rect.theta_lo, rect.theta_hi, spec.angular_grading);
  std::vector<Cell> cells;
  const int n_bands = static_cast<int>(redges.size()) - 1;
  for (int i = 0; i < n_bands; ++i)
    for (std::size_t j = 0; j + 1 < tedges.size(); ++j)
      cells.push_back(Cell{redges[i], redges[i + 1], tedges[j], tedges[j + 1], 0,
                           i});
  const MappedIntegrand mapped = [&f](double r, double t) {
    return f(std::polar(r, t)) * r / kPi;
  };
  return run_cells(std::move(cells), mapped, spec, to_one, n_bands);
}

IntegralResult integrate_disc(const DiscArea& d, const RealIntegrand& f,
                              const QuadratureSpec& spec) {
  if (!(d.radius > 0.0))
    throw std::invalid_argument("integrate: empty disc region");
  // Local polar coordinates about the centre, rho graded toward the rim
  // (where a boundary-singular weight is largest).
  std::vector<double> redges{0.0};
  double cur = 0.0;
  const int bands = std::min(spec.max_annuli, 24);
  for (int k = 0; k < bands - 1; ++k) {
    cur = d.radius - 0.5 * (d.radius - cur);
    redges.push_back(cur);
  }
  redges.push_back(d.radius);
  std::vector<double> tedges = angular_edges(-kPi, kPi, {});
  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < redges.size(); ++i)
    for (std::size_t j = 0; j + 1 < tedges.size(); ++j)
      cells.push_back(Cell{redges[i], redges[i + 1], tedges[j], tedges[j + 1], 0, -1});
  const cplx c = d.center;
  const MappedIntegrand mapped = [&f, c](double rho, double phi) {
    return f(c + std::polar(rho, phi)) * rho / kPi;
  };
  return run_cells(std::move(cells), mapped, spec, false, 0);
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0, p1;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      const double dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
    }
    const double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  auto [pos, inserted] = cache.emplace(n, std::make_pair(std::move(x), std::move(w)));
  (void)inserted;
  return pos->second;
}

Region whole_disc() { return PolarRect{0.0, 1.0, -kPi, kPi}; }

Region region_of(const CarlesonSquare& s) {
  const double h = s.angular_half_width();
  return PolarRect{s.radial_lo(), 1.0, s.anchor_argument() - h,
                   s.anchor_argument() + h};
}

Region region_of(const KTop& t) {
  const double h = t.parent.angular_half_width();
  return PolarRect{t.radial_lo(), t.radial_hi(),
                   t.parent.anchor_argument() - h, t.parent.anchor_argument() + h};
}

Region region_of(const PseudoDisc& d) {
  return DiscArea{d.euclidean_center(), d.euclidean_radius()};
}

Region square_minus_ktop(const CarlesonSquare& s, double K) {
  if (!(K > 1.0)) throw std::invalid_argument("square_minus_ktop: K must be > 1");
  const double h = s.angular_half_width();
  return PolarRect{1.0 - (1.0 - s.anchor_modulus()) / K, 1.0,
                   s.anchor_argument() - h, s.anchor_argument() + h};
}

Region square_outside_radius(const CarlesonSquare& s, double t) {
  if (!(t >= s.anchor_modulus()) || !(t < 1.0))
    throw std::invalid_argument("square_outside_radius: need |a| <= t < 1");
  const double h = s.angular_half_width();
  return PolarRect{t, 1.0, s.anchor_argument() - h, s.anchor_argument() + h};
}

IntegralResult integrate(const Region& region, const RealIntegrand& f,
                         const QuadratureSpec& spec) {
  if (std::holds_alternative<PolarRect>(region))
    return integrate_polar(std::get<PolarRect>(region), f, spec);
  return integrate_disc(std::get<DiscArea>(region), f, spec);
}

SegmentResult integrate_segment(cplx z_end, const ComplexIntegrand& h,
                                const QuadratureSpec& spec) {
  SegmentResult res;
  if (std::abs(z_end) == 0.0) {
    res.converged = true;
    return res;
  }
  const auto& [xs, ws] = gauss_legendre(16);
  const auto panels_value = [&](int m) {
    cplx sum{0.0, 0.0};
    for (int p = 0; p < m; ++p) {
      const double lo = static_cast<double>(p) / m;
      const double hi = static_cast<double>(p + 1) / m;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      cplx acc{0.0, 0.0};
      for (int i = 0; i < 16; ++i) acc += ws[i] * h((mid + half * xs[i]) * z_end);
      sum += half * acc;
    }
    return sum * z_end;
  };
  cplx prev = panels_value(2);
  for (int m = 4; m <= 4096; m *= 2) {
    const cplx cur = panels_value(m);
    const double err = std::abs(cur - prev);
    if (err <= spec.relative_tolerance * std::max(std::abs(cur), kTiny) + 1e-15) {
      res.value = cur;
      res.error_estimate = err;
      res.converged = true;
      return res;
    }
    prev = cur;
    res.value = cur;
    res.error_estimate = err;
  }
  res.converged = false;
  return res;
}

IntegralResult integrate_line(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec) {
  if (!(hi > lo)) throw std::invalid_argument("integrate_line: empty interval");
  const bool to_one = hi >= 1.0 - 1e-14;
  const std::vector<double> edges = radial_edges(lo, hi, spec.max_annuli);
  std::vector<Cell> cells;
  const int n_bands = static_cast<int>(edges.size()) - 1;
  for (int i = 0; i < n_bands; ++i)
    cells.push_back(Cell{edges[i], edges[i + 1], 0.0, 1.0, 0, i});
  // Degenerate second axis: constant in the b coordinate.
  const MappedIntegrand mapped = [&f](double s, double) { return f(s); };
  QuadratureSpec s1 = spec;
  s1.max_subdivision_depth = std::max(spec.max_subdivision_depth, 10);
  return run_cells(std::move(cells), mapped, s1, to_one, n_bands);
}

}  // namespace berglab
