#include "berglab/weights.hpp"

#include <cmath>
#include <limits>

namespace berglab {

namespace {

long long quantize(double x) { return llround(x * 1e10); }

struct RectKey {
  long long a, b, c, d;
  bool operator==(const RectKey&) const = default;
};

struct RectKeyHash {
  std::size_t operator()(const RectKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : {k.a, k.b, k.c, k.d}) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

struct Weight::Caches {
  std::mutex mtx;
  std::unordered_map<RectKey, double, RectKeyHash> rect_mass;
  std::unordered_map<long long, double> radial_mass;  // int_r^1 w(s) s ds
  std::unordered_map<long long, double> tail;         // int_r^1 w(s) ds
  std::unordered_map<RectKey, double, RectKeyHash> point;  // derived evaluators
};

Weight::Weight() : caches_(std::make_shared<Caches>()) {
  mass_spec.relative_tolerance = 1e-7;
  mass_spec.nodes_per_cell = 16;
}

void Weight::reset_caches() { caches_ = std::make_shared<Caches>(); }

namespace {

double cached(std::unordered_map<RectKey, double, RectKeyHash>& map,
              std::mutex& mtx, const RectKey& key,
              const std::function<double()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard<std::mutex> lock(mtx);
  map.emplace(key, v);  // idempotent: recomputation yields the same value
  return v;
}

double cached1(std::unordered_map<long long, double>& map, std::mutex& mtx,
               long long key, const std::function<double()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard<std::mutex> lock(mtx);
  map.emplace(key, v);
  return v;
}

// int_lo^hi w(s) s ds for a radial profile.
double radial_ring_integral(const Weight& w, double lo, double hi) {
  if (hi <= lo) return 0.0;
  QuadratureSpec spec = w.mass_spec;
  spec.relative_tolerance = std::min(spec.relative_tolerance, 1e-9);
  spec.nodes_per_cell = 32;
  auto up_to_one = [&](double r) {
    return cached1(w.caches()->radial_mass, w.caches()->mtx, quantize(r), [&]() {
      return integrate_line([&](double s) { return w.radial_profile(s) * s; }, r,
                            1.0, spec)
          .value;
    });
  };
  if (hi >= 1.0 - 1e-14) return up_to_one(lo);
  return up_to_one(lo) - up_to_one(hi);
}

double numeric_integrability_probe(const Weight& w) {
  QuadratureSpec spec;
  spec.relative_tolerance = 1e-5;
  spec.nodes_per_cell = 16;
  spec.angular_grading = w.angular_hints;
  if (w.has_profile()) {
    const IntegralResult r = integrate_line(
        [&](double s) { return w.radial_profile(s) * s; }, 0.0, 1.0, spec);
    return (r.converged || r.error_estimate < 0.1 * std::abs(r.value))
               ? 2.0 * r.value
               : std::numeric_limits<double>::infinity();
  }
  const IntegralResult r = integrate(whole_disc(), w.density, spec);
  return (r.converged || r.error_estimate < 0.1 * std::abs(r.value))
             ? r.value
             : std::numeric_limits<double>::infinity();
}

void require_integrable(const Weight& w, const char* who) {
  const double m = numeric_integrability_probe(w);
  if (!std::isfinite(m) || m < 0.0)
    throw std::invalid_argument(std::string(who) +
                                ": resulting weight is not integrable");
}

// Integral of |theta|^{q} over the principal wrap of [lo, hi], q > -1.
double principal_abs_power_integral(double lo, double hi, double q) {
  auto anti = [q](double t) {
    return (t >= 0 ? 1.0 : -1.0) * std::pow(std::abs(t), q + 1.0) / (q + 1.0);
  };
  auto on_principal = [&](double a, double b) { return anti(b) - anti(a); };
  double total = 0.0;
  // Split [lo, hi] at wrap points so each piece maps into [-pi, pi].
  double a = lo;
  while (a < hi - 1e-15) {
    double wa = wrap_angle(a);
    if (kPi - wa <= 1e-15) wa = -kPi;  // a sits exactly on the wrap point
    const double b = std::min(hi, a + (kPi - wa));
    total += on_principal(wa, wa + (b - a));
    a = b;
  }
  return total;
}

}  // namespace

Weight standard_weight(double alpha) {
  if (!(alpha > -1.0))
    throw std::invalid_argument("standard_weight: alpha must be > -1");
  Weight w;
  w.label = "standard(alpha=" + std::to_string(alpha) + ")";
  w.radial = true;
  w.density = [alpha](cplx z) {
    return (alpha + 1.0) * std::pow(1.0 - std::norm(z), alpha);
  };
  w.radial_profile = [alpha](double s) {
    return (alpha + 1.0) * std::pow(1.0 - s * s, alpha);
  };
  w.boundary_exponent = alpha;
  return w;
}

Weight radial_power_weight(double alpha) {
  if (!(alpha > -1.0))
    throw std::invalid_argument("radial_power_weight: alpha must be > -1");
  Weight w;
  w.label = "radial_power(alpha=" + std::to_string(alpha) + ")";
  w.radial = true;
  w.density = [alpha](cplx z) { return std::pow(1.0 - std::abs(z), alpha); };
  w.radial_profile = [alpha](double s) { return std::pow(1.0 - s, alpha); };
  w.tail_closed = [alpha](double r) {
    return std::pow(1.0 - r, alpha + 1.0) / (alpha + 1.0);
  };
  w.pure_power_alpha = alpha;
  w.boundary_exponent = alpha;
  return w;
}

Weight exp_radial_weight(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("exp_radial_weight: c must be > 0");
  Weight w;
  w.label = "exp_radial(c=" + std::to_string(c) + ")";
  w.radial = true;
  w.density = [c](cplx z) { return std::exp(-c / (1.0 - std::abs(z))); };
  w.radial_profile = [c](double s) { return std::exp(-c / (1.0 - s)); };
  return w;
}

Weight spiral_w_weight(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("spiral_w_weight: eps must lie in (0,1)");
  Weight w;
  w.label = "spiral_w(eps=" + std::to_string(eps) + ")";
  w.radial = false;
  const double q = eps / 2.0 - 1.0;
  w.density = [q](cplx z) {
    const double theta = std::arg(z);
    if (theta == 0.0) return 1.0;  // value on the positive real ray
    return std::pow(1.0 - std::abs(z), q) * std::pow(std::abs(theta), q);
  };
  // Separable closed form: the radial and angular factors integrate
  // independently over any polar rectangle.
  w.rect_mass_closed = [q](const PolarRect& rect) {
    auto radial_anti = [q](double r) {
      // -d/dr of int (1-s)^q s ds evaluated via u = 1-s
      const double u = 1.0 - r;
      return std::pow(u, q + 1.0) / (q + 1.0) -
             std::pow(u, q + 2.0) / (q + 2.0);
    };
    const double radial = radial_anti(rect.r_lo) - radial_anti(rect.r_hi);
    const double angular =
        principal_abs_power_integral(rect.theta_lo, rect.theta_hi, q);
    return radial * angular / kPi;
  };
  w.boundary_exponent = q;
  w.angular_hints = {AngularGrading{0.0, 1e-6}};
  return w;
}

Weight stolz_indicator_weight() {
  Weight w;
  w.label = "stolz_indicator";
  w.radial = false;
  w.density = [](cplx z) {
    return angular_distance(std::arg(z), 0.0) < 0.5 * (1.0 - std::abs(z)) ? 0.0
                                                                          : 1.0;
  };
  // area of the rectangle minus its overlap with the nontangential region.
  w.rect_mass_closed = [](const PolarRect& rect) {
    const double area = (rect.theta_hi - rect.theta_lo) *
                        (rect.r_hi * rect.r_hi - rect.r_lo * rect.r_lo) /
                        (2.0 * kPi);
    // Overlap arc length at radius r: |[t0,t1] cap (-(1-r)/2, (1-r)/2)|,
    // accumulated over principal wraps of the arc.
    auto overlap_len = [&](double r) {
      const double g = 0.5 * (1.0 - r);
      double len = 0.0;
      double a = rect.theta_lo;
      while (a < rect.theta_hi - 1e-15) {
        double wa = wrap_angle(a);
        if (kPi - wa <= 1e-15) wa = -kPi;
        const double b = std::min(rect.theta_hi, a + (kPi - wa));
        const double u0 = wa, u1 = wa + (b - a);
        len += std::max(0.0, std::min(u1, g) - std::max(u0, -g));
        a = b;
      }
      return len;
    };
    // Piecewise polynomial in r: split at radii where the clamp switches.
    std::vector<double> cuts{rect.r_lo, rect.r_hi};
    auto add_cut = [&](double u) {
      const double r = 1.0 - 2.0 * std::abs(u);
      if (r > rect.r_lo + 1e-15 && r < rect.r_hi - 1e-15) cuts.push_back(r);
    };
    double a = rect.theta_lo;
    while (a < rect.theta_hi - 1e-15) {
      double wa = wrap_angle(a);
      if (kPi - wa <= 1e-15) wa = -kPi;
      const double b = std::min(rect.theta_hi, a + (kPi - wa));
      add_cut(wa);
      add_cut(wa + (b - a));
      a = b;
    }
    std::sort(cuts.begin(), cuts.end());
    const auto& [xs, ws] = gauss_legendre(4);  // exact for the cubic pieces
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double m = 0.5 * (cuts[i] + cuts[i + 1]);
      const double h = 0.5 * (cuts[i + 1] - cuts[i]);
      if (h <= 0.0) continue;
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) {
        const double r = m + h * xs[j];
        acc += ws[j] * r * overlap_len(r);
      }
      mass += h * acc;
    }
    return area - mass / kPi;
  };
  return w;
}

Weight custom_weight(std::string label, std::function<double(cplx)> density,
                     bool radial, std::function<double(double)> profile) {
  Weight w;
  w.label = std::move(label);
  w.radial = radial;
  w.density = std::move(density);
  if (radial && !profile) {
    auto d = w.density;
    profile = [d](double s) { return d(cplx(s, 0.0)); };
  }
  w.radial_profile = std::move(profile);
  require_integrable(w, "custom_weight");
  return w;
}

Weight beta_shift(const Weight& w, double beta) {
  Weight out;
  out.label = "beta_shift(" + w.label + ", beta=" + std::to_string(beta) + ")";
  out.radial = w.radial;
  auto base = w.density;
  out.density = [base, beta](cplx z) {
    return std::pow(1.0 - std::abs(z), beta) * base(z);
  };
  if (w.has_profile()) {
    auto prof = w.radial_profile;
    out.radial_profile = [prof, beta](double s) {
      return std::pow(1.0 - s, beta) * prof(s);
    };
  }
  if (w.pure_power_alpha) {
    const double a = *w.pure_power_alpha + beta;
    if (a > -1.0) {
      out.pure_power_alpha = a;
      out.tail_closed = [a](double r) {
        return std::pow(1.0 - r, a + 1.0) / (a + 1.0);
      };
    }
  }
  if (w.boundary_exponent) out.boundary_exponent = *w.boundary_exponent + beta;
  out.angular_hints = w.angular_hints;
  require_integrable(out, "beta_shift");
  return out;
}

Weight tilde_average(const Weight& w) {
  Weight out;
  out.label = "tilde(" + w.label + ")";
  out.radial = w.radial;
  Weight base = w;  // copy shares caches; masses are reused across evaluations
  const bool radial = w.radial;
  out.density = [base, radial](cplx z) {
    double m = std::abs(z);
    double arg = radial ? 0.0 : std::arg(z);
    if (m < 0.01) m = 0.01;  // convention below |z| = 0.01
    const double mass = square_mass(base, CarlesonSquare(m, arg));
    const double u = 1.0 - m;
    return mass / (u * u);
  };
  if (radial) {
    out.radial_profile = [d = out.density](double s) { return d(cplx(s, 0.0)); };
  }
  out.boundary_exponent = w.boundary_exponent;
  out.angular_hints = w.angular_hints;
  return out;
}

Weight horizontal_average(const Weight& w, double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("horizontal_average: r must lie in (0,1)");
  Weight out;
  out.label = "horizontal(" + w.label + ", r=" + std::to_string(r) + ")";
  out.radial = w.radial;
  Weight base = w;
  const bool radial = w.radial;
  auto caches = out.caches();
  out.density = [base, radial, r, caches](cplx z) {
    const cplx zc = radial ? cplx(std::abs(z), 0.0) : z;
    const RectKey key{quantize(zc.real()), quantize(zc.imag()), 0, 0};
    return cached(caches->point, caches->mtx, key, [&]() {
      const PseudoDisc d(DiscPoint(zc), r);
      QuadratureSpec spec = effective_spec(base, base.mass_spec);
      const double mass = integrate(region_of(d), base.density, spec).value;
      const double u = 1.0 - std::abs(zc);
      return mass / (u * u);
    });
  };
  if (radial) {
    out.radial_profile = [d = out.density](double s) { return d(cplx(s, 0.0)); };
  }
  out.boundary_exponent = w.boundary_exponent;
  out.angular_hints = w.angular_hints;
  return out;
}

Weight exponential_twist(const Weight& w, const AnalyticFunction& g, cplx lambda,
                         double p) {
  if (std::abs(lambda) == 0.0)
    throw std::invalid_argument("exponential_twist: lambda must be nonzero");
  if (!(p > 0.0)) throw std::invalid_argument("exponential_twist: p must be > 0");
  Weight out;
  out.label = "exp_twist(" + w.label + ")";
  out.radial = false;
  auto base = w.density;
  out.density = [base, g, lambda, p](cplx z) {
    return base(z) * std::exp(p * std::real(g(z) / lambda));
  };
  out.boundary_exponent = w.boundary_exponent;
  out.angular_hints = w.angular_hints;
  for (const AngularGrading& h : g.concentrations()) out.angular_hints.push_back(h);
  require_integrable(out, "exponential_twist");
  return out;
}

Weight product_weight(const Weight& a, const Weight& b) {
  Weight out;
  out.label = "product(" + a.label + ", " + b.label + ")";
  out.radial = a.radial && b.radial;
  auto da = a.density, db = b.density;
  out.density = [da, db](cplx z) { return da(z) * db(z); };
  if (out.radial && a.has_profile() && b.has_profile()) {
    auto pa = a.radial_profile, pb = b.radial_profile;
    out.radial_profile = [pa, pb](double s) { return pa(s) * pb(s); };
  }
  if (a.boundary_exponent || b.boundary_exponent)
    out.boundary_exponent =
        a.boundary_exponent.value_or(0.0) + b.boundary_exponent.value_or(0.0);
  out.angular_hints = a.angular_hints;
  for (const AngularGrading& h : b.angular_hints) out.angular_hints.push_back(h);
  require_integrable(out, "product_weight");
  return out;
}

Weight scale_weight(const Weight& w, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_weight: c must be > 0");
  Weight out;
  out.label = "scale(" + w.label + ", " + std::to_string(c) + ")";
  out.radial = w.radial;
  auto d = w.density;
  out.density = [d, c](cplx z) { return c * d(z); };
  if (w.has_profile()) {
    auto prof = w.radial_profile;
    out.radial_profile = [prof, c](double s) { return c * prof(s); };
  }
  if (w.tail_closed) {
    auto t = w.tail_closed;
    out.tail_closed = [t, c](double r) { return c * t(r); };
  }
  if (w.rect_mass_closed) {
    auto m = w.rect_mass_closed;
    out.rect_mass_closed = [m, c](const PolarRect& rect) { return c * m(rect); };
  }
  out.boundary_exponent = w.boundary_exponent;
  out.angular_hints = w.angular_hints;
  return out;
}

Weight quotient_weight(const Weight& a, const Weight& b) {
  Weight out;
  out.label = "quotient(" + a.label + ", " + b.label + ")";
  out.radial = a.radial && b.radial;
  auto da = a.density, db = b.density;
  out.density = [da, db](cplx z) { return da(z) / db(z); };
  if (out.radial && a.has_profile() && b.has_profile()) {
    auto pa = a.radial_profile, pb = b.radial_profile;
    out.radial_profile = [pa, pb](double s) { return pa(s) / pb(s); };
  }
  if (a.boundary_exponent || b.boundary_exponent)
    out.boundary_exponent =
        a.boundary_exponent.value_or(0.0) - b.boundary_exponent.value_or(0.0);
  out.angular_hints = a.angular_hints;
  for (const AngularGrading& h : b.angular_hints) out.angular_hints.push_back(h);
  return out;
}

double tail_integral(const Weight& w, double r) {
  if (!w.radial || !w.has_profile())
    throw std::domain_error("tail_integral: weight is not radial");
  if (!(r >= 0.0) || !(r < 1.0))
    throw std::invalid_argument("tail_integral: r must lie in [0,1)");
  if (w.tail_closed) return w.tail_closed(r);
  return cached1(w.caches()->tail, w.caches()->mtx, quantize(r), [&]() {
    QuadratureSpec spec = w.mass_spec;
    spec.relative_tolerance = std::min(spec.relative_tolerance, 1e-11);
    spec.nodes_per_cell = 32;
    return integrate_line(w.radial_profile, r, 1.0, spec).value;
  });
}

double polar_mass(const Weight& w, const PolarRect& rect) {
  const RectKey key{quantize(rect.r_lo), quantize(rect.r_hi),
                    quantize(rect.theta_lo), quantize(rect.theta_hi)};
  return cached(w.caches()->rect_mass, w.caches()->mtx, key, [&]() -> double {
    if (w.rect_mass_closed) return w.rect_mass_closed(rect);
    if (w.radial && w.has_profile())
      return (rect.theta_hi - rect.theta_lo) / kPi *
             radial_ring_integral(w, rect.r_lo, rect.r_hi);
    QuadratureSpec spec = effective_spec(w, w.mass_spec);
    return integrate(rect, w.density, spec).value;
  });
}

double square_mass(const Weight& w, const CarlesonSquare& s) {
  return polar_mass(w, std::get<PolarRect>(region_of(s)));
}

double total_mass(const Weight& w) {
  if (w.radial && w.has_profile()) return 2.0 * radial_ring_integral(w, 0.0, 1.0);
  return polar_mass(w, std::get<PolarRect>(whole_disc()));
}

QuadratureSpec effective_spec(const Weight& w, QuadratureSpec base) {
  for (const AngularGrading& h : w.angular_hints) base.angular_grading.push_back(h);
  if (w.boundary_exponent && !base.boundary_exponent_hint)
    base.boundary_exponent_hint = w.boundary_exponent;
  return base;
}

}  // namespace berglab
