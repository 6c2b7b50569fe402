#include "berglab/carleson.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "berglab/norms.hpp"

namespace berglab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool rect_contains(const PolarRect& rect, cplx z) {
  const double m = std::abs(z);
  if (m < rect.r_lo || m >= rect.r_hi) return false;
  // The rect's angular interval may live outside (-pi, pi]; compare wrapped.
  const double half = 0.5 * (rect.theta_hi - rect.theta_lo);
  const double mid = 0.5 * (rect.theta_hi + rect.theta_lo);
  return angular_distance(std::arg(z), mid) <= half + 1e-15;
}
}  // namespace

DiscMeasure DiscMeasure::from_density(Weight w) {
  DiscMeasure mu;
  mu.density = std::move(w);
  return mu;
}

DiscMeasure DiscMeasure::from_atoms(std::vector<Atom> atoms) {
  DiscMeasure mu;
  for (const Atom& a : atoms)
    if (!(a.mass > 0.0))
      throw std::invalid_argument("DiscMeasure: atom masses must be positive");
  mu.atoms = std::move(atoms);
  return mu;
}

double measure_of(const DiscMeasure& mu, const PolarRect& rect) {
  double total = 0.0;
  if (mu.density) total += polar_mass(*mu.density, rect);
  for (const DiscMeasure::Atom& a : mu.atoms)
    if (rect_contains(rect, a.point.z)) total += a.mass;
  return total;
}

double measure_of(const DiscMeasure& mu, const CarlesonSquare& s) {
  return measure_of(mu, std::get<PolarRect>(region_of(s)));
}

double measure_of(const DiscMeasure& mu, const KTop& t) {
  return measure_of(mu, std::get<PolarRect>(region_of(t)));
}

double total_measure(const DiscMeasure& mu) {
  double total = 0.0;
  if (mu.density) total += total_mass(*mu.density);
  for (const DiscMeasure::Atom& a : mu.atoms) total += a.mass;
  return total;
}

ConstantEstimate carleson_constant(const DiscMeasure& mu, const Weight& w,
                                   double p, double q, const SquareFamily& family) {
  if (!(p > 0.0) || !(q >= p))
    throw std::invalid_argument("carleson_constant: need 0 < p <= q");
  const double e = q / p;
  const bool radial =
      w.radial && mu.atoms.empty() && (!mu.density || mu.density->radial);
  // Atoms can fall in the angular gaps of the dyadic family; their own
  // minimal covering squares join the index set.
  SquareFamily scanned = family;
  for (const DiscMeasure::Atom& atom : mu.atoms) {
    const double m = atom.point.modulus();
    if (!(m > 0.0)) continue;
    scanned.anchors.push_back(atom.point);
    const int level = static_cast<int>(
        std::clamp(std::round(-std::log2(1.0 - m)), 1.0,
                   static_cast<double>(family.depth)));
    scanned.levels.push_back(level);
  }
  return scan_family(scanned, radial, [&](const DiscPoint& a) {
    const CarlesonSquare s(a);
    const double denom = std::pow(square_mass(w, s), e);
    if (!(denom > 0.0)) return kInf;
    return measure_of(mu, s) / denom;
  });
}

ConstantEstimate embedding_lower_bound(const DiscMeasure& mu, const Weight& w,
                                       double p, double q, double gamma,
                                       const SquareFamily& family) {
  if (!(p > 0.0) || !(q >= p))
    throw std::invalid_argument("embedding_lower_bound: need 0 < p <= q");
  QuadratureSpec spec;
  spec.relative_tolerance = 1e-6;
  spec.nodes_per_cell = 16;
  const bool radial =
      w.radial && mu.atoms.empty() && (!mu.density || mu.density->radial);
  return scan_family(family, radial, [&](const DiscPoint& a) {
    const AnalyticFunction F = AnalyticFunction::kernel_power(a, gamma / p);
    double against_mu = 0.0;
    if (mu.density) {
      QuadratureSpec s = effective_spec(*mu.density, spec);
      for (const AngularGrading& g : F.concentrations())
        s.angular_grading.push_back(g);
      auto d = mu.density->density;
      against_mu += integrate(
                        whole_disc(),
                        [&F, d, q](cplx z) {
                          return std::pow(std::abs(F(z)), q) * d(z);
                        },
                        s)
                        .value;
    }
    for (const DiscMeasure::Atom& atom : mu.atoms)
      against_mu += atom.mass * std::pow(std::abs(F(atom.point.z)), q);
    const double denom = bergman_norm(F, w, p, spec);
    if (!(denom > 0.0)) return kInf;
    return std::pow(against_mu, 1.0 / q) / denom;
  });
}

VanishingProfile vanishing_profile(const DiscMeasure& mu, const Weight& w,
                                   double p, double q, int levels) {
  if (levels < 1)
    throw std::invalid_argument("vanishing_profile: levels must be >= 1");
  const SquareFamily family = SquareFamily::dyadic(levels);
  const ConstantEstimate est =
      carleson_constant(mu, w, p, q, family);  // fills per-level maxima
  VanishingProfile profile;
  for (int lev = 0; lev < levels; ++lev) {
    ProfileRow row;
    row.level = lev + 1;
    row.value = est.level_max[static_cast<std::size_t>(lev)];
    profile.rows.push_back(row);
  }
  std::vector<double> vals;
  for (const ProfileRow& r : profile.rows) vals.push_back(r.value);
  profile.tail_slope = tail_log2_slope(vals);
  const double last = vals.back();
  profile.vanishing =
      last == 0.0 || profile.tail_slope < -kDivergenceSlope;
  return profile;
}

struct MaximalEvaluator::State {
  std::mutex mtx;
  std::unordered_map<long long, double> family_avg;  // by anchor index
  std::unordered_map<long long, double> self_avg;    // by quantized point
};

MaximalEvaluator::MaximalEvaluator(std::function<double(cplx)> phi, Weight w,
                                   SquareFamily family, QuadratureSpec spec)
    : phi_(std::move(phi)),
      w_(std::move(w)),
      family_(std::move(family)),
      spec_(std::move(spec)),
      state_(std::make_shared<State>()) {
  spec_.relative_tolerance = std::max(spec_.relative_tolerance, 1e-6);
  spec_.nodes_per_cell = std::min(spec_.nodes_per_cell, 16);
}

double MaximalEvaluator::operator()(const DiscPoint& z) const {
  if (!(z.modulus() > 0.0))
    throw std::invalid_argument("hormander_maximal: no square contains the origin");
  auto average = [&](const CarlesonSquare& s) {
    const PolarRect rect = std::get<PolarRect>(region_of(s));
    QuadratureSpec spec = effective_spec(w_, spec_);
    auto phi = phi_;
    auto wd = w_.density;
    const double num =
        integrate(rect, [phi, wd](cplx u) { return std::abs(phi(u)) * wd(u); },
                  spec)
            .value;
    const double denom = polar_mass(w_, rect);
    return denom > 0.0 ? num / denom : 0.0;
  };
  double best = 0.0;
  for (std::size_t i = 0; i < family_.size(); ++i) {
    const CarlesonSquare s(family_.anchors[i]);
    if (!contains(s, z)) continue;
    double v;
    {
      std::lock_guard<std::mutex> lock(state_->mtx);
      auto it = state_->family_avg.find(static_cast<long long>(i));
      if (it != state_->family_avg.end()) {
        best = std::max(best, it->second);
        continue;
      }
    }
    v = average(s);
    {
      std::lock_guard<std::mutex> lock(state_->mtx);
      state_->family_avg.emplace(static_cast<long long>(i), v);
    }
    best = std::max(best, v);
  }
  const long long key = llround(z.z.real() * 1e10) * 2654435761ll +
                        llround(z.z.imag() * 1e10);
  {
    std::lock_guard<std::mutex> lock(state_->mtx);
    auto it = state_->self_avg.find(key);
    if (it != state_->self_avg.end()) return std::max(best, it->second);
  }
  const double self = average(CarlesonSquare(z));
  {
    std::lock_guard<std::mutex> lock(state_->mtx);
    state_->self_avg.emplace(key, self);
  }
  return std::max(best, self);
}

double hormander_maximal(const std::function<double(cplx)>& phi, const Weight& w,
                         const DiscPoint& z, const SquareFamily& family) {
  return MaximalEvaluator(phi, w, family)(z);
}

ConstantEstimate maximal_power_operator_constant(
    const Weight& w, double p, double q, double alpha, const DiscMeasure& mu,
    const SquareFamily& family, const std::vector<std::function<double(cplx)>>& probes) {
  if (!(p * alpha > 1.0))
    throw std::invalid_argument(
        "maximal_power_operator_constant: need p * alpha > 1");
  if (!(q >= p))
    throw std::invalid_argument("maximal_power_operator_constant: need p <= q");
  ConstantEstimate est;
  QuadratureSpec outer;
  outer.relative_tolerance = 1e-4;
  outer.nodes_per_cell = 8;
  outer.max_annuli = 18;
  outer.max_cells = 2000;
  for (const auto& phi : probes) {
    auto root = [phi, alpha](cplx z) {
      return std::pow(std::abs(phi(z)), 1.0 / alpha);
    };
    const MaximalEvaluator M(root, w, family, outer);
    double numerator_q = 0.0;
    if (mu.density) {
      auto d = mu.density->density;
      numerator_q = integrate(
                        whole_disc(),
                        [&M, d, alpha, q](cplx z) {
                          const double m = std::abs(z);
                          if (m <= 1e-6) return 0.0;
                          const double v = std::pow(M(DiscPoint(z)), alpha);
                          return std::pow(v, q) * d(z);
                        },
                        outer)
                        .value;
    }
    for (const DiscMeasure::Atom& atom : mu.atoms) {
      if (!(atom.point.modulus() > 0.0)) continue;
      numerator_q +=
          atom.mass * std::pow(std::pow(M(atom.point), alpha), q);
    }
    auto wd = w.density;
    const double denom_p = integrate(
                               whole_disc(),
                               [phi, wd, p](cplx z) {
                                 return std::pow(std::abs(phi(z)), p) * wd(z);
                               },
                               effective_spec(w, outer))
                               .value;
    ++est.samples;
    if (!(denom_p > 0.0)) continue;
    const double v = std::pow(numerator_q, 1.0 / q) / std::pow(denom_p, 1.0 / p);
    if (v > est.value) est.value = v;
  }
  return est;
}

ConstantEstimate pointwise_domination_check(const AnalyticFunction& f,
                                            const Weight& w, double s,
                                            const std::vector<DiscPoint>& grid,
                                            const SquareFamily& family) {
  if (!(s > 0.0))
    throw std::invalid_argument("pointwise_domination_check: s must be > 0");
  auto phi = [f, s](cplx z) { return std::pow(std::abs(f(z)), s); };
  const MaximalEvaluator M(phi, w, family);
  ConstantEstimate est;
  for (const DiscPoint& z : grid) {
    if (!(z.modulus() > 0.0)) continue;
    const double denom = M(z);
    ++est.samples;
    if (!(denom > 0.0)) continue;
    const double v = phi(z.z) / denom;
    if (v > est.value) {
      est.value = v;
      est.witness_anchor = z.z;
    }
  }
  return est;
}

}  // namespace berglab
