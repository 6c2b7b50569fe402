#include "berglab/functions.hpp"

#include <cmath>
#include <sstream>

namespace berglab {

namespace {
constexpr std::size_t kSymbolicNodeLimit = 4096;
constexpr int kCauchyNodes = 256;
}  // namespace

struct AnalyticFunction::Node {
  enum class Kind { Poly, PowLin, LogLin, Exp, Sum, Prod, Scale, CauchyD };
  Kind kind;
  // Poly: coeffs. PowLin: c * (1 - w z)^{-e}. LogLin: -log(1 - w z).
  // Exp: exp(s * child). Scale: c * child. CauchyD: child^{(k)} numerically.
  std::vector<cplx> coeffs;
  cplx w{0.0, 0.0};
  double e = 0.0;
  cplx c{0.0, 0.0};
  cplx s{0.0, 0.0};
  int k = 0;
  std::shared_ptr<const Node> left, right;
};

namespace {

using Node = AnalyticFunction::Node;
using NodePtr = std::shared_ptr<const Node>;

cplx eval(const Node& n, cplx z);

cplx eval_cauchy(const Node& f, int k, cplx z) {
  const double r = 0.5 * (1.0 - std::abs(z));
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  cplx acc{0.0, 0.0};
  for (int j = 0; j < kCauchyNodes; ++j) {
    const double phi = 2.0 * kPi * j / kCauchyNodes;
    acc += eval(f, z + std::polar(r, phi)) * std::polar(1.0, -k * phi);
  }
  return fact * acc / (static_cast<double>(kCauchyNodes) * std::pow(r, k));
}

cplx eval(const Node& n, cplx z) {
  switch (n.kind) {
    case Node::Kind::Poly: {
      cplx acc{0.0, 0.0};
      for (std::size_t i = n.coeffs.size(); i-- > 0;) acc = acc * z + n.coeffs[i];
      return acc;
    }
    case Node::Kind::PowLin: {
      const cplx base = 1.0 - n.w * z;  // Re > 0 on the disc, principal branch safe
      return n.c * std::exp(-n.e * std::log(base));
    }
    case Node::Kind::LogLin:
      return -std::log(1.0 - n.w * z);
    case Node::Kind::Exp:
      return std::exp(n.s * eval(*n.left, z));
    case Node::Kind::Sum:
      return eval(*n.left, z) + eval(*n.right, z);
    case Node::Kind::Prod:
      return eval(*n.left, z) * eval(*n.right, z);
    case Node::Kind::Scale:
      return n.c * eval(*n.left, z);
    case Node::Kind::CauchyD:
      return eval_cauchy(*n.left, n.k, z);
  }
  return {0.0, 0.0};
}

std::size_t count(const NodePtr& n) {
  if (!n) return 0;
  return 1 + count(n->left) + count(n->right);
}

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr diff(const NodePtr& n) {
  Node d;
  switch (n->kind) {
    case Node::Kind::Poly: {
      d.kind = Node::Kind::Poly;
      if (n->coeffs.size() > 1) {
        d.coeffs.resize(n->coeffs.size() - 1);
        for (std::size_t i = 1; i < n->coeffs.size(); ++i)
          d.coeffs[i - 1] = static_cast<double>(i) * n->coeffs[i];
      } else {
        d.coeffs = {cplx{0.0, 0.0}};
      }
      return make(std::move(d));
    }
    case Node::Kind::PowLin:
      d.kind = Node::Kind::PowLin;
      d.w = n->w;
      d.e = n->e + 1.0;
      d.c = n->c * n->e * n->w;
      return make(std::move(d));
    case Node::Kind::LogLin:
      d.kind = Node::Kind::PowLin;
      d.w = n->w;
      d.e = 1.0;
      d.c = n->w;
      return make(std::move(d));
    case Node::Kind::Exp: {
      Node prod;
      prod.kind = Node::Kind::Prod;
      Node sc;
      sc.kind = Node::Kind::Scale;
      sc.c = n->s;
      sc.left = diff(n->left);
      prod.left = make(std::move(sc));
      prod.right = n;
      return make(std::move(prod));
    }
    case Node::Kind::Sum:
      d.kind = Node::Kind::Sum;
      d.left = diff(n->left);
      d.right = diff(n->right);
      return make(std::move(d));
    case Node::Kind::Prod: {
      Node l;
      l.kind = Node::Kind::Prod;
      l.left = diff(n->left);
      l.right = n->right;
      Node r;
      r.kind = Node::Kind::Prod;
      r.left = n->left;
      r.right = diff(n->right);
      d.kind = Node::Kind::Sum;
      d.left = make(std::move(l));
      d.right = make(std::move(r));
      return make(std::move(d));
    }
    case Node::Kind::Scale:
      d.kind = Node::Kind::Scale;
      d.c = n->c;
      d.left = diff(n->left);
      return make(std::move(d));
    case Node::Kind::CauchyD:
      d.kind = Node::Kind::CauchyD;
      d.left = n->left;
      d.k = n->k + 1;
      return make(std::move(d));
  }
  return nullptr;
}

void collect_concentrations(const NodePtr& n, std::vector<AngularGrading>& out) {
  if (!n) return;
  if ((n->kind == Node::Kind::PowLin || n->kind == Node::Kind::LogLin) &&
      std::abs(n->w) >= 0.5) {
    // Kernel peaks toward the direction of a = conj(w).
    out.push_back(AngularGrading{std::arg(std::conj(n->w)),
                                 std::max(1.0 - std::abs(n->w), 1e-12) * 0.25});
  }
  collect_concentrations(n->left, out);
  collect_concentrations(n->right, out);
}

std::string describe(const NodePtr& n) {
  if (!n) return "0";
  std::ostringstream os;
  switch (n->kind) {
    case Node::Kind::Poly:
      os << "poly[deg " << (n->coeffs.empty() ? 0 : n->coeffs.size() - 1) << "]";
      break;
    case Node::Kind::PowLin:
      os << "powlin[w=" << n->w.real() << (n->w.imag() < 0 ? "-" : "+")
         << std::abs(n->w.imag()) << "i, e=" << n->e << "]";
      break;
    case Node::Kind::LogLin:
      os << "log_kernel[w=" << n->w.real() << (n->w.imag() < 0 ? "-" : "+")
         << std::abs(n->w.imag()) << "i]";
      break;
    case Node::Kind::Exp:
      os << "exp(" << describe(n->left) << ")";
      break;
    case Node::Kind::Sum:
      os << "(" << describe(n->left) << " + " << describe(n->right) << ")";
      break;
    case Node::Kind::Prod:
      os << "(" << describe(n->left) << " * " << describe(n->right) << ")";
      break;
    case Node::Kind::Scale:
      os << "scale(" << describe(n->left) << ")";
      break;
    case Node::Kind::CauchyD:
      os << "d^" << n->k << "(" << describe(n->left) << ")";
      break;
  }
  return os.str();
}

}  // namespace

AnalyticFunction::AnalyticFunction() {
  Node n;
  n.kind = Node::Kind::Poly;
  n.coeffs = {cplx{0.0, 0.0}};
  node_ = make(std::move(n));
}

cplx AnalyticFunction::operator()(cplx z) const { return eval(*node_, z); }

AnalyticFunction AnalyticFunction::derivative(int k) const {
  if (k < 1) throw std::invalid_argument("derivative: k must be >= 1");
  NodePtr cur = node_;
  for (int j = 0; j < k; ++j) {
    NodePtr next = diff(cur);
    if (count(next) > kSymbolicNodeLimit)
      return cauchy_derivative(AnalyticFunction(cur), k - j);
    cur = next;
  }
  return AnalyticFunction(cur);
}

std::string AnalyticFunction::label() const { return describe(node_); }

std::size_t AnalyticFunction::node_count() const { return count(node_); }

std::vector<AngularGrading> AnalyticFunction::concentrations() const {
  std::vector<AngularGrading> out;
  collect_concentrations(node_, out);
  return out;
}

AnalyticFunction AnalyticFunction::constant(cplx c) {
  Node n;
  n.kind = Node::Kind::Poly;
  n.coeffs = {c};
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<cplx> coefficients) {
  if (coefficients.empty()) coefficients = {cplx{0.0, 0.0}};
  Node n;
  n.kind = Node::Kind::Poly;
  n.coeffs = std::move(coefficients);
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::monomial(int n, cplx c) {
  if (n < 0) throw std::invalid_argument("monomial: n must be >= 0");
  std::vector<cplx> coeffs(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  coeffs.back() = c;
  return polynomial(std::move(coeffs));
}

AnalyticFunction AnalyticFunction::kernel_power(const DiscPoint& a, double exponent) {
  if (!(exponent > 0.0))
    throw std::invalid_argument("kernel_power: exponent must be > 0");
  Node n;
  n.kind = Node::Kind::PowLin;
  n.w = std::conj(a.z);
  n.e = exponent;
  n.c = std::pow(1.0 - std::norm(a.z), exponent);
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::log_kernel(cplx a) {
  if (std::abs(a) > 1.0 + 1e-14)
    throw std::invalid_argument("log_kernel: need |a| <= 1");
  Node n;
  n.kind = Node::Kind::LogLin;
  n.w = std::conj(a);
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::exp_of(const AnalyticFunction& inner, cplx scale) {
  Node n;
  n.kind = Node::Kind::Exp;
  n.s = scale;
  n.left = inner.node_;
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::scale(const AnalyticFunction& f, cplx c) {
  Node n;
  n.kind = Node::Kind::Scale;
  n.c = c;
  n.left = f.node_;
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::sum(const AnalyticFunction& f,
                                       const AnalyticFunction& g) {
  Node n;
  n.kind = Node::Kind::Sum;
  n.left = f.node_;
  n.right = g.node_;
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::product(const AnalyticFunction& f,
                                           const AnalyticFunction& g) {
  Node n;
  n.kind = Node::Kind::Prod;
  n.left = f.node_;
  n.right = g.node_;
  return AnalyticFunction(make(std::move(n)));
}

AnalyticFunction AnalyticFunction::cauchy_derivative(const AnalyticFunction& f, int k) {
  if (k < 1) throw std::invalid_argument("cauchy_derivative: k must be >= 1");
  Node n;
  n.kind = Node::Kind::CauchyD;
  n.k = k;
  n.left = f.node_;
  return AnalyticFunction(make(std::move(n)));
}

}  // namespace berglab
