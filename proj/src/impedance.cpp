#include "hyperpos/impedance.hpp"

#include <algorithm>
#include <cmath>

#include "hyperpos/errors.hpp"
#include "hyperpos/function_classes.hpp"

namespace hyperpos {

namespace {

using Poly = std::vector<double>;

double max_abs(const Poly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  return m;
}

Poly trim(Poly p, double tol) {
  while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
  return p;
}

bool is_zero(const Poly& p, double tol) { return p.size() == 1 && std::abs(p[0]) <= tol; }

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

// Quotient and remainder of a / b.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return {Poly{0.0}, a};
  Poly q(a.size() - b.size() + 1, 0.0);
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    double c = a[k] / b[db];
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  a.resize(std::max(db, 1));
  return {q, a};
}

Poly gcd(Poly a, Poly b, double tol) {
  a = trim(a, tol);
  b = trim(b, tol);
  while (!is_zero(b, tol)) {
    Poly r = trim(divmod(a, b).second, tol);
    a = b;
    b = r;
  }
  return a;
}

RationalFunction reduce(Poly num, Poly den) {
  double scale = std::max(max_abs(num), max_abs(den));
  double tol = 1e-10 * scale;
  num = trim(num, tol);
  den = trim(den, tol);
  Poly g = gcd(num, den, tol);
  if (g.size() > 1) {
    num = trim(divmod(num, g).first, tol);
    den = trim(divmod(den, g).first, tol);
  }
  double lead = den.back();
  for (double& c : num) c /= lead;
  for (double& c : den) c /= lead;
  return {num, den};
}

RationalFunction sum(const RationalFunction& x, const RationalFunction& y) {
  return reduce(add(mul(x.num, y.den), mul(y.num, x.den)), mul(x.den, y.den));
}

RationalFunction reciprocal(const RationalFunction& x) { return reduce(x.den, x.num); }

}  // namespace

cplx RationalFunction::operator()(cplx s) const {
  auto horner = [s](const Poly& p) {
    cplx acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
    return acc;
  };
  return horner(num) / horner(den);
}

void ImpedanceTree::validate() const {
  switch (kind) {
    case Kind::Resistor:
    case Kind::Inductor:
    case Kind::Capacitor:
      if (!(value > 0.0) || !std::isfinite(value)) throw Error(ErrorKind::Range, "element values must be positive");
      return;
    case Kind::Series:
    case Kind::Parallel:
      if (children.empty()) throw Error(ErrorKind::Range, "composite node needs at least one child");
      for (const auto& c : children) c.validate();
      return;
  }
}

RationalFunction impedance_function(const ImpedanceTree& tree) {
  switch (tree.kind) {
    case ImpedanceTree::Kind::Resistor: return {{tree.value}, {1.0}};
    case ImpedanceTree::Kind::Inductor: return {{0.0, tree.value}, {1.0}};
    case ImpedanceTree::Kind::Capacitor: return {{1.0 / tree.value}, {0.0, 1.0}};
    case ImpedanceTree::Kind::Series: {
      RationalFunction acc = impedance_function(tree.children.front());
      for (size_t i = 1; i < tree.children.size(); ++i) acc = sum(acc, impedance_function(tree.children[i]));
      return acc;
    }
    case ImpedanceTree::Kind::Parallel: {
      RationalFunction acc = reciprocal(impedance_function(tree.children.front()));
      for (size_t i = 1; i < tree.children.size(); ++i) acc = sum(acc, reciprocal(impedance_function(tree.children[i])));
      return reciprocal(acc);
    }
  }
  throw Error(ErrorKind::Parse, "unknown impedance node");
}

Realization realize_rational(const RationalFunction& f) {
  const int n = f.degree();
  if (static_cast<int>(f.num.size()) - 1 > n)
    throw Error(ErrorKind::Improper, "impedance grows without bound at high frequency (improper); no state-space realization");
  double d = static_cast<int>(f.num.size()) - 1 == n ? f.num.back() : 0.0;
  Matrix a = Matrix::Zero(n, n), b = Matrix::Zero(n, 1), c = Matrix::Zero(1, n), dd(1, 1);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) {
    a(n - 1, j) = -f.den[j];
    double nj = j < static_cast<int>(f.num.size()) ? f.num[j] : 0.0;
    c(0, j) = nj - d * f.den[j];
  }
  if (n > 0) b(n - 1, 0) = 1.0;
  dd(0, 0) = d;
  return Realization(a, b, c, dd);
}

Realization build_impedance(const ImpedanceTree& tree) {
  tree.validate();
  Realization r = realize_rational(impedance_function(tree));
  if (r.n() > 0 && poles(r).hurwitz && pbh_test(r).minimal()) return balance(r).realization;
  return r;
}

ImpedanceTree rc_circuit(double r1, double r2, double cap) {
  return ImpedanceTree::series({ImpedanceTree::resistor(r1),
                                ImpedanceTree::parallel({ImpedanceTree::resistor(r2), ImpedanceTree::capacitor(cap)})});
}

ImpedanceTree rl_circuit(double r1, double r2, double ind) {
  return ImpedanceTree::series({ImpedanceTree::resistor(r1),
                                ImpedanceTree::parallel({ImpedanceTree::resistor(r2), ImpedanceTree::inductor(ind)})});
}

double beta_of_circuit(double r1, double r2, double cap) { return beta_max(build_impedance(rc_circuit(r1, r2, cap))).value; }

}  // namespace hyperpos
