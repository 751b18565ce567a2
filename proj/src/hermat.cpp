#include "hyperpos/hermat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "hyperpos/errors.hpp"

namespace hyperpos {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Eigen::SelfAdjointEigenSolver<Matrix> eig_herm(const Matrix& m, bool vectors) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

double psd_tolerance(const Matrix& m) { return 1e-9 * (1.0 + spectral_norm(m)); }

double herm_tolerance(const Matrix& m) { return 1e-12 * (1.0 + m.norm()); }

bool nearly_equal(const Matrix& a, const Matrix& b, double rel) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= rel * (1.0 + std::max(a.norm(), b.norm()));
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Dimension, "Hermitian matrix must be square");
  double defect = (m - m.adjoint()).norm();
  if (defect > herm_tolerance(m)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw Error(ErrorKind::Definiteness, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int q) { return HermitianMatrix(Matrix::Identity(q, q)); }

HermitianMatrix HermitianMatrix::scalar(int q, double value) {
  return HermitianMatrix(Matrix::Identity(q, q) * cplx(value, 0.0));
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  if (m_.size() == 0) return {};
  return eig_herm(m_, false).eigenvalues();
}

Inertia inertia(const HermitianMatrix& m) {
  Inertia in;
  double tol = psd_tolerance(m.matrix());
  for (double l : m.eigenvalues()) {
    if (l > tol)
      ++in.plus;
    else if (l < -tol)
      ++in.minus;
    else
      ++in.zero;
  }
  return in;
}

double lambda_min(const HermitianMatrix& m) {
  auto ev = m.eigenvalues();
  return ev.size() == 0 ? 0.0 : ev.minCoeff();
}

double lambda_max(const HermitianMatrix& m) {
  auto ev = m.eigenvalues();
  return ev.size() == 0 ? 0.0 : ev.maxCoeff();
}

double lambda_min_herm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix h = 0.5 * (m + m.adjoint());
  return eig_herm(h, false).eigenvalues().minCoeff();
}

bool is_psd(const HermitianMatrix& m) { return lambda_min(m) >= -psd_tolerance(m.matrix()); }

bool is_pd(const HermitianMatrix& m) { return lambda_min(m) > psd_tolerance(m.matrix()); }

HermitianMatrix hermitian_power(const HermitianMatrix& m, Power p) {
  const int q = m.dim();
  if (q == 0) return m;
  auto es = eig_herm(m.matrix(), true);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double tol = psd_tolerance(m.matrix());
  double lo = ev.minCoeff();
  bool need_pd = (p == Power::NegHalf || p == Power::Inverse);
  if ((need_pd && lo <= tol) || (!need_pd && lo < -tol)) {
    std::ostringstream os;
    os << "definiteness precondition violated, eigenvalue " << lo;
    throw Error(ErrorKind::Definiteness, os.str());
  }
  Eigen::VectorXd f(q);
  for (int i = 0; i < q; ++i) {
    double l = std::max(ev(i), 0.0);
    switch (p) {
      case Power::Half: f(i) = std::sqrt(l); break;
      case Power::NegHalf: f(i) = 1.0 / std::sqrt(l); break;
      case Power::Inverse: f(i) = 1.0 / l; break;
      case Power::Pseudo: f(i) = ev(i) > tol ? 1.0 / ev(i) : 0.0; break;
    }
  }
  const Matrix& u = es.eigenvectors();
  Matrix r = u * f.cast<cplx>().asDiagonal() * u.adjoint();
  return HermitianMatrix(0.5 * (r + r.adjoint()));
}

std::vector<cplx> sorted_eigenvalues(const Matrix& a) {
  std::vector<cplx> out;
  if (a.size() == 0) return out;
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

HermitianMatrix solve_lyapunov(const Matrix& a, const HermitianMatrix& q, GramianSide side) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || q.dim() != n) throw Error(ErrorKind::Dimension, "Lyapunov operands have mismatched sizes");
  if (n == 0) return q;
  auto lam = sorted_eigenvalues(a);
  double scale = 1.0 + spectral_norm(a);
  for (auto li : lam)
    for (auto lj : lam)
      if (std::abs(li + std::conj(lj)) <= 1e-10 * scale)
        throw Error(ErrorKind::Resonance, "resonant spectrum: lambda_i + conj(lambda_j) = 0");
  Matrix id = Matrix::Identity(n, n);
  Matrix k(n * n, n * n);
  if (side == GramianSide::Controllability)
    k = Eigen::kroneckerProduct(id, a).eval() + Eigen::kroneckerProduct(a.conjugate(), id).eval();
  else
    k = Eigen::kroneckerProduct(id, a.adjoint()).eval() + Eigen::kroneckerProduct(a.transpose(), id).eval();
  Matrix rhs = -q.matrix();
  Vector b = Eigen::Map<Vector>(rhs.data(), n * n);
  Vector x = k.partialPivLu().solve(b);
  Matrix xm = Eigen::Map<Matrix>(x.data(), n, n);
  return HermitianMatrix(0.5 * (xm + xm.adjoint()));
}

Matrix cayley_matrix(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw Error(ErrorKind::Dimension, "Cayley transform needs a square matrix");
  if (n == 0) return a;
  double scale = 1.0 + spectral_norm(a);
  for (auto l : sorted_eigenvalues(a))
    if (std::abs(l + 1.0) <= 1e-10 * scale) throw Error(ErrorKind::Singular, "-1 is an eigenvalue; Cayley transform undefined");
  Matrix id = Matrix::Identity(n, n);
  Matrix ipa = id + a;
  return (id - a) * ipa.inverse();
}

HyperPairSlacks hyper_pair_slacks(const Matrix& a, const HermitianMatrix& h, const HermitianMatrix& t) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || h.dim() != n || t.dim() != n) throw Error(ErrorKind::Dimension, "hyper pair operands have mismatched sizes");
  const Matrix& hm = h.matrix();
  const Matrix& tm = t.matrix();
  HyperPairSlacks s;
  s.lyapunov = lambda_min_herm(hm * a + a.adjoint() * hm - tm - a.adjoint() * tm * a);
  if ((a + Matrix::Identity(n, n)).fullPivLu().rank() < n) return s;
  Matrix ah = cayley_matrix(a);
  s.stein = lambda_min_herm(hm - ah.adjoint() * hm * ah - tm - ah.adjoint() * tm * ah);
  return s;
}

}  // namespace hyperpos
