#include "hyperpos/realization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperpos/errors.hpp"

namespace hyperpos {

namespace {

void require_nonsingular(const Matrix& v, const char* what) {
  Eigen::JacobiSVD<Matrix> svd(v);
  auto sv = svd.singularValues();
  if (sv.size() == 0) return;
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    std::ostringstream os;
    os << what << " is singular (condition number " << (sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY) << ")";
    throw Error(ErrorKind::Singular, os.str());
  }
}

}  // namespace

Realization::Realization(Matrix a, Matrix b, Matrix c, Matrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
  validate();
}

Realization Realization::constant(const Matrix& d) {
  return Realization(Matrix(0, 0), Matrix(0, d.cols()), Matrix(d.rows(), 0), d);
}

Realization Realization::scalar(double a, double b, double c, double d) {
  Matrix ma(1, 1), mb(1, 1), mc(1, 1), md(1, 1);
  ma(0, 0) = a;
  mb(0, 0) = b;
  mc(0, 0) = c;
  md(0, 0) = d;
  return Realization(ma, mb, mc, md);
}

void Realization::validate() const {
  if (A.rows() != A.cols() || B.rows() != A.rows() || C.cols() != A.rows() || D.rows() != C.rows() ||
      D.cols() != B.cols()) {
    std::ostringstream os;
    os << "inconsistent realization blocks: A " << A.rows() << "x" << A.cols() << ", B " << B.rows() << "x" << B.cols()
       << ", C " << C.rows() << "x" << C.cols() << ", D " << D.rows() << "x" << D.cols();
    throw Error(ErrorKind::Dimension, os.str());
  }
}

Matrix Realization::array() const {
  Matrix r(n() + p(), n() + m());
  r << A, B, C, D;
  return r;
}

Realization Realization::from_array(const Matrix& r, int n) {
  if (n < 0 || n > r.rows() || n > r.cols()) throw Error(ErrorKind::Dimension, "state dimension exceeds array size");
  const int p = static_cast<int>(r.rows()) - n;
  const int m = static_cast<int>(r.cols()) - n;
  return Realization(r.topLeftCorner(n, n), r.topRightCorner(n, m), r.bottomLeftCorner(p, n), r.bottomRightCorner(p, m));
}

bool operator==(const Realization& a, const Realization& b) {
  return a.A == b.A && a.B == b.B && a.C == b.C && a.D == b.D;
}

Matrix evaluate(const Realization& r, cplx s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return r.D;
  if (r.n() == 0) return r.D;
  for (auto l : sorted_eigenvalues(r.A)) {
    if (std::abs(s - l) <= 1e-12 * (1.0 + std::abs(l))) {
      std::ostringstream os;
      os << "evaluation point " << s << " is a pole";
      throw Error(ErrorKind::Pole, os.str());
    }
  }
  Matrix m = s * Matrix::Identity(r.n(), r.n()) - r.A;
  return r.C * m.partialPivLu().solve(r.B) + r.D;
}

Matrix evaluate_at_infinity(const Realization& r) { return r.D; }

PoleReport poles(const Realization& r) {
  PoleReport rep;
  rep.eigenvalues = sorted_eigenvalues(r.A);
  double tol = psd_tolerance(r.A);
  for (auto l : rep.eigenvalues) {
    if (!(l.real() < -tol)) rep.hurwitz = false;
    if (l.real() > tol) rep.analytic_in_right_half = false;
  }
  return rep;
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  auto sv = svd.singularValues();
  double thr = 1e-9 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) ++rank;
  return rank;
}

PbhReport pbh_test(const Realization& r) {
  PbhReport rep;
  const int n = r.n();
  if (n == 0) return rep;
  Matrix id = Matrix::Identity(n, n);
  for (auto l : sorted_eigenvalues(r.A)) {
    Matrix obs(n + r.p(), n);
    obs << r.A - l * id, r.C;
    Eigen::JacobiSVD<Matrix> so(obs, Eigen::ComputeFullV);
    if (numerical_rank(obs) < n) {
      rep.observable = false;
      rep.witnesses.push_back({l, so.matrixV().col(n - 1), true});
    }
    Matrix ctr(n, n + r.m());
    ctr << r.A - l * id, r.B;
    Eigen::JacobiSVD<Matrix> sc(ctr, Eigen::ComputeFullU);
    if (numerical_rank(ctr) < n) {
      rep.controllable = false;
      rep.witnesses.push_back({l, sc.matrixU().col(n - 1), false});
    }
  }
  return rep;
}

Realization similarity(const Realization& r, const Matrix& v) {
  if (v.rows() != r.n() || v.cols() != r.n()) throw Error(ErrorKind::Dimension, "similarity transform has wrong size");
  require_nonsingular(v, "similarity transform");
  auto lu = v.fullPivLu();
  return Realization(lu.solve(r.A * v), lu.solve(r.B), r.C * v, r.D);
}

Realization array_congruence(const Realization& r, const Matrix& u) {
  Matrix arr = r.array();
  if (u.rows() != arr.rows() || arr.rows() != arr.cols()) throw Error(ErrorKind::Dimension, "congruence needs a square array of matching size");
  return Realization::from_array(u.adjoint() * arr * u, r.n());
}

Realization function_inverse(const Realization& r) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "function inverse needs square ports");
  require_nonsingular(r.D, "feedthrough D");
  Matrix dinv = r.D.inverse();
  return Realization(r.A - r.B * dinv * r.C, r.B * dinv, -dinv * r.C, dinv);
}

Realization array_inverse(const Realization& r) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "array inverse needs square ports");
  Matrix arr = r.array();
  require_nonsingular(arr, "realization array");
  Matrix inv = arr.fullPivLu().inverse();
  const int n = r.n();
  if (n > 0 && r.m() > 0) {
    Eigen::FullPivLU<Matrix> dlu(r.D);
    if (dlu.isInvertible() && r.A.fullPivLu().isInvertible()) {
      Matrix dinv = dlu.inverse();
      Matrix schur = r.A - r.B * dinv * r.C;
      Eigen::FullPivLU<Matrix> slu(schur);
      if (slu.isInvertible()) {
        Matrix sinv = slu.inverse();
        Matrix blk(arr.rows(), arr.cols());
        blk << sinv, -sinv * r.B * dinv, -dinv * r.C * sinv, dinv + dinv * r.C * sinv * r.B * dinv;
        if (!nearly_equal(blk, inv, 1e-10))
          throw Error(ErrorKind::Singular, "block-formula inverse disagrees with direct inverse");
      }
    }
  }
  return Realization::from_array(inv, n);
}

Gramians gramians(const Realization& r) {
  if (!poles(r).hurwitz) throw Error(ErrorKind::NotHurwitz, "Gramians need a Hurwitz state matrix");
  HermitianMatrix qc(r.B * r.B.adjoint());
  HermitianMatrix qo(r.C.adjoint() * r.C);
  return {solve_lyapunov(r.A, qc, GramianSide::Controllability), solve_lyapunov(r.A, qo, GramianSide::Observability)};
}

BalancedForm balance(const Realization& r) {
  const int n = r.n();
  if (n == 0) return {r, {}, Matrix(0, 0)};
  Gramians g = gramians(r);
  Eigen::LLT<Matrix> llt(g.controllability.matrix());
  if (llt.info() != Eigen::Success || lambda_min(g.controllability) <= psd_tolerance(g.controllability.matrix()))
    throw Error(ErrorKind::NotMinimal, "controllability Gramian is singular; realization is not minimal");
  Matrix l = llt.matrixL();
  Matrix inner = l.adjoint() * g.observability.matrix() * l;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()));
  // ascending from Eigen; flip to descending
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  Matrix u = es.eigenvectors().rowwise().reverse();
  if (ev(n - 1) <= 1e-12 * ev(0) || ev(n - 1) <= 0.0)
    throw Error(ErrorKind::NotMinimal, "zero Hankel singular value; realization is not minimal");
  std::vector<double> sigma(n);
  Eigen::VectorXd root(n);
  for (int i = 0; i < n; ++i) {
    sigma[i] = std::sqrt(ev(i));
    root(i) = 1.0 / std::sqrt(sigma[i]);
  }
  Matrix v = l * u * root.cast<cplx>().asDiagonal();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i, j)) > 1e-12 * v.col(j).norm()) {
        cplx phase = std::abs(v(i, j)) / v(i, j);
        v.col(j) *= phase;
        break;
      }
    }
  }
  return {similarity(r, v), sigma, v};
}

BalancedForm assume_balanced(const Realization& r, double tol) {
  Gramians g = gramians(r);
  const int n = r.n();
  const Matrix& hc = g.controllability.matrix();
  const Matrix& ho = g.observability.matrix();
  Matrix diag = hc.diagonal().asDiagonal();
  double scale = 1.0 + hc.norm();
  if ((hc - ho).norm() > tol * scale || (hc - diag).norm() > tol * scale)
    throw Error(ErrorKind::NotMinimal, "realization is not balanced");
  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) {
    sigma[i] = hc(i, i).real();
    if (i > 0 && sigma[i] > sigma[i - 1] + tol * scale)
      throw Error(ErrorKind::NotMinimal, "balanced Gramian diagonal is not sorted nonincreasing");
  }
  return {r, sigma, Matrix::Identity(n, n)};
}

Realization series_add(const Realization& r1, const Realization& r2) {
  if (r1.m() != r2.m() || r1.p() != r2.p()) throw Error(ErrorKind::Dimension, "series sum needs matching port sizes");
  const int n = r1.n() + r2.n();
  Matrix a = Matrix::Zero(n, n);
  a.topLeftCorner(r1.n(), r1.n()) = r1.A;
  a.bottomRightCorner(r2.n(), r2.n()) = r2.A;
  Matrix b(n, r1.m());
  b << r1.B, r2.B;
  Matrix c(r1.p(), n);
  c << r1.C, r2.C;
  return Realization(a, b, c, r1.D + r2.D);
}

Realization adjoint_system(const Realization& r) {
  return Realization(r.A.adjoint(), r.C.adjoint(), r.B.adjoint(), r.D.adjoint());
}

std::vector<cplx> test_points(int count, double lo, double hi) {
  std::vector<cplx> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    double w = lo * std::pow(hi / lo, t);
    pts.emplace_back(0.0, w);
  }
  return pts;
}

double transfer_distance(const Realization& r1, const Realization& r2, const std::vector<cplx>& points) {
  double worst = 0.0;
  for (auto s : points) {
    Matrix f1 = evaluate(r1, s);
    Matrix f2 = evaluate(r2, s);
    if (f1.rows() != f2.rows() || f1.cols() != f2.cols()) throw Error(ErrorKind::Dimension, "transfer functions differ in size");
    worst = std::max(worst, (f1 - f2).norm() / (1.0 + f1.norm()));
  }
  return worst;
}

}  // namespace hyperpos
