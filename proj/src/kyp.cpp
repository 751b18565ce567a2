#include "hyperpos/kyp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "hyperpos/errors.hpp"
#include "hyperpos/qmi.hpp"

namespace hyperpos {

std::string to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::Riccati: return "riccati";
    case CertificateMethod::SpectralAscent: return "spectral-ascent";
    case CertificateMethod::UserSupplied: return "user-supplied";
  }
  return "?";
}

CertificateMethod certificate_method_from_string(const std::string& s) {
  if (s == "riccati") return CertificateMethod::Riccati;
  if (s == "spectral-ascent") return CertificateMethod::SpectralAscent;
  if (s == "user-supplied") return CertificateMethod::UserSupplied;
  throw Error(ErrorKind::Parse, "unknown certificate method '" + s + "'");
}

namespace {

void check_sizes(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "certificates need square ports");
  if (h.dim() != r.n() || t.dim() != r.m()) throw Error(ErrorKind::Dimension, "certificate blocks have the wrong size");
}

Matrix slack_unchecked(const Realization& r, const Matrix& h, const Matrix& t) {
  const int n = r.n(), m = r.m();
  Matrix id = Matrix::Identity(m, m);
  Matrix s(n + m, n + m);
  s.topLeftCorner(n, n) = -h * r.A - r.A.adjoint() * h - r.C.adjoint() * t * r.C;
  s.topRightCorner(n, m) = r.C.adjoint() * (id - t * r.D) - h * r.B;
  s.bottomLeftCorner(m, n) = s.topRightCorner(n, m).adjoint();
  s.bottomRightCorner(m, m) = r.D + r.D.adjoint() - t - r.D.adjoint() * t * r.D;
  return 0.5 * (s + s.adjoint());
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

// Newton iteration for the matrix sign function with determinant scaling.
std::optional<Matrix> matrix_sign(const Matrix& h) {
  const int N = static_cast<int>(h.rows());
  Matrix z = h;
  for (int it = 0; it < 200; ++it) {
    Eigen::PartialPivLU<Matrix> lu(z);
    double logdet = 0.0;
    for (int i = 0; i < N; ++i) logdet += std::log(std::abs(lu.matrixLU()(i, i)));
    if (!std::isfinite(logdet)) return std::nullopt;
    double mu = std::exp(-logdet / N);
    Matrix zi = lu.inverse();
    Matrix next = 0.5 * (mu * z + zi / mu);
    double change = (next - z).norm();
    z = next;
    if (change <= 1e-13 * z.norm()) return z;
  }
  return std::nullopt;
}

std::optional<Matrix> graph_solution(const Matrix& projector, int n) {
  Eigen::JacobiSVD<Matrix> svd(projector, Eigen::ComputeFullU);
  Matrix basis = svd.matrixU().leftCols(n);
  Matrix u1 = basis.topRows(n);
  Matrix u2 = basis.bottomRows(n);
  Eigen::JacobiSVD<Matrix> s1(u1);
  auto sv = s1.singularValues();
  if (sv(n - 1) <= 1e-10 * sv(0)) return std::nullopt;
  Matrix x = u2 * u1.inverse();
  return Matrix(0.5 * (x + x.adjoint()));
}

// Solutions of the Riccati equation reached by a Schur complement of the port block.
std::vector<Matrix> riccati_candidates(const Realization& r, const Matrix& t) {
  const int n = r.n(), m = r.m();
  Matrix id = Matrix::Identity(m, m);
  Matrix w = r.D + r.D.adjoint() - t - r.D.adjoint() * t * r.D;
  w = 0.5 * (w + w.adjoint());
  if (!is_pd(HermitianMatrix(w))) return {};
  Matrix winv = w.inverse();
  Matrix ct = (id - r.D.adjoint() * t) * r.C;
  Matrix abar = r.A - r.B * winv * ct;
  Matrix g = r.B * winv * r.B.adjoint();
  Matrix qr = r.C.adjoint() * t * r.C + ct.adjoint() * winv * ct;
  Matrix ham(2 * n, 2 * n);
  ham << abar, g, -qr, -abar.adjoint();
  double band = 1e-9 * (1.0 + spectral_norm(ham));
  for (auto l : sorted_eigenvalues(ham))
    if (std::abs(l.real()) <= band) return {};
  auto sign = matrix_sign(ham);
  if (!sign) return {};
  Matrix i2 = Matrix::Identity(2 * n, 2 * n);
  std::vector<Matrix> out;
  auto xs = graph_solution(0.5 * (i2 - *sign), n);
  auto xa = graph_solution(0.5 * (i2 + *sign), n);
  if (xs) out.push_back(*xs);
  if (xa) out.push_back(*xa);
  if (xs && xa) out.push_back(0.5 * (*xs + *xa));
  return out;
}

struct Best {
  Matrix h;
  double slack = -CertificateSearch::kInf;
  CertificateMethod method = CertificateMethod::SpectralAscent;
};

void consider(Best& best, const Realization& r, const Matrix& h, const Matrix& t, CertificateMethod method) {
  HermitianMatrix hh(0.5 * (h + h.adjoint()));
  if (!is_pd(hh)) return;
  double s = lambda_min_herm(slack_unchecked(r, hh.matrix(), t));
  if (s > best.slack) best = {hh.matrix(), s, method};
}

void spectral_ascent(Best& best, const Realization& r, const Matrix& t, const SearchOptions& opt) {
  const int n = r.n();
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double floor = 1e-8;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    Matrix g = Matrix::Identity(n, n);
    if (restart > 0) {
      for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) g(i, j) = cplx(gauss(rng), i == j ? 0.0 : gauss(rng));
      for (int i = 0; i < n; ++i) g(i, i) = std::abs(g(i, i)) + 0.1;
    }
    const double step0 = std::max(1.0, g.norm());
    for (int k = 1; k <= opt.iterations; ++k) {
      Matrix h = g.adjoint() * g + floor * Matrix::Identity(n, n);
      Matrix s = slack_unchecked(r, h, t);
      Eigen::SelfAdjointEigenSolver<Matrix> es(s);
      double lmin = es.eigenvalues()(0);
      if (lmin > best.slack) best = {h, lmin, CertificateMethod::SpectralAscent};
      Vector v = es.eigenvectors().col(0);
      Vector x = v.head(n);
      Vector u = v.tail(r.m());
      Vector w = r.A * x + r.B * u;
      Matrix gh = -(w * x.adjoint() + x * w.adjoint());
      Matrix gg = (2.0 * g * gh).triangularView<Eigen::Upper>();
      double norm = gg.norm();
      if (norm <= 1e-300) break;
      g += (step0 / k) * gg / norm;
    }
  }
}

}  // namespace

Matrix kyp_slack_matrix(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t) {
  check_sizes(r, h, t);
  return slack_unchecked(r, h.matrix(), t.matrix());
}

double verify_certificate(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t) {
  check_sizes(r, h, t);
  if (r.n() > 0 && !is_pd(h)) {
    std::ostringstream os;
    os << "certificate H is not positive definite (lambda_min " << lambda_min(h) << ")";
    throw Error(ErrorKind::Definiteness, os.str());
  }
  return lambda_min_herm(slack_unchecked(r, h.matrix(), t.matrix()));
}

void check_certificate(const Realization& r, const Certificate& c) {
  double s = verify_certificate(r, c.H, c.T);
  if (std::abs(s - c.slack) > 1e-9) {
    std::ostringstream os;
    os << "stored slack " << c.slack << " does not match recomputed " << s;
    throw Error(ErrorKind::Definiteness, os.str());
  }
}

CertificateSearch find_certificate(const Realization& r, const HermitianMatrix& t, const SearchOptions& opt) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "certificates need square ports");
  if (t.dim() != r.m()) throw Error(ErrorKind::Dimension, "weight has the wrong size");
  check_weight(t);
  CertificateSearch out;
  out.minimal_warning = !pbh_test(r).minimal();
  const Matrix& tm = t.matrix();
  Best best;
  if (r.n() == 0) {
    best = {Matrix(0, 0), lambda_min_herm(slack_unchecked(r, Matrix(0, 0), tm)), CertificateMethod::Riccati};
  } else {
    for (double delta : {0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3})
      for (const Matrix& h : riccati_candidates(r, tm * (1.0 - delta))) consider(best, r, h, tm, CertificateMethod::Riccati);
    double tol = psd_tolerance(slack_unchecked(r, best.slack > -CertificateSearch::kInf ? best.h : Matrix::Identity(r.n(), r.n()), tm));
    if (best.slack < -tol) spectral_ascent(best, r, tm, opt);
  }
  out.best_slack = best.slack;
  out.method = best.method;
  if (best.slack >= opt.infeasible_below) out.certificate = Certificate{HermitianMatrix(best.h), t, best.slack, best.method};
  return out;
}

ArrayInertiaReport array_inertia_analysis(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t) {
  check_sizes(r, h, t);
  ArrayInertiaReport rep;
  rep.observable_ac = pbh_test(r).observable;
  const int n = r.n(), m = r.m(), q = n + m;
  Matrix arr = r.array();
  Matrix gamma = Matrix::Zero(2 * m, q);
  gamma.topLeftCorner(m, n) = r.C;
  gamma.topRightCorner(m, m) = r.D;
  gamma.bottomRightCorner(m, m) = Matrix::Identity(m, m);
  Matrix tt = Matrix::Zero(2 * m, 2 * m);
  tt.topLeftCorner(m, m) = t.matrix();
  tt.bottomRightCorner(m, m) = t.matrix();
  Matrix qm = gamma.adjoint() * tt * gamma;
  rep.observable_rq = true;
  auto eigs = sorted_eigenvalues(arr);
  for (auto mu : eigs) {
    Matrix stack(2 * q, q);
    stack << arr - mu * Matrix::Identity(q, q), qm;
    if (numerical_rank(stack) < q) rep.observable_rq = false;
  }
  double band = psd_tolerance(arr);
  for (auto mu : eigs) {
    if (mu.real() < -band)
      ++rep.left_count;
    else if (mu.real() > band)
      ++rep.right_count;
    else
      ++rep.axis_count;
  }
  rep.array_singular = numerical_rank(arr) < q;
  return rep;
}

InversionResult invert_with_certificate(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t) {
  check_sizes(r, h, t);
  if (!is_pd(t)) throw Error(ErrorKind::Range, "certificate reuse needs a positive definite weight");
  Matrix s = kyp_slack_matrix(r, h, t);
  if (lambda_min_herm(s) < -psd_tolerance(s)) throw Error(ErrorKind::Definiteness, "supplied certificate does not hold");
  Realization inv = array_inverse(r);
  return {inv, verify_certificate(inv, h, t)};
}

Realization normalize_internally_passive(const Realization& r, const HermitianMatrix& h) {
  if (h.dim() != r.n()) throw Error(ErrorKind::Dimension, "certificate has the wrong size");
  if (r.n() == 0) return r;
  if (!is_pd(h)) throw Error(ErrorKind::Definiteness, "certificate H is not positive definite");
  return similarity(r, hermitian_power(h, Power::NegHalf).matrix());
}

double certified_beta(const Realization& r, const HermitianMatrix& h, double tol) {
  const int m = r.m();
  auto ok = [&](double b) {
    Matrix s = kyp_slack_matrix(r, h, HermitianMatrix::scalar(m, b));
    return lambda_min_herm(s) >= -psd_tolerance(s);
  };
  if (!ok(0.0)) return -1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

Realization internally_passive_form(const Realization& r, double beta, const SearchOptions& opt) {
  auto search = find_certificate(r, HermitianMatrix::scalar(r.m(), beta), opt);
  if (!search.certificate) {
    std::ostringstream os;
    os << "no certificate at beta = " << beta << " (best slack " << search.best_slack << ")";
    throw Error(ErrorKind::Definiteness, os.str());
  }
  return normalize_internally_passive(r, search.certificate->H);
}

}  // namespace hyperpos
