#include "hyperpos/function_classes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperpos/errors.hpp"
#include "hyperpos/qmi.hpp"

namespace hyperpos {

namespace {

bool has_complex_data(const Realization& r) {
  auto cx = [](const Matrix& m) { return m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0; };
  return cx(r.A) || cx(r.B) || cx(r.C) || cx(r.D);
}

// Evaluation without the eigenvalue pole check; callers handle poles.
Matrix transfer_at(const Realization& r, cplx s) {
  if (r.n() == 0) return r.D;
  Matrix m = s * Matrix::Identity(r.n(), r.n()) - r.A;
  return r.C * m.partialPivLu().solve(r.B) + r.D;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

std::vector<double> sample_omegas(const Realization& r, const FrequencyGrid& grid) {
  std::vector<double> w = grid.omegas;
  if (has_complex_data(r)) {
    for (double x : grid.omegas)
      if (x > 0.0) w.push_back(-x);
    std::sort(w.begin(), w.end());
  }
  return w;
}

Realization shifted(const Realization& r, double eps) {
  return Realization(r.A + eps * Matrix::Identity(r.n(), r.n()), r.B, r.C, r.D);
}

}  // namespace

FrequencyGrid FrequencyGrid::standard(int count, double lo, double hi) {
  FrequencyGrid g;
  g.omegas.reserve(count + 1);
  g.omegas.push_back(0.0);
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    g.omegas.push_back(lo * std::pow(hi / lo, t));
  }
  return g;
}

void FrequencyGrid::validate() const {
  if (omegas.empty() && !include_infinity) throw Error(ErrorKind::Range, "empty frequency grid");
  for (size_t i = 0; i < omegas.size(); ++i) {
    if (!std::isfinite(omegas[i]) || omegas[i] < 0.0) throw Error(ErrorKind::Range, "grid frequencies must be finite and nonnegative");
    if (i > 0 && omegas[i] < omegas[i - 1]) throw Error(ErrorKind::Range, "grid frequencies must be sorted");
  }
}

double pointwise_slack(const Matrix& f, const ClassSpec& spec) {
  return membership_slack(class_form(spec, static_cast<int>(f.rows())), f);
}

MembershipReport sweep_membership(const Realization& r, const ClassSpec& spec, const FrequencyGrid& grid) {
  grid.validate();
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "class membership needs square ports");
  MembershipReport rep;
  PoleReport pr = poles(r);
  if (spec.tag == ClassTag::SP) {
    rep.analyticity_ok = pr.hurwitz;
    rep.min_slack = sp_margin(r, grid);
    rep.argmin_omega = 0.0;
    rep.member = rep.analyticity_ok && rep.min_slack > 0.0;
    return rep;
  }
  bool strict = spec.tag == ClassTag::HP || spec.tag == ClassTag::HB || spec.tag == ClassTag::B;
  rep.analyticity_ok = strict ? pr.hurwitz : pr.analytic_in_right_half;
  QuadraticForm form = class_form(spec, r.m());

  double scale = 0.0;
  bool lossless_ok = true;
  int used = 0;
  auto visit = [&](const Matrix& f, double omega) {
    Matrix s = slack_matrix(form, f);
    double l = lambda_min_herm(s);
    scale = std::max(scale, spectral_norm(s));
    if (l < rep.min_slack || (l == rep.min_slack && omega < rep.argmin_omega)) {
      rep.min_slack = l;
      rep.argmin_omega = omega;
    }
    if (spec.tag == ClassTag::PO) {
      Matrix h = f + f.adjoint();
      if (spectral_norm(h) > psd_tolerance(f)) lossless_ok = false;
    }
    ++used;
  };

  for (double w : sample_omegas(r, grid)) {
    cplx s(0.0, w);
    bool near_pole = false;
    for (auto l : pr.eigenvalues)
      if (std::abs(s - l) <= 1e-8 * (1.0 + std::abs(l))) near_pole = true;
    if (near_pole) {
      ++rep.skipped_points;
      continue;
    }
    visit(transfer_at(r, s), w);
  }
  if (grid.include_infinity) visit(r.D, kInfinity);

  rep.tolerance = 1e-9 * (1.0 + scale);
  rep.member = rep.analyticity_ok && used > 0 && rep.min_slack >= -rep.tolerance;
  if (spec.tag == ClassTag::PO) rep.member = rep.member && lossless_ok && used >= 3;
  return rep;
}

ExtremalReport t_ray_max(const Realization& r, const HermitianMatrix& direction, const FrequencyGrid& grid, double tol) {
  if (direction.dim() != r.m()) throw Error(ErrorKind::Dimension, "weight direction has the wrong size");
  if (!is_psd(direction) || lambda_max(direction) <= psd_tolerance(direction.matrix()))
    throw Error(ErrorKind::Range, "weight direction must be nonzero and semidefinite");
  const double upper = 1.0 / lambda_max(direction);
  auto member = [&](double t) {
    return sweep_membership(r, ClassSpec::hyper_positive(HermitianMatrix(direction.matrix() * t)), grid).member;
  };
  ExtremalReport rep;
  if (!member(0.0)) {
    rep.zero_flag = true;
    return rep;
  }
  double lo = 0.0, hi = upper;
  while (hi - lo > tol * upper) {
    double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  // a value within one bisection step of zero is indistinguishable from zero
  if (lo <= tol * upper) lo = 0.0;
  rep.value = lo;
  rep.zero_flag = lo == 0.0;
  return rep;
}

ExtremalReport beta_max(const Realization& r, const FrequencyGrid& grid, double tol) {
  return t_ray_max(r, HermitianMatrix::identity(r.m()), grid, tol);
}

double sp_margin(const Realization& r, const FrequencyGrid& grid, double tol) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "class membership needs square ports");
  PoleReport pr = poles(r);
  if (!pr.hurwitz) return 0.0;
  if (r.n() == 0) return is_pd(HermitianMatrix(r.D + r.D.adjoint())) ? kInfinity : 0.0;
  if (!sweep_membership(r, ClassSpec::positive(), grid).member) return 0.0;
  double upper = -pr.eigenvalues.back().real();
  double lo = 0.0, hi = upper;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    bool ok = sweep_membership(shifted(r, mid), ClassSpec::positive(), grid).member;
    (ok ? lo : hi) = mid;
  }
  return lo;
}

Realization cayley_function(const Realization& r) {
  if (!r.square_ports()) throw Error(ErrorKind::Dimension, "Cayley transform needs square ports");
  const int m = r.m();
  Matrix id = Matrix::Identity(m, m);
  Eigen::FullPivLU<Matrix> lu(id + r.D);
  Eigen::JacobiSVD<Matrix> svd(id + r.D);
  auto sv = svd.singularValues();
  if (m > 0 && sv(m - 1) <= 1e-12 * (1.0 + sv(0))) throw Error(ErrorKind::Singular, "-1 is an eigenvalue of D; Cayley image is improper");
  Matrix k = lu.inverse();
  return Realization(r.A - r.B * k * r.C, r.B * k, -2.0 * k * r.C, -id + 2.0 * k);
}

AffinePair affine_hb_maps(const Realization& r, const HermitianMatrix& t) {
  if (t.dim() != r.m() || !r.square_ports()) throw Error(ErrorKind::Dimension, "weight has the wrong size");
  check_weight(t);
  if (!is_pd(t)) throw Error(ErrorKind::Singular, "affine maps need a nonsingular weight");
  const int m = r.m();
  Matrix tinv = hermitian_power(t, Power::Inverse).matrix();
  Matrix s = hermitian_power(HermitianMatrix(Matrix::Identity(m, m) + tinv), Power::NegHalf).matrix();
  Realization plus(r.A, r.B * s, s * r.C, s * (r.D - tinv) * s);
  Realization minus(r.A, r.B * s, -(s * r.C), -(s * (r.D - tinv) * s));
  return {plus, minus};
}

Realization left_conjugate(const Realization& r, const HermitianMatrix& t) {
  if (t.dim() != r.m() || !r.square_ports()) throw Error(ErrorKind::Dimension, "weight has the wrong size");
  check_weight(t);
  const int m = r.m();
  HermitianMatrix w(Matrix::Identity(m, m) - t.matrix() * t.matrix());
  Matrix wh = hermitian_power(w, Power::Half).matrix();
  Matrix wnh = hermitian_power(w, Power::NegHalf).matrix();
  return Realization(r.A.adjoint(), r.C.adjoint() * wh, wnh * r.B.adjoint(), wnh * r.D.adjoint() * wh);
}

DiskParams disk_params(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw Error(ErrorKind::Range, "beta must lie in [0, 1)");
  DiskParams d;
  d.center_disk = {cplx(0.0, 0.0), std::sqrt(1.0 - beta) / std::sqrt(1.0 + beta)};
  if (beta == 0.0) {
    d.inv_is_half_plane = true;
    d.inv_disk = {cplx(kInfinity, 0.0), kInfinity};
  } else {
    d.inv_disk = {cplx(1.0 / beta, 0.0), std::sqrt(1.0 - beta * beta) / beta};
  }
  return d;
}

bool canonical_check(const Realization& r, const HermitianMatrix& t, const FrequencyGrid& grid) {
  if (!poles(r).hurwitz) return false;
  ClassSpec spec = ClassSpec::hyper_positive(t);
  QuadraticForm form = class_form(spec, r.m());
  auto tol_for = [](const Matrix& f) {
    double nf = spectral_norm(f);
    return 1e-9 * (1.0 + nf * nf);
  };
  auto boundary_ok = [&](const Matrix& f) { return spectral_norm(slack_matrix(form, f)) <= 10.0 * tol_for(f); };
  for (double w : sample_omegas(r, grid))
    if (!boundary_ok(transfer_at(r, cplx(0.0, w)))) return false;
  if (grid.include_infinity && !boundary_ok(r.D)) return false;
  for (double sigma : {1e-2, 1.0, 1e2}) {
    for (double w : {0.0, 0.5, 2.0, 10.0, -0.5, -2.0}) {
      Matrix f = transfer_at(r, cplx(sigma, w));
      if (membership_slack(form, f) < -tol_for(f)) return false;
    }
  }
  return true;
}

}  // namespace hyperpos
