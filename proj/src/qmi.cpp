#include "hyperpos/qmi.hpp"

#include <sstream>

#include "hyperpos/errors.hpp"

namespace hyperpos {

std::string to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::P: return "P";
    case ClassTag::B: return "B";
    case ClassTag::PO: return "PO";
    case ClassTag::SP: return "SP";
    case ClassTag::HP: return "HP";
    case ClassTag::HB: return "HB";
  }
  return "?";
}

void check_weight(const HermitianMatrix& t) {
  if (t.dim() == 0) return;
  double lo = lambda_min(t);
  double hi = lambda_max(t);
  double tol = psd_tolerance(t.matrix());
  if (lo < -tol || hi >= 1.0 - 1e-12) {
    std::ostringstream os;
    os << "weight must satisfy 0 <= T < I (eigenvalues in [" << lo << ", " << hi << "])";
    throw Error(ErrorKind::Range, os.str());
  }
}

HermitianMatrix ClassSpec::weight_for(int q) const {
  if (!weighted()) return HermitianMatrix(Matrix::Zero(q, q));
  if (weight) {
    if (weight->dim() != q) throw Error(ErrorKind::Dimension, "class weight has the wrong size");
    check_weight(*weight);
    return *weight;
  }
  double b = beta.value_or(0.0);
  if (b < 0.0 || b >= 1.0) throw Error(ErrorKind::Range, "beta must lie in [0, 1)");
  return HermitianMatrix::scalar(q, b);
}

QuadraticForm::QuadraticForm(HermitianMatrix x, HermitianMatrix v, HermitianMatrix y)
    : x_(std::move(x)), v_(std::move(v)), y_(std::move(y)) {
  if (x_.dim() != v_.dim() || x_.dim() != y_.dim()) throw Error(ErrorKind::Dimension, "form blocks differ in size");
  Inertia in = inertia(HermitianMatrix(block()));
  const int q = dim();
  if (!(in == Inertia{q, 0, q})) {
    std::ostringstream os;
    os << "form block matrix has inertia (" << in.plus << "," << in.zero << "," << in.minus << "), expected (" << q
       << ",0," << q << ")";
    throw Error(ErrorKind::Definiteness, os.str());
  }
}

Matrix QuadraticForm::block() const {
  const int q = dim();
  Matrix m(2 * q, 2 * q);
  m << x_.matrix(), v_.matrix(), v_.matrix(), y_.matrix();
  return m;
}

Matrix slack_matrix(const QuadraticForm& form, const Matrix& e, Side side) {
  if (e.rows() != form.dim() || e.cols() != form.dim()) throw Error(ErrorKind::Dimension, "element size does not match form");
  const Matrix& x = form.x().matrix();
  const Matrix& v = form.v().matrix();
  Matrix quad = side == Side::Right ? Matrix(e.adjoint() * x * e) : Matrix(e * x * e.adjoint());
  Matrix s = v * e + e.adjoint() * v + quad + form.y().matrix();
  return 0.5 * (s + s.adjoint());
}

double membership_slack(const QuadraticForm& form, const Matrix& e, Side side) {
  return lambda_min_herm(slack_matrix(form, e, side));
}

namespace {

bool is_zero(const Matrix& m) { return nearly_equal(m, Matrix::Zero(m.rows(), m.cols())); }

bool real_scalar_identity(const Matrix& m, double& value) {
  const int q = static_cast<int>(m.rows());
  cplx tr = m.trace() / static_cast<double>(q);
  value = tr.real();
  if (std::abs(tr.imag()) > 1e-10 * (1.0 + std::abs(tr))) return false;
  return nearly_equal(m, Matrix::Identity(q, q) * value);
}

}  // namespace

StructuralProfile structural_profile(const QuadraticForm& form) {
  const Matrix& x = form.x().matrix();
  const Matrix& v = form.v().matrix();
  const Matrix& y = form.y().matrix();
  StructuralProfile p;
  p.convex = is_psd(HermitianMatrix(-x));
  p.inversion_closed = nearly_equal(x, y);
  bool cone_a = is_zero(x) && is_psd(form.y());
  bool cone_b = false;
  if (is_psd(form.x())) {
    Matrix xp = hermitian_power(form.x(), Power::Pseudo).matrix();
    Matrix gap = y - v * xp * v;
    cone_b = is_psd(HermitianMatrix(0.5 * (gap + gap.adjoint())));
  }
  p.cone = cone_a || cone_b;
  p.sign_closed = is_zero(v) && is_psd(form.y());
  p.product_closed = is_zero(v) && is_psd(HermitianMatrix(-(x + y)));
  double xs = 0, vs = 0, ys = 0;
  if (form.dim() > 0 && real_scalar_identity(x, xs) && real_scalar_identity(v, vs) && real_scalar_identity(y, ys))
    p.scalar_matrix_convex = xs <= 0.0 && vs * vs > xs * ys;
  return p;
}

QuadraticForm class_form(const ClassSpec& spec, int q) {
  Matrix id = Matrix::Identity(q, q);
  Matrix zero = Matrix::Zero(q, q);
  Matrix t = spec.weight_for(q).matrix();
  switch (spec.tag) {
    case ClassTag::P:
    case ClassTag::PO:
    case ClassTag::SP:
      return QuadraticForm(HermitianMatrix(zero), HermitianMatrix(id), HermitianMatrix(zero));
    case ClassTag::HP:
      return QuadraticForm(HermitianMatrix(-t), HermitianMatrix(id), HermitianMatrix(-t));
    case ClassTag::B:
      return QuadraticForm(HermitianMatrix(-id), HermitianMatrix(zero), HermitianMatrix(id));
    case ClassTag::HB:
      return QuadraticForm(HermitianMatrix(-(id + t)), HermitianMatrix(zero), HermitianMatrix(id - t));
  }
  throw Error(ErrorKind::Range, "unknown class tag");
}

bool hp_order_check(const HermitianMatrix& t1, const HermitianMatrix& t2) {
  if (t1.dim() != t2.dim()) throw Error(ErrorKind::Dimension, "weights differ in size");
  check_weight(t1);
  check_weight(t2);
  HermitianMatrix diff(t2.matrix() - t1.matrix());
  if (!is_psd(diff)) return false;
  Matrix gap = class_form(ClassSpec::hyper_positive(t1), t1.dim()).block() -
               class_form(ClassSpec::hyper_positive(t2), t2.dim()).block();
  if (!is_psd(HermitianMatrix(gap))) throw Error(ErrorKind::Definiteness, "form difference is not semidefinite");
  return true;
}

double isometry_defect(const std::vector<Matrix>& isometries) {
  if (isometries.empty()) throw Error(ErrorKind::Isometry, "empty isometry family");
  const int nu = static_cast<int>(isometries.front().cols());
  Matrix sum = Matrix::Zero(nu, nu);
  for (const auto& u : isometries) {
    if (u.cols() != nu) throw Error(ErrorKind::Dimension, "isometries differ in column count");
    sum += u.adjoint() * u;
  }
  return (sum - Matrix::Identity(nu, nu)).norm();
}

Matrix matrix_convex_combine(const std::vector<Matrix>& elements, const std::vector<Matrix>& isometries) {
  if (elements.size() != isometries.size() || elements.empty())
    throw Error(ErrorKind::Dimension, "need one isometry per element");
  double defect = isometry_defect(isometries);
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "isometries do not resolve the identity (defect " << defect << ")";
    throw Error(ErrorKind::Isometry, os.str());
  }
  const int nu = static_cast<int>(isometries.front().cols());
  Matrix out = Matrix::Zero(nu, nu);
  for (size_t j = 0; j < elements.size(); ++j) {
    const Matrix& e = elements[j];
    const Matrix& u = isometries[j];
    if (e.rows() != u.rows() || e.cols() != u.rows()) throw Error(ErrorKind::Dimension, "element and isometry sizes disagree");
    out += u.adjoint() * e * u;
  }
  return out;
}

}  // namespace hyperpos
