#include "hyperpos/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperpos/errors.hpp"
#include "hyperpos/qmi.hpp"

namespace hyperpos {

namespace {

void require_isometry(const Matrix& u, const char* what) {
  double defect = (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << what << " is not an isometry (defect " << defect << ")";
    throw Error(ErrorKind::Isometry, os.str());
  }
}

Realization compress(const Realization& r, const Matrix& us, const Matrix& up) {
  return Realization(us.adjoint() * r.A * us, us.adjoint() * r.B * up, up.adjoint() * r.C * us, up.adjoint() * r.D * up);
}

Realization leading_states(const Realization& r, int nu) {
  return Realization(r.A.topLeftCorner(nu, nu), r.B.topRows(nu), r.C.leftCols(nu), r.D);
}

}  // namespace

void RealizationPolytope::validate() const {
  if (vertices.empty()) throw Error(ErrorKind::Dimension, "polytope has no vertices");
  const auto& v0 = vertices.front();
  for (const auto& v : vertices)
    if (v.n() != v0.n() || v.m() != v0.m() || v.p() != v0.p()) throw Error(ErrorKind::Dimension, "polytope vertices differ in size");
  if (weights.size() != vertices.size()) throw Error(ErrorKind::Dimension, "need one weight per vertex");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error(ErrorKind::Range, "polytope weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::Range, "polytope weights must sum to one");
}

Realization truncate_balanced(const BalancedForm& bal, int nu) {
  const int n = bal.realization.n();
  if (nu < 1 || nu > n) throw Error(ErrorKind::Range, "truncation order out of range");
  if (static_cast<int>(bal.sigma.size()) != n) throw Error(ErrorKind::Dimension, "Hankel values do not match state size");
  if (nu < n && std::abs(bal.sigma[nu - 1] - bal.sigma[nu]) <= 1e-10 * bal.sigma[0]) {
    std::ostringstream os;
    os << "Hankel singular values tie at the cut (" << bal.sigma[nu - 1] << " vs " << bal.sigma[nu] << ")";
    throw Error(ErrorKind::Tie, os.str());
  }
  return leading_states(bal.realization, nu);
}

IsometricTruncation truncate_isometry(const Realization& r, const TruncationIsometry& iso, const HermitianMatrix& t) {
  if (iso.states.rows() != r.n() || iso.ports.rows() != r.m() || !r.square_ports())
    throw Error(ErrorKind::Dimension, "isometry does not match the realization");
  require_isometry(iso.states, "state isometry");
  require_isometry(iso.ports, "port isometry");
  HermitianMatrix id = HermitianMatrix::identity(r.n());
  Matrix s = kyp_slack_matrix(r, id, t);
  if (lambda_min_herm(s) < -psd_tolerance(s))
    throw Error(ErrorKind::Definiteness, "realization is not internally passive at this weight");
  Realization out = compress(r, iso.states, iso.ports);
  HermitianMatrix w(iso.ports.adjoint() * t.matrix() * iso.ports);
  return {out, w, verify_certificate(out, HermitianMatrix::identity(out.n()), w)};
}

Realization combine_realizations(const RealizationPolytope& poly) {
  poly.validate();
  const auto& v0 = poly.vertices.front();
  Matrix sum = Matrix::Zero(v0.n() + v0.p(), v0.n() + v0.m());
  for (size_t j = 0; j < poly.vertices.size(); ++j) sum += poly.weights[j] * poly.vertices[j].array();
  return Realization::from_array(sum, v0.n());
}

CombinationReport combine_internally_passive(const std::vector<Realization>& vertices,
                                             const std::vector<TruncationIsometry>& family, const FrequencyGrid& grid) {
  if (vertices.empty() || vertices.size() != family.size()) throw Error(ErrorKind::Dimension, "need one isometry pair per vertex");
  std::vector<Matrix> states, ports;
  for (size_t j = 0; j < vertices.size(); ++j) {
    if (family[j].states.rows() != vertices[j].n() || family[j].ports.rows() != vertices[j].m())
      throw Error(ErrorKind::Dimension, "isometry does not match its vertex");
    states.push_back(family[j].states);
    ports.push_back(family[j].ports);
  }
  for (const auto* list : {&states, &ports}) {
    double defect = isometry_defect(*list);
    if (defect > 1e-10) {
      std::ostringstream os;
      os << "isometry family does not resolve the identity (defect " << defect << ")";
      throw Error(ErrorKind::Isometry, os.str());
    }
  }
  const int nu = static_cast<int>(states.front().cols());
  const int mu = static_cast<int>(ports.front().cols());
  CombinationReport rep;
  Matrix a = Matrix::Zero(nu, nu), b = Matrix::Zero(nu, mu), c = Matrix::Zero(mu, nu), d = Matrix::Zero(mu, mu);
  rep.lower_bound = 1.0;
  for (size_t j = 0; j < vertices.size(); ++j) {
    const auto& r = vertices[j];
    double bj = certified_beta(r, HermitianMatrix::identity(r.n()));
    if (bj < 0.0) throw Error(ErrorKind::Definiteness, "vertex is not internally passive");
    rep.vertex_betas.push_back(bj);
    rep.lower_bound = std::min(rep.lower_bound, bj);
    Realization part = compress(r, states[j], ports[j]);
    a += part.A;
    b += part.B;
    c += part.C;
    d += part.D;
  }
  rep.realization = Realization(a, b, c, d);
  rep.certificate_slack =
      verify_certificate(rep.realization, HermitianMatrix::identity(nu), HermitianMatrix::scalar(mu, rep.lower_bound));
  if (poles(rep.realization).hurwitz) rep.measured_beta = beta_max(rep.realization, grid).value;
  return rep;
}

HullCommutation hull_truncation_commutes(const RealizationPolytope& poly, int nu) {
  poly.validate();
  std::vector<BalancedForm> forms;
  for (const auto& v : poly.vertices) forms.push_back(assume_balanced(v));
  const auto& s0 = forms.front().sigma;
  for (const auto& f : forms)
    for (size_t i = 0; i < s0.size(); ++i)
      if (std::abs(f.sigma[i] - s0[i]) > 1e-8 * (1.0 + s0[0]))
        throw Error(ErrorKind::Range, "vertices do not share Hankel singular values");
  Realization combined = combine_realizations(poly);
  BalancedForm cut{combined, s0, Matrix::Identity(combined.n(), combined.n())};
  HullCommutation out;
  out.lhs = truncate_balanced(cut, nu);
  RealizationPolytope reduced;
  reduced.weights = poly.weights;
  for (const auto& f : forms) reduced.vertices.push_back(truncate_balanced(f, nu));
  out.rhs = combine_realizations(reduced);
  out.defect = (out.lhs.array() - out.rhs.array()).norm();
  return out;
}

PreservationReport hp_preservation_report(const Realization& full, const Realization& reduced, double beta,
                                          const FrequencyGrid& grid) {
  PreservationReport rep;
  rep.member = sweep_membership(reduced, ClassSpec::hyper_positive(beta), grid).member;
  auto search = find_certificate(reduced, HermitianMatrix::scalar(reduced.m(), beta));
  rep.certified = search.certificate.has_value();
  rep.certificate_slack = search.best_slack;
  rep.beta_full = beta_max(full, grid).value;
  rep.beta_reduced = beta_max(reduced, grid).value;
  return rep;
}

}  // namespace hyperpos
