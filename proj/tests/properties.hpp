#pragma once

// Randomized witness suites shared by the unit tests and the acceptance binary.
// Each returns the number of violations found; trials that cannot be drawn are retried.

#include <string>

#include "hyperpos/function_classes.hpp"
#include "hyperpos/kyp.hpp"
#include "hyperpos/qmi.hpp"
#include "hyperpos/reduction.hpp"
#include "test_support.hpp"

namespace hyperpos::testing {

struct PropertyResult {
  int trials = 0;
  int violations = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++trials;
    if (!ok && violations++ == 0) first_failure = what;
  }
};

inline HermitianMatrix random_weight(Rng& rng, int q, double cap = 0.8) {
  Matrix u = rng.matrix(q, q, true).householderQr().householderQ();
  Matrix d = Matrix::Zero(q, q);
  for (int i = 0; i < q; ++i) d(i, i) = rng.uniform(0.0, cap);
  Matrix t = u * d * u.adjoint();
  return HermitianMatrix(0.5 * (t + t.adjoint()));
}

// Member of the set described by form, by rejection from perturbations of an anchor.
inline Matrix random_member(Rng& rng, const QuadraticForm& form, const Matrix& anchor, double spread) {
  for (;;) {
    Matrix e = anchor + spread * rng.matrix(form.dim(), form.dim(), true);
    if (membership_slack(form, e) >= 0.0) return e;
  }
}

// A form from the stock classes, with a member anchor inside it.
struct StockForm {
  QuadraticForm form;
  Matrix anchor;
  double spread;
};

inline StockForm stock_form(Rng& rng, int q) {
  Matrix id = Matrix::Identity(q, q);
  switch (rng.integer(0, 3)) {
    case 0:
      return {class_form(ClassSpec::positive(), q), id, 0.8};
    case 1:
      return {class_form(ClassSpec::bounded(), q), Matrix::Zero(q, q), 0.4};
    case 2:
      return {class_form(ClassSpec::hyper_positive(random_weight(rng, q)), q), id, 0.4};
    default:
      return {class_form(ClassSpec::hyper_bounded(random_weight(rng, q)), q), Matrix::Zero(q, q), 0.2};
  }
}

inline PropertyResult qmi_convexity(Rng& rng, int trials = 200) {
  PropertyResult res;
  while (res.trials < trials) {
    int q = rng.integer(1, 3);
    StockForm s = stock_form(rng, q);
    if (!structural_profile(s.form).convex) continue;
    Matrix e0 = random_member(rng, s.form, s.anchor, s.spread);
    Matrix e1 = random_member(rng, s.form, s.anchor, s.spread);
    bool ok = true;
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      Matrix mix = a * e1 + (1 - a) * e0;
      ok = ok && membership_slack(s.form, mix) >= -psd_tolerance(slack_matrix(s.form, mix));
    }
    res.record(ok, "convex combination left the set");
  }
  return res;
}

// The stock non-convex form {E : E* diag(1,-1) E >= diag(1,-1)} must be falsified quickly.
inline bool qmi_nonconvex_falsified(Rng& rng, int budget = 10000) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 1;
  x(1, 1) = -1;
  QuadraticForm form(HermitianMatrix(x), HermitianMatrix(Matrix::Zero(2, 2)), HermitianMatrix(Matrix(-x)));
  if (structural_profile(form).convex) return false;
  for (int k = 0; k < budget; ++k) {
    Matrix e0 = 2.0 * rng.matrix(2, 2);
    Matrix e1 = 2.0 * rng.matrix(2, 2);
    if (membership_slack(form, e0) < 0 || membership_slack(form, e1) < 0) continue;
    for (double a : {0.25, 0.5, 0.75})
      if (membership_slack(form, a * e1 + (1 - a) * e0) < -1e-6) return true;
  }
  return false;
}

inline PropertyResult qmi_inversion(Rng& rng, int trials = 200) {
  PropertyResult res;
  while (res.trials < trials) {
    int q = rng.integer(1, 3);
    StockForm s = stock_form(rng, q);
    if (!structural_profile(s.form).inversion_closed) continue;
    Matrix e = random_member(rng, s.form, s.anchor, s.spread);
    Eigen::FullPivLU<Matrix> lu(e);
    if (!lu.isInvertible()) continue;
    Matrix inv = lu.inverse();
    res.record(membership_slack(s.form, inv) >= -psd_tolerance(slack_matrix(s.form, inv)), "inverse left the set");
  }
  return res;
}

inline PropertyResult qmi_product(Rng& rng, int trials = 200) {
  PropertyResult res;
  while (res.trials < trials) {
    int q = rng.integer(1, 3);
    StockForm s = stock_form(rng, q);
    if (!structural_profile(s.form).product_closed) continue;
    Matrix e0 = random_member(rng, s.form, s.anchor, s.spread);
    Matrix e1 = random_member(rng, s.form, s.anchor, s.spread);
    Matrix prod = e0 * e1;
    res.record(membership_slack(s.form, prod) >= -psd_tolerance(slack_matrix(s.form, prod)), "product left the set");
  }
  return res;
}

inline PropertyResult hp_order(Rng& rng, int trials = 200) {
  PropertyResult res;
  while (res.trials < trials) {
    int q = rng.integer(1, 3);
    HermitianMatrix t2 = random_weight(rng, q);
    // T1 = T2^{1/2} K T2^{1/2} with 0 <= K <= I, so T1 <= T2
    Matrix root = hermitian_power(t2, Power::Half).matrix();
    Matrix k = random_weight(rng, q, 1.0).matrix();
    Matrix t1m = root * k * root;
    HermitianMatrix t1(0.5 * (t1m + t1m.adjoint()));
    if (!hp_order_check(t1, t2)) {
      res.record(false, "order check rejected T1 <= T2");
      continue;
    }
    QuadraticForm f2 = class_form(ClassSpec::hyper_positive(t2), q);
    QuadraticForm f1 = class_form(ClassSpec::hyper_positive(t1), q);
    Matrix e = random_member(rng, f2, Matrix::Identity(q, q), 0.4);
    res.record(membership_slack(f1, e) >= -psd_tolerance(slack_matrix(f1, e)), "HP(T2) member outside HP(T1)");
  }
  return res;
}

inline PropertyResult cayley_bridge(Rng& rng, int trials = 100) {
  PropertyResult res;
  FrequencyGrid grid = FrequencyGrid::standard();
  while (res.trials < trials) {
    int n = rng.integer(1, 3), m = rng.integer(1, 2);
    Realization r = rng.internally_passive(n, m, rng.integer(0, 1) == 1);
    double beta = rng.uniform(0.0, 0.9);
    MembershipReport hp = sweep_membership(r, ClassSpec::hyper_positive(beta), grid);
    // near-boundary instances are decided by tolerance, not by the bridge
    if (std::abs(hp.min_slack) < 1e-6) continue;
    MembershipReport hb = sweep_membership(cayley_function(r), ClassSpec::hyper_bounded(beta), grid);
    res.record(hp.member == hb.member, "Cayley image disagrees with HP membership");
  }
  return res;
}

inline PropertyResult function_inverse_closure(Rng& rng, int trials = 100) {
  PropertyResult res;
  while (res.trials < trials) {
    int n = rng.integer(1, 3), m = rng.integer(1, 2);
    bool complex_entries = rng.integer(0, 1) == 1;
    Realization base = rng.internally_passive(n, m, complex_entries);
    double certified = certified_beta(base, HermitianMatrix::identity(n));
    if (certified < 0.05) continue;
    Realization r = similarity(base, rng.nonsingular(n, complex_entries));
    double beta = rng.uniform(0.1, 0.95) * certified;
    HermitianMatrix t = random_weight(rng, m, beta);
    t = HermitianMatrix(t.matrix() + 1e-3 * beta * Matrix::Identity(m, m));
    bool member = sweep_membership(r, ClassSpec::hyper_positive(t)).member;
    bool inverse_member = sweep_membership(function_inverse(r), ClassSpec::hyper_positive(t)).member;
    res.record(!member || inverse_member, "function inverse left HP(T)");
  }
  return res;
}

inline PropertyResult truncation_preservation(Rng& rng, int trials = 50) {
  PropertyResult res;
  while (res.trials < trials) {
    int n = rng.integer(2, 4), m = rng.integer(1, 2);
    Realization r = rng.internally_passive(n, m, rng.integer(0, 1) == 1);
    double beta = certified_beta(r, HermitianMatrix::identity(n));
    if (beta < 0.02) continue;
    HermitianMatrix t = HermitianMatrix::scalar(m, 0.9 * beta);
    int nu = rng.integer(1, n - 1), mu = rng.integer(1, m);
    Matrix states = rng.matrix(n, nu, true).householderQr().householderQ() * Matrix::Identity(n, nu);
    Matrix ports = rng.matrix(m, mu, true).householderQr().householderQ() * Matrix::Identity(m, mu);
    IsometricTruncation cut = truncate_isometry(r, {states, ports}, t);
    double tol = 10.0 * psd_tolerance(kyp_slack_matrix(cut.realization, HermitianMatrix::identity(nu), cut.weight));
    res.record(cut.slack >= -tol, "truncation lost the certificate");
  }
  return res;
}

}  // namespace hyperpos::testing
