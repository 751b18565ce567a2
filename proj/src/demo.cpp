#include "hyperpos/demo.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

#include "hyperpos/corpus.hpp"
#include "hyperpos/errors.hpp"
#include "hyperpos/function_classes.hpp"
#include "hyperpos/impedance.hpp"
#include "hyperpos/io.hpp"
#include "hyperpos/kyp.hpp"
#include "hyperpos/qmi.hpp"
#include "hyperpos/reduction.hpp"

namespace hyperpos {

namespace {

void check(DemoResult& r, std::string quantity, double value, double expected, double tol, std::string source) {
  bool pass = std::abs(value - expected) <= tol;
  r.rows.push_back({std::move(quantity), value, expected, tol, std::move(source), pass});
}

void check_true(DemoResult& r, std::string quantity, bool value, std::string source) {
  check(r, std::move(quantity), value ? 1.0 : 0.0, 1.0, 0.0, std::move(source));
}

template <class F>
bool throws_kind(F&& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

double max_entry_gap(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

DemoResult sided_demo() {
  DemoResult r{"remark1-4b", {}, {}};
  Matrix f = corpus::sided_constant();
  QuadraticForm form = class_form(ClassSpec::hyper_positive(corpus::sided_weight()), 2);
  double right = membership_slack(form, f, Side::Right);
  double left = membership_slack(form, f, Side::Left);
  bool right_ok = right >= -psd_tolerance(slack_matrix(form, f, Side::Right));
  bool left_ok = left >= -psd_tolerance(slack_matrix(form, f, Side::Left));
  check_true(r, "exactly one side holds", right_ok != left_ok, "reference");
  check(r, "right slack", right, -0.0164, 5e-4, "derived");
  check(r, "left slack", left, 0.00367, 5e-5, "derived");
  r.notes.push_back(std::string("holding side: ") + (left_ok ? "left (F T F*)" : "right (F* T F)"));
  r.notes.push_back("the source text states the right-sided inequality holds; the computed eigenvalues give the reverse");
  return r;
}

DemoResult disks_demo() {
  DemoResult r{"fig1-disks", {}, {}};
  DiskParams d = disk_params(0.6);
  check(r, "center disk radius, beta=3/5", d.center_disk.radius, 0.5, 1e-12, "reference");
  check(r, "inverse disk center, beta=3/5", d.inv_disk.center.real(), 5.0 / 3.0, 1e-12, "reference");
  check(r, "inverse disk radius, beta=3/5", d.inv_disk.radius, 4.0 / 3.0, 1e-12, "reference");
  DiskParams e = disk_params(7.0 / 25.0);
  check(r, "inverse disk center, beta=7/25", e.inv_disk.center.real(), 25.0 / 7.0, 1e-12, "reference");
  check(r, "inverse disk radius, beta=7/25", e.inv_disk.radius, 24.0 / 7.0, 1e-12, "reference");
  DiskParams z = disk_params(0.0);
  check(r, "center disk radius, beta=0", z.center_disk.radius, 1.0, 1e-12, "reference");
  check_true(r, "inverse disk is a half-plane at beta=0", z.inv_is_half_plane, "reference");
  double worst = 0.0;
  for (double beta : {0.1, 0.6, 7.0 / 25.0, 0.9}) {
    DiskParams p = disk_params(beta);
    for (int k = 0; k < 64; ++k) {
      cplx zb = std::polar(p.center_disk.radius, 2.0 * M_PI * k / 64.0);
      cplx w = (1.0 - zb) / (1.0 + zb);
      worst = std::max(worst, std::abs(std::abs(w - p.inv_disk.center) - p.inv_disk.radius));
    }
  }
  check(r, "Cayley image of center circle on inverse circle", worst, 0.0, 1e-10, "derived");
  return r;
}

DemoResult maps_demo() {
  DemoResult r{"fig2-maps", {}, {}};
  Realization f = Realization::scalar(-1, 1, 2, 1);
  check(r, "beta_max of (s+3)/(s+1)", beta_max(f).value, 0.6, 1e-6, "reference");
  auto pts = test_points(100);
  Realization g1 = cayley_function(f);
  check(r, "Cayley image vs -1/(s+2)", transfer_distance(g1, Realization::scalar(-2, 1, -1, 0), pts), 0.0, 1e-10, "reference");
  AffinePair g = affine_hb_maps(f, HermitianMatrix::scalar(1, 0.6));
  // (2-s)/(4(s+1)) = -1/4 + (3/4)/(s+1)
  Realization g2_ref = Realization::scalar(-1, 1, 0.75, -0.25);
  check(r, "affine image vs (2-s)/(4(s+1))", transfer_distance(g.plus, g2_ref, pts), 0.0, 1e-10, "reference");
  Realization g3_ref = Realization::scalar(-1, 1, -0.75, 0.25);
  check(r, "negated affine image vs (s-2)/(4(s+1))", transfer_distance(g.minus, g3_ref, pts), 0.0, 1e-10, "reference");
  for (const auto* gi : {&g1, &g.plus, &g.minus})
    check_true(r, "image in HB(3/5)", sweep_membership(*gi, ClassSpec::hyper_bounded(0.6)).member, "derived");
  return r;
}

DemoResult nyquist_demo() {
  DemoResult r{"fig3-nyquist", {}, {}};
  Matrix f1 = evaluate(corpus::nyquist_f1(1.0), cplx(0, 1));
  check(r, "Re f1(i)", f1(0, 0).real(), 0.6, 1e-12, "reference");
  check(r, "Im f1(i)", f1(0, 0).imag(), -0.8, 1e-12, "reference");
  Matrix f2 = evaluate(corpus::nyquist_f2(1.0), cplx(0, -1));
  check(r, "Re f2(-i)", f2(0, 0).real(), 41.0 / 15.0, 1e-12, "derived");
  check(r, "Im f2(-i)", f2(0, 0).imag(), -0.8, 1e-12, "derived");
  r.notes.push_back("f2 reaches 41/15 - 0.8i at s = -i; at s = +i the value is the conjugate");
  HermitianMatrix t = HermitianMatrix::scalar(1, 0.6);
  check_true(r, "f3 (c=2) canonical", canonical_check(corpus::nyquist_f3(2.0), t), "reference");
  FrequencyGrid dense;
  for (int k = 0; k <= 20000; ++k) dense.omegas.push_back(10.0 * k / 20000.0);
  check(r, "beta_max f1", beta_max(corpus::nyquist_f1(1.0), dense).value, 0.5840062088, 1e-6, "derived");
  check_true(r, "f1 not canonical", !canonical_check(corpus::nyquist_f1(1.0), t), "derived");
  check(r, "beta_max f2", beta_max(corpus::nyquist_f2(1.0), dense).value, 0.5973271326, 1e-6, "derived");
  check(r, "f1 HP(3/5) slack at omega=sqrt(3/2)",
        pointwise_slack(evaluate(corpus::nyquist_f1(1.0), cplx(0, std::sqrt(1.5))), ClassSpec::hyper_positive(0.6)), -0.0256,
        1e-12, "derived");
  r.notes.push_back("f1 and f2 touch the beta=3/5 circle at omega=a but leave it near omega=sqrt(3/2)a; both fall short of 3/5");
  return r;
}

DemoResult inversion_demo() {
  DemoResult r{"ex4-6-inversion", {}, {}};
  Matrix arr(3, 3);
  arr << -1, 1, 0, 0, -1, 1, 1, 0, 0;
  Matrix expect(3, 3);
  expect << 0, 0, 1, 1, 0, 1, 1, 1, 1;
  Realization inv = array_inverse(Realization::from_array(arr, 2));
  check(r, "3x3 array inverse entry gap", max_entry_gap(inv.array(), expect), 0.0, 1e-14, "reference");
  bool rejected = throws_kind([] { array_inverse(Realization::scalar(-1, -1, 1, 1)); }, ErrorKind::Singular);
  check_true(r, "[[-1,-1],[1,1]] rejected as singular", rejected, "reference");
  return r;
}

DemoResult chain_demo() {
  DemoResult r{"ex4-7-chain", {}, {}};
  Realization fp = Realization::scalar(-1, 1, 1, 0);
  Realization inv = array_inverse(fp);
  Matrix expect(2, 2);
  expect << 0, 1, 1, 1;
  check(r, "array inverse entry gap", max_entry_gap(inv.array(), expect), 0.0, 1e-14, "reference");
  double margin = sp_margin(fp);
  check_true(r, "1/(s+1) strictly positive", margin > 0.0 && margin < 1.0, "reference");
  check_true(r, "1/s + 1 positive", sweep_membership(inv, ClassSpec::positive()).member, "reference");
  check(r, "1/s + 1 strict margin", sp_margin(inv), 0.0, 0.0, "reference");
  check_true(r, "1/s + 1 not lossless", !sweep_membership(inv, ClassSpec::lossless()).member, "reference");
  return r;
}

DemoResult circuit_demo() {
  DemoResult r{"ex4-8-circuit", {}, {}};
  check(r, "beta(R1=R2=C=1)", beta_of_circuit(1, 1, 1), 0.8, 1e-6, "derived");
  check(r, "beta(R1=0.3, R2=1)", beta_of_circuit(0.3, 1, 1), corpus::circuit_beta_formula(0.3, 1), 1e-6, "derived");
  auto pts = test_points(100);
  Realization z = build_impedance(rc_circuit(1, 1, 1));
  check(r, "built Z vs table", transfer_distance(z, corpus::rz_table(1, 1, 1), pts), 0.0, 1e-9, "reference");
  check(r, "1/Z vs Y table", transfer_distance(function_inverse(z), corpus::ry_table(1, 1, 1), pts), 0.0, 1e-9, "reference");
  check(r, "array inverse of Z table vs Yhat table",
        max_entry_gap(array_inverse(corpus::rz_table(1, 1, 1)).array(), corpus::ryhat_table(1, 1, 1).array()), 0.0, 1e-12,
        "reference");
  check(r, "array inverse of Y table vs Zhat table",
        max_entry_gap(array_inverse(corpus::ry_table(1, 1, 1)).array(), corpus::rzhat_table(1, 1, 1).array()), 0.0, 1e-12,
        "reference");
  Realization zhat = build_impedance(rl_circuit(1, 1, 1));
  check(r, "built RL circuit vs Zhat table", transfer_distance(zhat, corpus::rzhat_table(1, 1, 1), pts), 0.0, 1e-9, "reference");
  HermitianMatrix t = HermitianMatrix::scalar(1, 0.79);
  auto search = find_certificate(corpus::rz_table(1, 1, 1), t);
  check_true(r, "Z certified at beta=0.79", search.certificate.has_value(), "derived");
  if (search.certificate) {
    auto inv = invert_with_certificate(corpus::rz_table(1, 1, 1), search.certificate->H, t);
    check_true(r, "array inverse keeps the same certificate", inv.slack >= -1e-7, "reference");
  }
  for (const auto& sys : {corpus::ry_table(1, 1, 1), corpus::ryhat_table(1, 1, 1), corpus::rzhat_table(1, 1, 1)})
    check_true(r, "derived impedance in HP(0.8)", beta_max(sys).value >= 0.8 - 1e-6, "reference");
  return r;
}

DemoResult singular_weight_demo() {
  DemoResult r{"ex4-9-singularT", {}, {}};
  HermitianMatrix id = HermitianMatrix::identity(2);
  Matrix tm = Matrix::Zero(2, 2);
  tm(0, 0) = 0.5;
  HermitianMatrix t(tm);
  double at_edge = verify_certificate(corpus::coupled_pair(4.0 / 3.0), id, t);
  double past_edge = verify_certificate(corpus::coupled_pair(4.0 / 3.0 + 0.01), id, t);
  check_true(r, "slack >= -1e-8 at gamma=4/3", at_edge >= -1e-8, "reference");
  check_true(r, "slack < 0 at gamma=4/3+0.01", past_edge < 0.0, "reference");
  check_true(r, "slack < -1e-4 at gamma=1.35", verify_certificate(corpus::coupled_pair(1.35), id, t) < -1e-4, "reference");
  ExtremalReport ray = t_ray_max(corpus::coupled_pair(1.0), id);
  check_true(r, "no positive scalar weight (flag)", ray.zero_flag && ray.value == 0.0, "reference");
  Matrix dir = Matrix::Zero(2, 2);
  dir(0, 0) = 1.0;
  check_true(r, "ray along diag(1,0) reaches 1/2", t_ray_max(corpus::coupled_pair(1.0), HermitianMatrix(dir)).value >= 0.5 - 1e-8,
             "reference");
  check_true(r, "no certificate at beta=0.1",
             !find_certificate(corpus::coupled_pair(1.0), HermitianMatrix::scalar(2, 0.1)).certificate.has_value(), "reference");
  return r;
}

DemoResult beta_demo() {
  DemoResult r{"ex5-1-beta", {}, {}};
  Realization f = Realization::scalar(-1, 1, 1, 1);
  check(r, "beta_max of (s+2)/(s+1)", beta_max(f).value, 0.8, 1e-6, "reference");
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  Realization g = array_congruence(f, swap);
  Matrix expect(2, 2);
  expect << 1, 1, 1, -1;
  check(r, "swapped array entry gap", max_entry_gap(g.array(), expect), 0.0, 0.0, "reference");
  check_true(r, "swapped array is not Hurwitz", !poles(g).hurwitz, "reference");
  check_true(r, "s/(1-s) is not positive", !sweep_membership(g, ClassSpec::positive()).member, "reference");
  return r;
}

Realization port_truncation(double gamma) {
  TruncationIsometry iso{Matrix::Identity(2, 2), Matrix::Identity(2, 1)};
  return truncate_isometry(corpus::coupled_pair(gamma), iso, HermitianMatrix(Matrix::Zero(2, 2))).realization;
}

DemoResult truncation_demo() {
  DemoResult r{"ex5-6-truncation", {}, {}};
  Matrix expect(3, 3);
  expect << -1, 0, 1, 0, -2, 1, 1, 1, 1;
  check(r, "truncated array entry gap (gamma=1)", max_entry_gap(port_truncation(1.0).array(), expect), 0.0, 0.0, "reference");
  for (double gamma : {0.5, 1.0, 2.0}) {
    std::ostringstream q;
    q << "beta_max of truncated scalar, gamma=" << gamma;
    check(r, q.str(), beta_max(port_truncation(gamma)).value, corpus::truncation_beta_formula(gamma), 1e-6, "reference");
  }
  check(r, "gamma=1 value", corpus::truncation_beta_formula(1.0), 1.0 / 1.45, 1e-12, "derived");
  return r;
}

DemoResult hull_demo() {
  DemoResult r{"sec6-hull", {}, {}};
  double worst = 0.0;
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = 10.0;
  sigma(1, 1) = 1.0;
  for (auto [a, d, dd] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 1.0, 2.0}, {1.0, 2.0, 1.0}, {-0.7, 3.0, 0.5}}) {
    Gramians g = gramians(corpus::hull_vertex(a, d, dd));
    worst = std::max({worst, (g.controllability.matrix() - sigma).norm(), (g.observability.matrix() - sigma).norm()});
  }
  check(r, "Gramian gap from diag(10,1)", worst, 0.0, 1e-10, "reference");
  Realization v = corpus::hull_vertex(2.0, 1.0, 2.0);
  Realization cut = truncate_balanced(assume_balanced(v), 1);
  Matrix expect(2, 2);
  expect << -4.0 / 5.0, 4.0, 4.0, 2.0;
  check(r, "order-1 truncation entry gap", max_entry_gap(cut.array(), expect), 0.0, 0.0, "reference");
  RealizationPolytope poly{{corpus::hull_vertex(1, 1, 1), corpus::hull_vertex(2, 1, 2), corpus::hull_vertex(1, 2, 1)}, {0.5, 0.3, 0.2}};
  check(r, "hull truncation commutation defect", hull_truncation_commutes(poly, 1).defect, 0.0, 1e-12, "reference");
  double beta_v = certified_beta(v, HermitianMatrix::identity(2));
  PreservationReport rep = hp_preservation_report(v, cut, beta_v);
  check_true(r, "truncated vertex certified at the vertex beta", rep.member && rep.certified, "derived");
  return r;
}

const std::map<std::string, std::function<DemoResult()>>& registry() {
  static const std::map<std::string, std::function<DemoResult()>> table{
      {"remark1-4b", sided_demo},          {"fig1-disks", disks_demo},
      {"fig2-maps", maps_demo},            {"fig3-nyquist", nyquist_demo},
      {"ex4-6-inversion", inversion_demo}, {"ex4-7-chain", chain_demo},
      {"ex4-8-circuit", circuit_demo},     {"ex4-9-singularT", singular_weight_demo},
      {"ex5-1-beta", beta_demo},           {"ex5-6-truncation", truncation_demo},
      {"sec6-hull", hull_demo},
  };
  return table;
}

}  // namespace

bool DemoResult::pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return !rows.empty();
}

const std::vector<std::string>& demo_ids() {
  static const std::vector<std::string> ids{"remark1-4b",      "fig1-disks",      "fig2-maps",        "fig3-nyquist",
                                            "ex4-6-inversion", "ex4-7-chain",     "ex4-8-circuit",    "ex4-9-singularT",
                                            "ex5-1-beta",      "ex5-6-truncation", "sec6-hull"};
  return ids;
}

DemoResult run_demo(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw Error(ErrorKind::Range, "unknown demo id '" + id + "'");
  return it->second();
}

void print_demo(const DemoResult& result, std::ostream& out) {
  out << "demo " << result.id << "\n";
  for (const auto& row : result.rows) {
    out << "  " << (row.pass ? "PASS" : "FAIL") << "  " << row.quantity << " = " << format_double(row.value)
        << "  expected " << format_double(row.expected) << " +/- " << format_double(row.tolerance) << "  [" << row.source
        << "]\n";
  }
  for (const auto& note : result.notes) out << "  note: " << note << "\n";
  out << "  " << (result.pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace hyperpos
