#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "hyperpos/demo.hpp"
#include "hyperpos/errors.hpp"
#include "hyperpos/function_classes.hpp"
#include "hyperpos/impedance.hpp"
#include "hyperpos/io.hpp"
#include "hyperpos/kyp.hpp"
#include "hyperpos/reduction.hpp"

using namespace hyperpos;

namespace {

constexpr int kNonMember = 2;
constexpr int kInputError = 3;
constexpr int kNumericalError = 4;

// A weight or certificate file holds either a bare matrix or an object with the named key.
HermitianMatrix hermitian_from_file(const std::string& path, const std::string& key, int q) {
  Json j = read_json_file(path);
  if (j.is_object()) {
    if (!j.contains(key)) throw Error(ErrorKind::Parse, path + ": missing key '" + key + "'");
    j = j.at(key);
  }
  return HermitianMatrix(matrix_from_json(j, q, q));
}

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

HermitianMatrix weight_from(const std::string& t_file, std::optional<double> beta, int q) {
  if (!t_file.empty() && beta) throw Error(ErrorKind::Range, "give either --T or --beta, not both");
  if (beta) return HermitianMatrix::scalar(q, *beta);
  if (!t_file.empty()) return hermitian_from_file(t_file, "T", q);
  throw Error(ErrorKind::Range, "a weight is required (--T or --beta)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperpos: hyper-positive and hyper-bounded realization workbench"};
  app.require_subcommand(1);

  std::string input, out, t_file, h_file, save_file, mode = "array";
  std::optional<double> beta;
  int order = 0, grid_points = 401;
  SearchOptions search;
  bool all_demos = false, mirror = false;
  std::string demo_id;

  auto add_grid = [&](CLI::App* c) { c->add_option("--grid", grid_points, "number of sweep frequencies")->check(CLI::PositiveNumber); };
  auto add_out = [&](CLI::App* c) { c->add_option("-o,--out", out, "write JSON here instead of stdout"); };

  auto* certify = app.add_subcommand("certify", "find or check a KYP certificate for HP(T)");
  certify->add_option("realization", input, "realization.json")->required();
  certify->add_option("--T", t_file, "weight file (matrix or {\"T\": ...})");
  certify->add_option("--beta", beta, "scalar weight beta*I");
  certify->add_option("--H", h_file, "certificate to verify instead of searching");
  certify->add_option("--save", save_file, "write the certificate JSON here");
  certify->add_option("--seed", search.seed, "seed for the spectral-ascent fallback");
  certify->add_option("--restarts", search.restarts, "spectral-ascent restarts");
  certify->add_option("--iterations", search.iterations, "spectral-ascent iterations per restart");

  auto* beta_cmd = app.add_subcommand("beta", "largest scalar beta with F in HP(beta I)");
  beta_cmd->add_option("realization", input, "realization.json")->required();
  add_grid(beta_cmd);

  auto* cayley = app.add_subcommand("cayley", "Cayley image (I+F)^{-1}(I-F)");
  cayley->add_option("realization", input, "realization.json")->required();
  add_out(cayley);

  auto* affine = app.add_subcommand("affine", "affine HP(T) -> HB(T) maps");
  affine->add_option("realization", input, "realization.json")->required();
  affine->add_option("--beta", beta, "scalar weight")->required();
  affine->add_option("--T", t_file, "weight file");
  add_out(affine);

  auto* invert = app.add_subcommand("invert", "array or function inverse");
  invert->add_option("realization", input, "realization.json")->required();
  invert->add_option("--mode", mode, "array|function")->check(CLI::IsMember({"array", "function"}));
  add_out(invert);

  auto* truncate = app.add_subcommand("truncate", "balanced truncation");
  truncate->add_option("realization", input, "realization.json")->required();
  truncate->add_option("--order", order, "retained states")->required()->check(CLI::NonNegativeNumber);
  add_out(truncate);

  auto* combine = app.add_subcommand("combine", "convex combination of internally passive vertices");
  combine->add_option("polytope", input, "polytope.json")->required();
  add_grid(combine);
  add_out(combine);

  auto* impedance = app.add_subcommand("impedance", "realize a driving-point impedance tree");
  impedance->add_option("tree", input, "tree.json")->required();
  add_out(impedance);

  auto* nyquist = app.add_subcommand("nyquist", "frequency response CSV");
  nyquist->add_option("realization", input, "realization.json")->required();
  nyquist->add_option("--out", out, "CSV path")->required();
  nyquist->add_flag("--mirror", mirror, "also sample negative frequencies");
  add_grid(nyquist);

  auto* demo = app.add_subcommand("demo", "run a stock example");
  demo->add_option("id", demo_id, "demo id");
  demo->add_flag("--all", all_demos, "run every demo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    FrequencyGrid grid = FrequencyGrid::standard(grid_points);

    if (*certify) {
      Realization r = realization_from_json(read_json_file(input));
      HermitianMatrix t = weight_from(t_file, beta, r.m());
      Certificate cert;
      if (!h_file.empty()) {
        HermitianMatrix h = hermitian_from_file(h_file, "H", r.n());
        double slack = verify_certificate(r, h, t);
        cert = Certificate{h, t, slack, CertificateMethod::UserSupplied};
        if (slack < -psd_tolerance(kyp_slack_matrix(r, h, t))) {
          std::cout << "slack " << format_double(slack) << "\nstatus infeasible\n";
          return kNonMember;
        }
      } else {
        CertificateSearch found = find_certificate(r, t, search);
        if (found.minimal_warning) std::cerr << "warning: realization is not minimal\n";
        if (!found.certificate) {
          std::cout << "best_slack " << format_double(found.best_slack) << "\nstatus infeasible\n";
          return kNonMember;
        }
        cert = *found.certificate;
      }
      std::cout << "slack " << format_double(cert.slack) << "\nmethod " << to_string(cert.method) << "\nstatus certified\n";
      if (!save_file.empty()) write_text_file(save_file, certificate_to_json(cert).dump(2) + "\n");
      return 0;
    }

    if (*beta_cmd) {
      Realization r = realization_from_json(read_json_file(input));
      ExtremalReport rep = beta_max(r, grid);
      std::cout << "beta " << format_double(rep.value) << "\n";
      if (rep.zero_flag) {
        std::cout << "status not-hyper-positive\n";
        return kNonMember;
      }
      return 0;
    }

    if (*cayley) {
      emit(realization_to_json(cayley_function(realization_from_json(read_json_file(input)))), out);
      return 0;
    }

    if (*affine) {
      Realization r = realization_from_json(read_json_file(input));
      AffinePair maps = affine_hb_maps(r, weight_from(t_file, beta, r.m()));
      emit(Json{{"plus", realization_to_json(maps.plus)}, {"minus", realization_to_json(maps.minus)}}, out);
      return 0;
    }

    if (*invert) {
      Realization r = realization_from_json(read_json_file(input));
      emit(realization_to_json(mode == "array" ? array_inverse(r) : function_inverse(r)), out);
      return 0;
    }

    if (*truncate) {
      Realization r = realization_from_json(read_json_file(input));
      BalancedForm bal = balance(r);
      Json j = realization_to_json(truncate_balanced(bal, order));
      j["hankel_singular_values"] = bal.sigma;
      emit(j, out);
      return 0;
    }

    if (*combine) {
      RealizationPolytope poly = polytope_from_json(read_json_file(input));
      std::vector<TruncationIsometry> family;
      for (size_t k = 0; k < poly.vertices.size(); ++k) {
        const auto& v = poly.vertices[k];
        double root = std::sqrt(poly.weights[k]);
        family.push_back({root * Matrix::Identity(v.n(), v.n()), root * Matrix::Identity(v.m(), v.m())});
      }
      CombinationReport rep;
      try {
        rep = combine_internally_passive(poly.vertices, family, grid);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Definiteness) throw;
        std::cerr << "note: vertices are not internally passive; plain combination only\n";
        emit(Json{{"realization", realization_to_json(combine_realizations(poly))}}, out);
        return 0;
      }
      Json j{{"realization", realization_to_json(rep.realization)},
             {"vertex_betas", rep.vertex_betas},
             {"lower_bound", rep.lower_bound},
             {"certificate_slack", rep.certificate_slack}};
      if (rep.measured_beta) j["measured_beta"] = *rep.measured_beta;
      emit(j, out);
      return 0;
    }

    if (*impedance) {
      emit(realization_to_json(build_impedance(tree_from_json(read_json_file(input)))), out);
      return 0;
    }

    if (*nyquist) {
      if (mirror) {
        std::vector<double> both;
        for (auto it = grid.omegas.rbegin(); it != grid.omegas.rend(); ++it)
          if (*it > 0.0) both.push_back(-*it);
        both.insert(both.end(), grid.omegas.begin(), grid.omegas.end());
        grid.omegas = both;
      }
      nyquist_emit(realization_from_json(read_json_file(input)), grid, out);
      return 0;
    }

    if (*demo) {
      if (all_demos == !demo_id.empty()) throw Error(ErrorKind::Range, "give a demo id or --all");
      std::vector<std::string> ids = all_demos ? demo_ids() : std::vector<std::string>{demo_id};
      bool ok = true;
      for (const auto& id : ids) {
        DemoResult result = run_demo(id);
        print_demo(result, std::cout);
        ok = ok && result.pass();
      }
      return ok ? 0 : kNumericalError;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return 0;
}
