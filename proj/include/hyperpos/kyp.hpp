#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hyperpos/hermat.hpp"
#include "hyperpos/realization.hpp"

namespace hyperpos {

enum class CertificateMethod { Riccati, SpectralAscent, UserSupplied };
std::string to_string(CertificateMethod m);
CertificateMethod certificate_method_from_string(const std::string& s);

struct Certificate {
  HermitianMatrix H;
  HermitianMatrix T;
  double slack = 0.0;
  CertificateMethod method = CertificateMethod::UserSupplied;
};

// diag(-H, I) R + R* diag(-H, I) - G* diag(T, T) G  with  G = [[C, D], [0, I]].
Matrix kyp_slack_matrix(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t);
// Smallest eigenvalue of the slack matrix. H must be positive definite.
double verify_certificate(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t);
// Recomputes the slack of a stored certificate; throws if it drifted by more than 1e-9.
void check_certificate(const Realization& r, const Certificate& c);

struct SearchOptions {
  std::uint64_t seed = 20240601;
  int restarts = 5;
  int iterations = 2000;
  double infeasible_below = -1e-6;
};

struct CertificateSearch {
  std::optional<Certificate> certificate;
  double best_slack = -kInf;
  CertificateMethod method = CertificateMethod::SpectralAscent;
  bool minimal_warning = false;
  static constexpr double kInf = 1e300;
};

CertificateSearch find_certificate(const Realization& r, const HermitianMatrix& t, const SearchOptions& opt = {});

struct ArrayInertiaReport {
  bool observable_ac = false;
  bool observable_rq = false;
  int left_count = 0;
  int right_count = 0;
  int axis_count = 0;
  bool array_singular = false;
};
ArrayInertiaReport array_inertia_analysis(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t);

struct InversionResult {
  Realization realization;
  double slack = 0.0;
};
// Array inverse checked against the same (H, T).
InversionResult invert_with_certificate(const Realization& r, const HermitianMatrix& h, const HermitianMatrix& t);

// State similarity making H the identity: x -> H^{1/2} x.
Realization normalize_internally_passive(const Realization& r, const HermitianMatrix& h);

// Largest beta in [0, 1) with verify_certificate(r, h, beta I) >= -tol; -1 when beta = 0 already fails.
double certified_beta(const Realization& r, const HermitianMatrix& h, double tol = 1e-10);

// Finds a certificate at weight beta I and returns the normalized realization.
Realization internally_passive_form(const Realization& r, double beta, const SearchOptions& opt = {});

}  // namespace hyperpos
