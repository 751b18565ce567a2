#pragma once

#include <optional>
#include <vector>

#include "hyperpos/function_classes.hpp"
#include "hyperpos/kyp.hpp"
#include "hyperpos/realization.hpp"

namespace hyperpos {

struct TruncationIsometry {
  Matrix states;  // n x nu
  Matrix ports;   // m x mu
};

struct RealizationPolytope {
  std::vector<Realization> vertices;
  std::vector<double> weights;
  void validate() const;
};

// Keeps the leading nu balanced states. Rejects a Hankel tie at the cut.
Realization truncate_balanced(const BalancedForm& bal, int nu);

struct IsometricTruncation {
  Realization realization;
  HermitianMatrix weight;  // ports* T ports
  double slack = 0.0;      // certificate slack with H = I
};
// Compression of an internally passive realization (certified with H = I at weight T).
IsometricTruncation truncate_isometry(const Realization& r, const TruncationIsometry& iso, const HermitianMatrix& t);

Realization combine_realizations(const RealizationPolytope& poly);

struct CombinationReport {
  Realization realization;
  std::vector<double> vertex_betas;  // certified with H = I
  double lower_bound = 0.0;
  std::optional<double> measured_beta;  // sweep-based, when the result is Hurwitz
  double certificate_slack = 0.0;       // H = I at lower_bound
};
// Blockwise combination sum_j diag(Us_j, Up_j)* R_j diag(Us_j, Up_j) of internally passive vertices.
CombinationReport combine_internally_passive(const std::vector<Realization>& vertices,
                                             const std::vector<TruncationIsometry>& family,
                                             const FrequencyGrid& grid = FrequencyGrid::standard());

struct HullCommutation {
  Realization lhs;
  Realization rhs;
  double defect = 0.0;
};
HullCommutation hull_truncation_commutes(const RealizationPolytope& poly, int nu);

struct PreservationReport {
  bool member = false;
  bool certified = false;
  double certificate_slack = 0.0;
  double beta_full = 0.0;
  double beta_reduced = 0.0;
};
PreservationReport hp_preservation_report(const Realization& full, const Realization& reduced, double beta,
                                          const FrequencyGrid& grid = FrequencyGrid::standard());

}  // namespace hyperpos
