#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "hyperpos/class_spec.hpp"
#include "hyperpos/realization.hpp"

namespace hyperpos {

// Sample frequencies on the imaginary axis, optionally with s = infinity.
struct FrequencyGrid {
  std::vector<double> omegas;
  bool include_infinity = true;

  // 0 plus `count` log-spaced points in [lo, hi].
  static FrequencyGrid standard(int count = 401, double lo = 1e-6, double hi = 1e6);
  void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct MembershipReport {
  bool member = false;
  double min_slack = kInfinity;
  double argmin_omega = 0.0;  // kInfinity when the worst point is s = infinity
  bool analyticity_ok = false;
  double tolerance = 0.0;
  int skipped_points = 0;
};

MembershipReport sweep_membership(const Realization& r, const ClassSpec& spec,
                                  const FrequencyGrid& grid = FrequencyGrid::standard());

struct ExtremalReport {
  double value = 0.0;
  bool zero_flag = false;  // merely positive (or not even that): no positive weight works
};

ExtremalReport beta_max(const Realization& r, const FrequencyGrid& grid = FrequencyGrid::standard(),
                        double tol = 1e-8);
ExtremalReport t_ray_max(const Realization& r, const HermitianMatrix& direction,
                         const FrequencyGrid& grid = FrequencyGrid::standard(), double tol = 1e-8);
double sp_margin(const Realization& r, const FrequencyGrid& grid = FrequencyGrid::standard(), double tol = 1e-8);

// Realization of (I - F)(I + F)^{-1}.
Realization cayley_function(const Realization& r);

struct AffinePair {
  Realization plus;   // S (F - T^{-1}) S with S = (I + T^{-1})^{-1/2}
  Realization minus;  // its negative
};
AffinePair affine_hb_maps(const Realization& r, const HermitianMatrix& t);

// Realization of (I - T^2)^{-1/2} F(conj s)^* (I - T^2)^{1/2}.
Realization left_conjugate(const Realization& r, const HermitianMatrix& t);

struct Disk {
  cplx center;
  double radius = 0.0;
};
struct DiskParams {
  Disk center_disk;
  Disk inv_disk;
  bool inv_is_half_plane = false;
};
DiskParams disk_params(double beta);

bool canonical_check(const Realization& r, const HermitianMatrix& t,
                     const FrequencyGrid& grid = FrequencyGrid::standard());

// Slack of the class inequality at a single value F(s).
double pointwise_slack(const Matrix& f, const ClassSpec& spec);

}  // namespace hyperpos
