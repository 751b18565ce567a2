#pragma once

#include <vector>

#include "hyperpos/class_spec.hpp"
#include "hyperpos/hermat.hpp"

namespace hyperpos {

// The set of E with  V E + E* V + E* X E + Y >= 0  (right side).
class QuadraticForm {
 public:
  // Rejects block matrices [[X, V], [V, Y]] whose inertia is not (q, 0, q).
  QuadraticForm(HermitianMatrix x, HermitianMatrix v, HermitianMatrix y);

  const HermitianMatrix& x() const { return x_; }
  const HermitianMatrix& v() const { return v_; }
  const HermitianMatrix& y() const { return y_; }
  int dim() const { return x_.dim(); }
  Matrix block() const;

 private:
  HermitianMatrix x_, v_, y_;
};

enum class Side { Right, Left };

Matrix slack_matrix(const QuadraticForm& form, const Matrix& e, Side side = Side::Right);
double membership_slack(const QuadraticForm& form, const Matrix& e, Side side = Side::Right);

struct StructuralProfile {
  bool convex = false;
  bool inversion_closed = false;
  bool cone = false;
  bool sign_closed = false;
  bool product_closed = false;
  bool scalar_matrix_convex = false;
};
StructuralProfile structural_profile(const QuadraticForm& form);

QuadraticForm class_form(const ClassSpec& spec, int q);

// True when T2 - T1 >= 0, so every HP(T2) member is an HP(T1) member.
bool hp_order_check(const HermitianMatrix& t1, const HermitianMatrix& t2);

// sum_j U_j* E_j U_j, requiring sum_j U_j* U_j = I.
Matrix matrix_convex_combine(const std::vector<Matrix>& elements, const std::vector<Matrix>& isometries);
// Frobenius distance of sum_j U_j* U_j from the identity.
double isometry_defect(const std::vector<Matrix>& isometries);

}  // namespace hyperpos
