#pragma once

#include <optional>
#include <vector>

#include "hyperpos/hermat.hpp"

namespace hyperpos {

// State-space data x' = Ax + Bu, y = Cx + Du.
struct Realization {
  Matrix A, B, C, D;

  Realization() = default;
  Realization(Matrix a, Matrix b, Matrix c, Matrix d);
  // Constant system with no states.
  static Realization constant(const Matrix& d);
  // Scalar convenience: 1x1 blocks from reals.
  static Realization scalar(double a, double b, double c, double d);

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
  bool square_ports() const { return m() == p(); }

  // [[A, B], [C, D]]
  Matrix array() const;
  static Realization from_array(const Matrix& r, int n);

  void validate() const;
};

bool operator==(const Realization& a, const Realization& b);

// C (sI - A)^{-1} B + D
Matrix evaluate(const Realization& r, cplx s);
Matrix evaluate_at_infinity(const Realization& r);

struct PoleReport {
  std::vector<cplx> eigenvalues;
  bool hurwitz = true;
  bool analytic_in_right_half = true;
};
PoleReport poles(const Realization& r);

struct PbhWitness {
  cplx lambda;
  Vector vector;
  bool output_side = true;  // true: unobservable mode, false: uncontrollable mode
};
struct PbhReport {
  bool controllable = true;
  bool observable = true;
  std::vector<PbhWitness> witnesses;
  bool minimal() const { return controllable && observable; }
};
PbhReport pbh_test(const Realization& r);
// Rank of [A - lambda I; C] style stacks, singular value threshold 1e-9 ||.||_2.
int numerical_rank(const Matrix& m);

Realization similarity(const Realization& r, const Matrix& v);
// Full (n+m) congruence U* R U. Does not preserve the transfer function.
Realization array_congruence(const Realization& r, const Matrix& u);

// Realization of F(s)^{-1}; needs D invertible.
Realization function_inverse(const Realization& r);
// Matrix inverse of the whole array, read back as a realization.
Realization array_inverse(const Realization& r);

struct Gramians {
  HermitianMatrix controllability;
  HermitianMatrix observability;
};
Gramians gramians(const Realization& r);

struct BalancedForm {
  Realization realization;
  std::vector<double> sigma;
  Matrix transform;
};
BalancedForm balance(const Realization& r);
// Wraps a realization whose Gramians already coincide and are diagonal.
BalancedForm assume_balanced(const Realization& r, double tol = 1e-8);

Realization series_add(const Realization& r1, const Realization& r2);
// (A*, C*, B*, D*): realizes F(conj(s))^*.
Realization adjoint_system(const Realization& r);

// max over points of ||F1 - F2||_F / (1 + ||F1||_F)
double transfer_distance(const Realization& r1, const Realization& r2, const std::vector<cplx>& points);
std::vector<cplx> test_points(int count, double lo = 1e-3, double hi = 1e3);

}  // namespace hyperpos
