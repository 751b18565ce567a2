#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace hyperpos {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Zero band for every "is semidefinite" decision: 1e-9 * (1 + ||M||_2).
double psd_tolerance(const Matrix& m);
double herm_tolerance(const Matrix& m);

// Frobenius closeness with relative floor, used for X = Y, V = 0 style tests.
bool nearly_equal(const Matrix& a, const Matrix& b, double rel = 1e-10);

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Rejects inputs farther than 1e-12 (1 + ||M||_F) from Hermitian, then symmetrizes.
  explicit HermitianMatrix(const Matrix& m);
  static HermitianMatrix identity(int q);
  static HermitianMatrix scalar(int q, double value);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Eigen::VectorXd eigenvalues() const;

 private:
  Matrix m_;
};

struct Inertia {
  int plus = 0;
  int zero = 0;
  int minus = 0;
  bool operator==(const Inertia&) const = default;
};

Inertia inertia(const HermitianMatrix& m);
double lambda_min(const HermitianMatrix& m);
double lambda_max(const HermitianMatrix& m);
// Smallest eigenvalue of the Hermitian part; no Hermitian check.
double lambda_min_herm(const Matrix& m);
bool is_psd(const HermitianMatrix& m);
bool is_pd(const HermitianMatrix& m);

enum class Power { Half, NegHalf, Inverse, Pseudo };
HermitianMatrix hermitian_power(const HermitianMatrix& m, Power p);

// Eigenvalues of a general square matrix, ordered by (Re, Im).
std::vector<cplx> sorted_eigenvalues(const Matrix& a);

enum class GramianSide { Controllability, Observability };
// Controllability: A X + X A* = -Q. Observability: A* X + X A = -Q.
HermitianMatrix solve_lyapunov(const Matrix& a, const HermitianMatrix& q, GramianSide side);

// (I - A)(I + A)^{-1}
Matrix cayley_matrix(const Matrix& a);

struct HyperPairSlacks {
  double lyapunov = 0.0;
  std::optional<double> stein;  // empty when -1 is an eigenvalue of A
};
HyperPairSlacks hyper_pair_slacks(const Matrix& a, const HermitianMatrix& h, const HermitianMatrix& t);

}  // namespace hyperpos
