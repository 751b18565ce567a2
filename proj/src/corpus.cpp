#include "hyperpos/corpus.hpp"

#include <cmath>

namespace hyperpos::corpus {

namespace {

Matrix mat(int rows, int cols, std::initializer_list<double> values) {
  Matrix m(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = *it++;
  return m;
}

}  // namespace

Realization coupled_pair(double g) {
  return Realization(mat(2, 2, {-1, 0, 0, -2}), mat(2, 2, {g, g, g, g}), mat(2, 2, {g, g, g, g}), mat(2, 2, {1, 0, 0, 0}));
}

Realization hull_vertex(double alpha, double delta, double d) {
  double off = -2.0 * alpha * delta / 11.0;
  return Realization(mat(2, 2, {-alpha * alpha / 5.0, off, off, -delta * delta / 2.0}), mat(2, 1, {2 * alpha, delta}),
                     mat(1, 2, {2 * alpha, delta}), mat(1, 1, {d}));
}

Realization rz_table(double r1, double r2, double c) {
  double rc = std::sqrt(c);
  return Realization::scalar(-1.0 / (r2 * c), 1.0 / rc, 1.0 / rc, r1);
}

Realization ry_table(double r1, double r2, double c) {
  double rc = std::sqrt(c);
  return Realization::scalar(-(1.0 / c) * (1.0 / r1 + 1.0 / r2), -1.0 / (r1 * rc), 1.0 / (r1 * rc), 1.0 / r1);
}

Realization ryhat_table(double r1, double r2, double c) {
  double rc = std::sqrt(c);
  double s = r1 + r2;
  return Realization::scalar(-c * r1 * r2 / s, r2 * rc / s, r2 * rc / s, 1.0 / s);
}

Realization rzhat_table(double r1, double r2, double c) {
  double rc = std::sqrt(c);
  return Realization::scalar(-c * r2, -r2 * rc, r2 * rc, r1 + r2);
}

Realization nyquist_f1(double a) {
  return Realization(mat(2, 2, {-a, 1, 0, -a}), mat(2, 1, {0, 1}), mat(1, 2, {8.0 * a * a / 5.0, 0}), mat(1, 1, {0.6}));
}

Realization nyquist_f2(double b) {
  return Realization(mat(2, 2, {-b, 1, 0, -b}), mat(2, 1, {0, 1}), mat(1, 2, {-8.0 * b * b / 5.0, 0}),
                     mat(1, 1, {41.0 / 15.0}));
}

Realization nyquist_f3(double c) { return Realization::scalar(-c, 1.0, -8.0 * c / 3.0, 3.0); }

Matrix sided_constant() { return 0.25 * mat(2, 2, {1, 1, 0, 3}); }

HermitianMatrix sided_weight() { return HermitianMatrix(0.2 * mat(2, 2, {2, 0, 0, 3})); }

double circuit_beta_formula(double r1, double r2) {
  double threshold = std::sqrt((r2 / 2) * (r2 / 2) + 1.0) - r2 / 2;
  double x = r1 <= threshold ? r1 : r1 + r2;
  return 2.0 / (x + 1.0 / x);
}

double truncation_beta_formula(double gamma) {
  double x = 1.5 * gamma * gamma + 1.0;
  return 1.0 / (0.5 * (x + 1.0 / x));
}

}  // namespace hyperpos::corpus
