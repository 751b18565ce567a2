#pragma once

#include "hyperpos/hermat.hpp"
#include "hyperpos/realization.hpp"

// Stock systems used by the demos and the tests.
namespace hyperpos::corpus {

// 2x2 system with states at -1, -2 and coupling gamma; D = diag(1, 0).
Realization coupled_pair(double gamma);
// Two-state balanced family with Gramians diag(10, 1) for all alpha, delta != 0.
Realization hull_vertex(double alpha, double delta, double d);

// RC ladder impedance tables (Z, 1/Z and their array inverses) as fixed arrays.
Realization rz_table(double r1, double r2, double cap);
Realization ry_table(double r1, double r2, double cap);
Realization ryhat_table(double r1, double r2, double cap);
Realization rzhat_table(double r1, double r2, double cap);

// 3/5 + 8a^2 / (5 (s + a)^2)
Realization nyquist_f1(double a);
// 41/15 - 8b^2 / (5 (s + b)^2)
Realization nyquist_f2(double b);
// (3s + c/3) / (s + c)
Realization nyquist_f3(double c);

// Constant 2x2 value and weight where right and left variants disagree.
Matrix sided_constant();
HermitianMatrix sided_weight();

// Closed forms used as oracles.
double circuit_beta_formula(double r1, double r2);
double truncation_beta_formula(double gamma);

}  // namespace hyperpos::corpus
