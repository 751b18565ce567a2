#pragma once

#include <vector>

#include "hyperpos/realization.hpp"

namespace hyperpos {

struct ImpedanceTree {
  enum class Kind { Resistor, Inductor, Capacitor, Series, Parallel };
  Kind kind = Kind::Resistor;
  double value = 0.0;
  std::vector<ImpedanceTree> children;

  static ImpedanceTree resistor(double ohm) { return {Kind::Resistor, ohm, {}}; }
  static ImpedanceTree inductor(double henry) { return {Kind::Inductor, henry, {}}; }
  static ImpedanceTree capacitor(double farad) { return {Kind::Capacitor, farad, {}}; }
  static ImpedanceTree series(std::vector<ImpedanceTree> c) { return {Kind::Series, 0.0, std::move(c)}; }
  static ImpedanceTree parallel(std::vector<ImpedanceTree> c) { return {Kind::Parallel, 0.0, std::move(c)}; }

  void validate() const;
};

// Scalar rational function with coefficients in ascending powers of s; den is monic.
struct RationalFunction {
  std::vector<double> num;
  std::vector<double> den;
  int degree() const { return static_cast<int>(den.size()) - 1; }
  cplx operator()(cplx s) const;
};

RationalFunction impedance_function(const ImpedanceTree& tree);
// Companion form of the reduced rational impedance, balanced when stable and minimal.
Realization build_impedance(const ImpedanceTree& tree);
Realization realize_rational(const RationalFunction& f);

// R1 in series with (R2 parallel C).
ImpedanceTree rc_circuit(double r1, double r2, double cap);
// R1 in series with (R2 parallel L).
ImpedanceTree rl_circuit(double r1, double r2, double ind);

double beta_of_circuit(double r1, double r2, double cap);

}  // namespace hyperpos
