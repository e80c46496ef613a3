#pragma once

#include <optional>
#include <string>
#include <utility>

#include "replab/interval_maps.hpp"
#include "replab/orbit_engine.hpp"

namespace replab {

enum class Regime {
  global_convergence,
  equilibrium_repelling,
  certified_chaos,
  attracting_two_cycle,
  undetermined,
};

std::string to_string(Regime r);

// ((31 - 12 sqrt 3)/23, (12 sqrt 3 - 8)/23): the open q-interval in which
// model II has a period-3 orbit for steps close to the bound.
std::pair<double, double> model_II_chaos_window();

// (3/256)(4 - d(1-q)^2)(64 - 16 d(1-q)^2 + d^3 (1-q)^4 (1+q)^2).
double F_of_delta(double q, double delta_eff);

// 72/(-5q^2 + 26q - 5) for q in (1/5, 1/2]; absent for q <= 1/5.
std::optional<double> f1b6_threshold(double q);

// The root of F = 1 between 0 and 4/(1-q)^2, for q in (0, 1/2]; found by
// stepping down from the upper end at 1e-3 and bisecting to 1e-10.
double F_unit_root(double q);

// max of the f1b6 bound and the root of F = 1 below the step bound.
// q > 1/2 is mapped to 1 - q. Throws WindowError outside the window.
double delta_II_threshold(double q);

// x + f(x) + f^2(x) > 3q for model III; equivalent to f^3(x) < x.
bool model_III_period3_condition(const IntervalMapSpec& spec, double x);

// Numeric estimate only (no closed form exists). Throws SymmetricCaseError
// at q = 1/2 and ThresholdError if the scan passes 5000.
double delta_III_threshold(double q);

struct TwoCycle {
  double sigma = 0.0;  // lower point; the cycle is {sigma, 1 - sigma}
  double multiplier = 0.0;
};

// Model III with q = 1/2 and delta' > 8.
TwoCycle symmetric_two_cycle(double delta_eff);

struct Certificate {
  double convergence_threshold = 0.0;
  std::optional<double> max_step;         // model II only
  std::optional<double> chaos_threshold;  // delta_q^II or the delta_q^III estimate
  bool chaos_threshold_numeric = false;
  std::optional<TwoCycle> two_cycle;
  std::optional<LYWitness> witness;
};

struct RegimeReport {
  Model model = Model::I;
  double q = 0.0;
  double delta_eff = 0.0;
  Regime regime = Regime::undetermined;
  Certificate certificate;
};

RegimeReport classify_regime(Model model, double q, double delta_eff);

}  // namespace replab
