#pragma once

#include <string>
#include <vector>

#include "replab/game_model.hpp"
#include "replab/simplex_dynamics.hpp"

namespace replab {

enum class Model { I, II, III };

std::string to_string(Model model);
Model parse_model(const std::string& text);

// One of the three interval maps in normalized coordinates: equilibrium q and
// effective step delta' = (g_A + g_B) * delta.
class IntervalMapSpec {
public:
  // Throws DomainError for q outside (0,1) or delta' <= 0, and
  // StepValidityError for a Model II step above the simplex-preserving bound.
  IntervalMapSpec(Model model, double q, double delta_eff);

  static IntervalMapSpec from_game(Model model, const GameParams& params, StepSize delta);

  Model model() const { return model_; }
  double q() const { return q_; }
  double delta_eff() const { return delta_eff_; }

private:
  Model model_;
  double q_;
  double delta_eff_;
};

// min{4/q^2, 4/(1-q)^2}: the Model II bound in normalized units.
double model_II_max_step_normalized(double q);

// 2/(q(1-q)): the interior multiplier of Models II and III reaches -1 here.
double convergence_threshold(double q);

enum class Stability { attracting, repelling, neutral };

std::string to_string(Stability s);

// |m| within 1e-12 of 1 is neutral.
Stability classify_multiplier(double multiplier);

struct FixedPointReport {
  double location;
  double multiplier;
  Stability classification;
};

double eval(const IntervalMapSpec& spec, double x);
// 1 - eval(spec, x), computed without cancellation near x = 1.
double eval_complement(const IntervalMapSpec& spec, double x);
double derivative(const IntervalMapSpec& spec, double x);

// Always three reports, at 0, q and 1.
std::vector<FixedPointReport> fixed_points(const IntervalMapSpec& spec);
// Empty while the map is increasing, else the two turning points in order.
std::vector<double> critical_points(const IntervalMapSpec& spec);

// Sf = f'''/f' - 3/2 (f''/f')^2.
double schwarzian(const IntervalMapSpec& spec, double x);

// Same map with q replaced by 1 - q; conjugate to spec through x -> 1 - x.
IntervalMapSpec symmetry_conjugate(const IntervalMapSpec& spec);

}  // namespace replab
