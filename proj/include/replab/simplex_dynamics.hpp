#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "replab/game_model.hpp"

namespace replab {

// A population state on the probability simplex. Entries within 1e-12 below
// zero are clamped, and the shares are renormalized to sum to exactly one.
class SimplexState {
public:
  explicit SimplexState(std::vector<double> shares);

  static SimplexState vertex(std::size_t n, std::size_t i);
  // Two-strategy state (x, 1 - x).
  static SimplexState binary(double x);
  static SimplexState uniform(std::size_t n);

  std::size_t size() const { return shares_.size(); }
  double operator[](std::size_t i) const { return shares_[i]; }
  std::span<const double> shares() const { return shares_; }

private:
  std::vector<double> shares_;
};

// Cumulative payoffs y_a of the exponential-weights recursion.
class ScoreState {
public:
  explicit ScoreState(std::vector<double> scores);

  std::size_t size() const { return scores_.size(); }
  std::span<const double> scores() const { return scores_; }
  // x_a proportional to exp(y_a).
  SimplexState induced() const;

private:
  std::vector<double> scores_;
};

class StepSize {
public:
  explicit StepSize(double delta);
  double value() const { return delta_; }

private:
  double delta_;
};

// Intra-species competition: x'_a = x_a (1 + d pi_a) / (1 + d pi).
SimplexState step_model_I(const PopulationGame& game, const SimplexState& x, StepSize delta);
// Pairwise proportional imitation: x'_a = x_a + d x_a (pi_a - pi).
SimplexState step_model_II(const PopulationGame& game, const SimplexState& x, StepSize delta);
// Exponential weights: x'_a proportional to x_a exp(d pi_a).
SimplexState step_model_III(const PopulationGame& game, const SimplexState& x, StepSize delta);

ScoreState ew_score_update(const PopulationGame& game, const ScoreState& y, StepSize delta);

// Replicator field v_a = x_a (pi_a(x) - pi(x)).
std::vector<double> rd_vector_field(const PopulationGame& game, const SimplexState& x);

struct Trajectory {
  double dt = 0.0;
  std::vector<SimplexState> states;

  const SimplexState& terminal() const { return states.back(); }
};

// Fixed-step classical Runge-Kutta integration of the replicator equation.
Trajectory rd_integrate(const PopulationGame& game, const SimplexState& x0, double horizon,
                        double dt = 0.01);

// Largest raw Model II step that keeps every image inside the simplex.
double model_II_max_step(const GameParams& params);

}  // namespace replab
