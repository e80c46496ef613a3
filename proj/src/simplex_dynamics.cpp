#include "replab/simplex_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kSumTol = 1e-9;

void require_same_size(const PopulationGame& game, std::size_t n) {
  if (game.strategies() != n) throw DomainError("state dimension does not match the game");
}

}  // namespace

SimplexState::SimplexState(std::vector<double> shares) : shares_(std::move(shares)) {
  if (shares_.empty()) throw DomainError("simplex state needs at least one strategy");
  for (double& s : shares_) {
    if (!std::isfinite(s) || s < -kMembershipTol) {
      throw DomainError("simplex share " + std::to_string(s) + " is negative or not finite");
    }
    s = std::max(s, 0.0);
  }
  const double total = std::accumulate(shares_.begin(), shares_.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTol) {
    throw DomainError("simplex shares sum to " + std::to_string(total));
  }
  for (double& s : shares_) s /= total;
}

SimplexState SimplexState::vertex(std::size_t n, std::size_t i) {
  if (i >= n) throw DomainError("vertex index out of range");
  std::vector<double> shares(n, 0.0);
  shares[i] = 1.0;
  return SimplexState(std::move(shares));
}

SimplexState SimplexState::binary(double x) {
  if (!std::isfinite(x) || x < -kMembershipTol || x > 1.0 + kMembershipTol) {
    throw DomainError("share " + std::to_string(x) + " outside [0,1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  return SimplexState({x, 1.0 - x});
}

SimplexState SimplexState::uniform(std::size_t n) {
  if (n == 0) throw DomainError("simplex state needs at least one strategy");
  return SimplexState(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ScoreState::ScoreState(std::vector<double> scores) : scores_(std::move(scores)) {
  if (scores_.empty()) throw DomainError("score state needs at least one strategy");
  for (double y : scores_) {
    if (!std::isfinite(y)) throw DomainError("scores must be finite");
  }
}

SimplexState ScoreState::induced() const {
  const double top = *std::max_element(scores_.begin(), scores_.end());
  std::vector<double> x(scores_.size());
  double total = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    x[a] = std::exp(scores_[a] - top);
    total += x[a];
  }
  for (double& v : x) v /= total;
  return SimplexState(std::move(x));
}

StepSize::StepSize(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("step size must be positive");
}

SimplexState step_model_I(const PopulationGame& game, const SimplexState& x, StepSize delta) {
  require_same_size(game, x.size());
  const double d = delta.value();
  const auto pi = game.payoffs(x.shares());
  std::vector<double> next(x.size());
  double mean = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double growth = 1.0 + d * pi[a];
    if (growth < 0.0) throw DomainError("negative payoff makes 1 + delta*pi_a negative");
    mean += x[a] * pi[a];
    next[a] = x[a] * growth;
  }
  const double denom = 1.0 + d * mean;
  for (double& v : next) v /= denom;
  return SimplexState(std::move(next));
}

SimplexState step_model_II(const PopulationGame& game, const SimplexState& x, StepSize delta) {
  require_same_size(game, x.size());
  const double d = delta.value();
  const auto pi = game.payoffs(x.shares());
  double mean = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) mean += x[a] * pi[a];
  std::vector<double> next(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    double v = x[a] + d * x[a] * (pi[a] - mean);
    if (v < -kMembershipTol || v > 1.0 + kMembershipTol) {
      throw SimplexEscape("model II image coordinate " + std::to_string(v) +
                          " leaves the simplex; step size too large");
    }
    next[a] = std::clamp(v, 0.0, 1.0);
  }
  return SimplexState(std::move(next));
}

SimplexState step_model_III(const PopulationGame& game, const SimplexState& x, StepSize delta) {
  require_same_size(game, x.size());
  const double d = delta.value();
  const auto pi = game.payoffs(x.shares());
  // Shift exponents by their maximum so exp never overflows.
  double top = -INFINITY;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] > 0.0) top = std::max(top, d * pi[a]);
  }
  std::vector<double> next(x.size());
  double total = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    next[a] = x[a] > 0.0 ? x[a] * std::exp(d * pi[a] - top) : 0.0;
    total += next[a];
  }
  for (double& v : next) v /= total;
  return SimplexState(std::move(next));
}

ScoreState ew_score_update(const PopulationGame& game, const ScoreState& y, StepSize delta) {
  require_same_size(game, y.size());
  const auto x = y.induced();
  const auto pi = game.payoffs(x.shares());
  std::vector<double> next(y.scores().begin(), y.scores().end());
  for (std::size_t a = 0; a < next.size(); ++a) next[a] += delta.value() * pi[a];
  return ScoreState(std::move(next));
}

std::vector<double> rd_vector_field(const PopulationGame& game, const SimplexState& x) {
  require_same_size(game, x.size());
  const auto pi = game.payoffs(x.shares());
  double mean = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) mean += x[a] * pi[a];
  std::vector<double> v(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) v[a] = x[a] * (pi[a] - mean);
  return v;
}

Trajectory rd_integrate(const PopulationGame& game, const SimplexState& x0, double horizon,
                        double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integration step must be positive");
  if (!(horizon >= dt) || !std::isfinite(horizon)) throw DomainError("horizon must be at least dt");
  require_same_size(game, x0.size());

  const std::size_t n = x0.size();
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));

  // Field evaluated at an arbitrary point; intermediate RK stages may sit a
  // hair outside the simplex, so they are not forced through SimplexState.
  auto field = [&](const std::vector<double>& p) {
    const auto pi = game.payoffs(p);
    double mean = 0.0;
    for (std::size_t a = 0; a < n; ++a) mean += p[a] * pi[a];
    std::vector<double> v(n);
    for (std::size_t a = 0; a < n; ++a) v[a] = p[a] * (pi[a] - mean);
    return v;
  };
  auto axpy = [n](const std::vector<double>& p, double h, const std::vector<double>& k) {
    std::vector<double> out(n);
    for (std::size_t a = 0; a < n; ++a) out[a] = p[a] + h * k[a];
    return out;
  };

  Trajectory traj;
  traj.dt = dt;
  traj.states.reserve(steps + 1);
  traj.states.push_back(x0);
  std::vector<double> p(x0.shares().begin(), x0.shares().end());
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1 = field(p);
    const auto k2 = field(axpy(p, dt / 2, k1));
    const auto k3 = field(axpy(p, dt / 2, k2));
    const auto k4 = field(axpy(p, dt, k3));
    for (std::size_t a = 0; a < n; ++a) p[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    traj.states.emplace_back(p);
    p.assign(traj.states.back().shares().begin(), traj.states.back().shares().end());
  }
  return traj;
}

double model_II_max_step(const GameParams& params) {
  const double q = params.equilibrium();
  return std::min(4.0 / (q * q), 4.0 / ((1.0 - q) * (1.0 - q))) / params.normalizer();
}

}  // namespace replab
