#include "replab/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "replab/errors.hpp"

namespace replab {

namespace {

double checked_share(double x) {
  if (!std::isfinite(x) || x < -kMembershipTol || x > 1.0 + kMembershipTol) {
    throw DomainError("share " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

GameParams::GameParams(double gain_a, double gain_b) : gain_a_(gain_a), gain_b_(gain_b) {
  if (!(gain_a > 0.0) || !(gain_b > 0.0) || !std::isfinite(gain_a) || !std::isfinite(gain_b)) {
    throw DomainError("congestion game gains must be positive and finite");
  }
}

PayoffMatrix::PayoffMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {
  if (n == 0) throw DomainError("payoff matrix needs at least one strategy");
}

PayoffMatrix::PayoffMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw DomainError("payoff matrix needs at least one strategy");
  if (entries_.size() != n * n) throw DomainError("payoff matrix must have n*n entries");
}

std::vector<double> PayoffMatrix::apply(std::span<const double> x) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

PayoffMatrix PayoffMatrix::congestion(const GameParams& params) {
  // Row player's payoffs of the bimatrix: (A,A) and (B,B) pay 0.
  return PayoffMatrix(2, {0.0, params.gain_a(), params.gain_b(), 0.0});
}

PopulationGame::PopulationGame(std::size_t n, PayoffField payoff_eval)
    : n_(n), payoff_eval_(std::move(payoff_eval)) {
  if (n == 0) throw DomainError("population game needs at least one strategy");
  if (!payoff_eval_) throw DomainError("population game needs a payoff field");
}

PopulationGame PopulationGame::symmetric_matching(PayoffMatrix matrix) {
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (!(matrix(i, j) >= 0.0)) throw DomainError("payoff matrix entries must be nonnegative");
    }
  }
  const std::size_t n = matrix.size();
  return PopulationGame(n, [m = std::move(matrix)](std::span<const double> x) { return m.apply(x); });
}

PopulationGame PopulationGame::congestion(const GameParams& params) {
  return symmetric_matching(PayoffMatrix::congestion(params));
}

std::vector<double> PopulationGame::payoffs(std::span<const double> x) const {
  if (x.size() != n_) throw DomainError("state dimension does not match the game");
  auto out = payoff_eval_(x);
  if (out.size() != n_) throw DomainError("payoff field returned the wrong dimension");
  return out;
}

double PopulationGame::mean_payoff(std::span<const double> x) const {
  const auto pi = payoffs(x);
  double acc = 0.0;
  for (std::size_t a = 0; a < n_; ++a) acc += x[a] * pi[a];
  return acc;
}

double equilibrium(const GameParams& params) { return params.equilibrium(); }

Payoffs payoff_vector(const GameParams& params, double x) {
  x = checked_share(x);
  const double state[2] = {x, 1.0 - x};
  const auto pi = PayoffMatrix::congestion(params).apply(state);
  return {pi[0], pi[1]};
}

double mean_payoff(const GameParams& params, double x) {
  x = checked_share(x);
  const auto u = payoff_vector(params, x);
  return x * u.a + (1.0 - x) * u.b;
}

double ppi_switch_rate(const GameParams& params, Strategy from, Strategy to, double x) {
  if (from == to) throw DomainError("switch rate needs two distinct strategies");
  x = checked_share(x);
  const auto u = payoff_vector(params, x);
  const double share[2] = {x, 1.0 - x};
  const double pay[2] = {u.a, u.b};
  const auto i = static_cast<std::size_t>(from);
  const auto j = static_cast<std::size_t>(to);
  return share[j] * std::max(0.0, pay[j] - pay[i]);
}

double ppi_switch_rate(const PopulationGame& game, std::span<const double> x, std::size_t from,
                       std::size_t to) {
  const std::size_t n = game.strategies();
  if (from >= n || to >= n) throw DomainError("strategy index out of range");
  if (from == to) throw DomainError("switch rate needs two distinct strategies");
  const auto pi = game.payoffs(x);
  return x[to] * std::max(0.0, pi[to] - pi[from]);
}

}  // namespace replab
