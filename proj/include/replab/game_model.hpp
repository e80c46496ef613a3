#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace replab {

// Absolute tolerance for simplex and unit-interval membership checks.
inline constexpr double kMembershipTol = 1e-12;

enum class Strategy { A = 0, B = 1 };

// The 2x2 congestion game: deviating from an all-B population to A gains
// gain_a, deviating from an all-A population to B gains gain_b.
class GameParams {
public:
  GameParams(double gain_a, double gain_b);

  double gain_a() const { return gain_a_; }
  double gain_b() const { return gain_b_; }
  // g_A + g_B, the factor that turns a raw step into the effective step.
  double normalizer() const { return gain_a_ + gain_b_; }
  double equilibrium() const { return gain_a_ / (gain_a_ + gain_b_); }

  static GameParams normalized(double q) { return GameParams(q, 1.0 - q); }

private:
  double gain_a_;
  double gain_b_;
};

struct Payoffs {
  double a;
  double b;
};

// Dense row-major n x n payoff matrix of a symmetric two-player game.
class PayoffMatrix {
public:
  explicit PayoffMatrix(std::size_t n);
  PayoffMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }

  // Returns A x.
  std::vector<double> apply(std::span<const double> x) const;

  static PayoffMatrix congestion(const GameParams& params);

private:
  std::size_t n_;
  std::vector<double> entries_;
};

// A single-population game given by its payoff field x -> (pi_1(x), ..., pi_n(x)).
class PopulationGame {
public:
  using PayoffField = std::function<std::vector<double>(std::span<const double>)>;

  PopulationGame(std::size_t n, PayoffField payoff_eval);

  // Symmetric random matching: pi(x) = A x. Entries of A must be nonnegative.
  static PopulationGame symmetric_matching(PayoffMatrix matrix);
  static PopulationGame congestion(const GameParams& params);

  std::size_t strategies() const { return n_; }
  std::vector<double> payoffs(std::span<const double> x) const;
  double mean_payoff(std::span<const double> x) const;

private:
  std::size_t n_;
  PayoffField payoff_eval_;
};

double equilibrium(const GameParams& params);

// x is the share of A-strategists.
Payoffs payoff_vector(const GameParams& params, double x);
double mean_payoff(const GameParams& params, double x);

// Conditional switch rate of pairwise proportional imitation,
// rho_ij(x) = x_j [pi_j(x) - pi_i(x)]_+.
double ppi_switch_rate(const GameParams& params, Strategy from, Strategy to, double x);
double ppi_switch_rate(const PopulationGame& game, std::span<const double> x, std::size_t from,
                       std::size_t to);

}  // namespace replab
