#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "replab/errors.hpp"
#include "replab/interval_maps.hpp"
#include "replab/simplex_dynamics.hpp"

using namespace replab;

namespace {

PopulationGame random_matching(oracle::Rng& rng, std::size_t n) {
  PayoffMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(0, 2);
  return PopulationGame::symmetric_matching(a);
}

SimplexState random_state(oracle::Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  double s = 0;
  for (auto& v : x) s += (v = rng.uniform(0.001, 1));
  for (auto& v : x) v /= s;
  return SimplexState(x);
}

bool valid_state(const SimplexState& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) return false;
    s += x[i];
  }
  return std::abs(s - 1) <= 1e-9;
}

}  // namespace

TEST_CASE("simplex state construction") {
  const SimplexState x({0.25, 0.75 + 1e-10});
  CHECK(std::abs(x[0] + x[1] - 1) < 1e-15);
  const SimplexState y({-1e-13, 1.0});
  CHECK(y[0] == 0.0);
  CHECK_THROWS_AS(SimplexState({-1e-6, 1.0}), DomainError);
  CHECK_THROWS_AS(SimplexState({0.5, 0.6}), DomainError);
  CHECK(SimplexState::vertex(3, 2)[2] == 1.0);
  CHECK(SimplexState::uniform(4)[1] == 0.25);
}

TEST_CASE("step size must be positive") {
  CHECK_THROWS_AS(StepSize(0.0), DomainError);
  CHECK_THROWS_AS(StepSize(-1.0), DomainError);
  CHECK(StepSize(0.5).value() == 0.5);
}

TEST_CASE("model I examples") {
  const auto game = PopulationGame::congestion(GameParams(1, 1));
  for (double d : {0.1, 2.0, 100.0}) {
    const auto a = step_model_I(game, SimplexState::binary(0.5), StepSize(d));
    CHECK(a[0] == doctest::Approx(0.5).epsilon(1e-15));
    const auto b = step_model_I(game, SimplexState::binary(1.0), StepSize(d));
    CHECK(b[0] == 1.0);
  }
  const auto c = step_model_I(game, SimplexState::binary(0.25), StepSize(2));
  CHECK(std::abs(c[0] - 0.25 * 2.5 / 1.75) < 1e-15);
}

TEST_CASE("model II examples") {
  const auto game = PopulationGame::congestion(GameParams(0.5, 0.5));
  const auto x = step_model_II(game, SimplexState::binary(0.25), StepSize(16));
  CHECK(x[0] == 1.0);
  CHECK_THROWS_AS(step_model_II(game, SimplexState::binary(0.25), StepSize(17)), SimplexEscape);
}

TEST_CASE("model III examples") {
  const auto game = PopulationGame::congestion(GameParams(0.5, 0.5));
  const auto x = step_model_III(game, SimplexState::binary(0.25), StepSize(8));
  const double expected = 0.25 * std::exp(3.0) / (0.25 * std::exp(3.0) + 0.75 * std::exp(1.0));
  CHECK(std::abs(x[0] - expected) < 1e-15);
  CHECK(std::abs(x[0] - 0.7112340) < 1e-6);
  // Large steps must not overflow.
  const auto big = step_model_III(PopulationGame::congestion(GameParams(300, 500)), SimplexState::binary(0.3),
                                  StepSize(50));
  CHECK(valid_state(big));
}

TEST_CASE("model III is continuous in the step") {
  const auto game = PopulationGame::congestion(GameParams(0.7, 1.3));
  const auto x = SimplexState::binary(0.2);
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto y = step_model_III(game, x, StepSize(d));
    CHECK(std::abs(y[0] - x[0]) <= 2.0 * d);
  }
}

TEST_CASE("exponential weights example") {
  const auto game = PopulationGame::congestion(GameParams(0.5, 0.5));
  const auto y = ew_score_update(game, ScoreState({0, 0}), StepSize(8));
  CHECK(y.scores()[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(y.scores()[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(y.induced()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ScoreState({0, NAN}), DomainError);
}

TEST_CASE("property: exponential weights induce the model III step") {
  oracle::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 5));
    const auto game = random_matching(rng, n);
    std::vector<double> scores(n);
    for (auto& s : scores) s = rng.uniform(-5, 5);
    const ScoreState y(scores);
    const StepSize d(rng.uniform(0.01, 20));
    const auto lhs = ew_score_update(game, y, d).induced();
    const auto rhs = step_model_III(game, y.induced(), d);
    for (std::size_t a = 0; a < n; ++a) CHECK(std::abs(lhs[a] - rhs[a]) < 1e-12);
  }
}

TEST_CASE("replicator field") {
  const GameParams p(0.8, 1.7);
  const auto game = PopulationGame::congestion(p);
  const auto v0 = rd_vector_field(game, SimplexState::vertex(2, 0));
  CHECK(v0[0] == 0.0);
  CHECK(v0[1] == 0.0);
  const auto vq = rd_vector_field(game, SimplexState::binary(p.equilibrium()));
  CHECK(std::abs(vq[0]) < 1e-15);
  for (int k = 0; k <= 100; ++k) {
    const double x = k / 100.0;
    const auto v = rd_vector_field(game, SimplexState::binary(x));
    const double reduced = x * (1 - x) * (p.gain_a() * (1 - x) - p.gain_b() * x);
    CHECK(std::abs(v[0] - reduced) < 1e-14);
    CHECK(std::abs(v[0] + v[1]) < 1e-15);
  }
}

TEST_CASE("replicator integration converges to the equilibrium") {
  const auto t1 = rd_integrate(PopulationGame::congestion(GameParams(1, 1)), SimplexState::binary(0.1), 50);
  CHECK(std::abs(t1.terminal()[0] - 0.5) < 1e-6);
  const auto t2 = rd_integrate(PopulationGame::congestion(GameParams(1, 3)), SimplexState::binary(0.9), 50);
  CHECK(std::abs(t2.terminal()[0] - 0.25) < 1e-6);
  const auto t3 = rd_integrate(PopulationGame::congestion(GameParams(1, 3)), SimplexState::vertex(2, 1), 5);
  for (const auto& s : t3.states) CHECK(s[1] == 1.0);
  CHECK_THROWS_AS(rd_integrate(PopulationGame::congestion(GameParams(1, 3)), SimplexState::binary(0.5), 1, 0),
                  DomainError);
}

TEST_CASE("model II maximal step") {
  CHECK(model_II_max_step(GameParams(0.5, 0.5)) == 16.0);
  CHECK(model_II_max_step(GameParams(0.45, 0.55)) == doctest::Approx(4 / 0.3025).epsilon(1e-14));
  CHECK(model_II_max_step(GameParams(1, 1)) == 8.0);
}

TEST_CASE("property: every step stays on the simplex") {
  oracle::Rng rng(22);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const int model = rng.integer(1, 3);
    SimplexState x = random_state(rng, n);
    if (model == 2) {
      // 2x2 congestion games with a step inside the closed-form bound.
      const GameParams p(rng.uniform(0.05, 3), rng.uniform(0.05, 3));
      const auto game = PopulationGame::congestion(p);
      x = SimplexState::binary(rng.uniform(0, 1));
      const StepSize d(rng.uniform(1e-6, 1) * model_II_max_step(p));
      CHECK(valid_state(step_model_II(game, x, d)));
      continue;
    }
    const auto game = random_matching(rng, n);
    const StepSize d(rng.uniform(1e-3, 100));
    CHECK(valid_state(model == 1 ? step_model_I(game, x, d) : step_model_III(game, x, d)));
  }
}

TEST_CASE("property: all three maps fix the vertices and the equilibrium") {
  oracle::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const GameParams p(rng.uniform(0.05, 3), rng.uniform(0.05, 3));
    const auto game = PopulationGame::congestion(p);
    const StepSize d(rng.uniform(0.01, 0.99) * model_II_max_step(p));
    for (double x : {0.0, p.equilibrium(), 1.0}) {
      const auto s = SimplexState::binary(x);
      CHECK(std::abs(step_model_I(game, s, d)[0] - x) < 1e-12);
      CHECK(std::abs(step_model_II(game, s, d)[0] - x) < 1e-12);
      CHECK(std::abs(step_model_III(game, s, d)[0] - x) < 1e-12);
    }
  }
}

TEST_CASE("property: Euler consistency") {
  oracle::Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const auto game = random_matching(rng, n);
    const auto x = random_state(rng, n);
    const auto v = rd_vector_field(game, x);
    for (double d : {1e-2, 1e-3, 1e-4}) {
      const auto s1 = step_model_I(game, x, StepSize(d));
      const auto s2 = step_model_II(game, x, StepSize(d));
      const auto s3 = step_model_III(game, x, StepSize(d));
      for (std::size_t a = 0; a < n; ++a) {
        const double euler = x[a] + d * v[a];
        CHECK(std::abs(s1[a] - euler) <= 50 * d * d);
        CHECK(std::abs(s3[a] - euler) <= 50 * d * d);
        CHECK(std::abs(s2[a] - euler) <= 1e-15);
      }
    }
  }
}

TEST_CASE("property: 2x2 stepping matches the raw-game oracle and the interval maps") {
  oracle::Rng rng(25);
  for (int i = 0; i < 2000; ++i) {
    const GameParams p(rng.uniform(0.05, 3), rng.uniform(0.05, 3));
    const auto game = PopulationGame::congestion(p);
    const double x = rng.uniform(0, 1);
    const double raw = rng.uniform(0.01, 1) * model_II_max_step(p);
    const StepSize d(raw);
    const auto s = SimplexState::binary(x);
    const double r1 = step_model_I(game, s, d)[0];
    const double r2 = step_model_II(game, s, d)[0];
    const double r3 = step_model_III(game, s, d)[0];
    CHECK(std::abs(r1 - static_cast<double>(oracle::step_I(p.gain_a(), p.gain_b(), x, raw))) < 1e-12);
    CHECK(std::abs(r2 - static_cast<double>(oracle::step_II(p.gain_a(), p.gain_b(), x, raw))) < 1e-12);
    CHECK(std::abs(r3 - static_cast<double>(oracle::step_III(p.gain_a(), p.gain_b(), x, raw))) < 1e-12);
    CHECK(std::abs(r1 - eval(IntervalMapSpec::from_game(Model::I, p, d), x)) < 1e-12);
    CHECK(std::abs(r2 - eval(IntervalMapSpec::from_game(Model::II, p, d), x)) < 1e-12);
    CHECK(std::abs(r3 - eval(IntervalMapSpec::from_game(Model::III, p, d), x)) < 1e-12);
  }
}

TEST_CASE("model II with more strategies is checked per step") {
  // Rock-paper-scissors style payoffs; a huge step must leave the simplex.
  const auto game = PopulationGame::symmetric_matching(PayoffMatrix(3, {1, 0, 2, 2, 1, 0, 0, 2, 1}));
  const SimplexState x({0.6, 0.3, 0.1});
  CHECK_NOTHROW(step_model_II(game, x, StepSize(0.1)));
  CHECK_THROWS_AS(step_model_II(game, x, StepSize(100)), SimplexEscape);
}
