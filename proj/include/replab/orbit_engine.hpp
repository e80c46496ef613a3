#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "replab/interval_maps.hpp"

namespace replab {

// [x0, f(x0), ..., f^n(x0)].
std::vector<double> iterate(const IntervalMapSpec& spec, double x0, std::size_t n);

struct OrbitOptions {
  std::size_t burn_in = 20000;
  double tol = 1e-10;
  std::size_t max_period = 64;
};

enum class OrbitStability { attracting, repelling, neutral, none };

std::string to_string(OrbitStability s);

struct OrbitSummary {
  double initial = 0.0;
  std::size_t burn_in = 0;
  std::optional<std::size_t> period;
  // Orbit order, starting from the first point after the burn-in.
  std::vector<double> cycle;
  // Product of f' over the cycle; NaN when no period was detected.
  double multiplier = 0.0;
  OrbitStability classification = OrbitStability::none;

  // max - min over the cycle points (0 for a fixed point or no period).
  double spread() const;
};

// Discards burn_in iterates, then reports the smallest n <= max_period with
// |f^n(x) - x| < tol.
OrbitSummary detect_period(const IntervalMapSpec& spec, double x0, const OrbitOptions& options = {});

// Chain rule: (f^T)'(c_0) = prod f'(c_i).
double cycle_multiplier(const IntervalMapSpec& spec, std::span<const double> cycle);

enum class WitnessOrientation {
  descending,  // f^3(x0) < x0 < f(x0)
  ascending,   // f^3(x0) > x0 > f(x0)
};

std::string to_string(WitnessOrientation o);

// A point certifying a period-3 orbit (and hence Li-Yorke chaos) through the
// Li-Misiurewicz-Pianigiani-Yorke criterion.
struct LYWitness {
  double x0 = 0.0;
  std::array<double, 3> images{};
  WitnessOrientation orientation = WitnessOrientation::descending;

  // True when the inequality chain holds with the given margin.
  bool holds(double margin = 0.0) const;
};

inline constexpr double kWitnessMargin = 1e-12;

// f(x0), f^2(x0), f^3(x0). Model III is iterated in logit coordinates, where
// z -> z - d'(x - q), so images pinned against 0 or 1 keep their relative
// precision instead of collapsing onto the vertex.
std::array<double, 3> three_images(const IntervalMapSpec& spec, double x0);

// x0 as a witness in whichever orientation holds (with kWitnessMargin).
std::optional<LYWitness> witness_at(const IntervalMapSpec& spec, double x0);

// Deterministic scan of x0 = k*h over (0,1), then a pass at resolution 1e-6
// inside every coarse cell where f^3(x) - x or f(x) - x changes sign.
std::optional<LYWitness> lmpy_witness(const IntervalMapSpec& spec, double grid_resolution = 1e-4);

// True iff period t forces period m (t precedes or equals m in Sharkovsky's
// order 3, 5, 7, ..., 2*3, 2*5, ..., 4*3, ..., 8, 4, 2, 1).
bool sharkovsky_implies(unsigned long long t, unsigned long long m);

}  // namespace replab
