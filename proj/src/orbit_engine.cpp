#include "replab/orbit_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kRefineResolution = 1e-6;

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct SharkovskyKey {
  bool power_of_two;
  unsigned exponent;
  unsigned long long odd;
};

SharkovskyKey sharkovsky_key(unsigned long long n) {
  SharkovskyKey k{false, 0, n};
  while (k.odd % 2 == 0) {
    k.odd /= 2;
    ++k.exponent;
  }
  k.power_of_two = k.odd == 1;
  return k;
}

}  // namespace

std::vector<double> iterate(const IntervalMapSpec& spec, double x0, std::size_t n) {
  std::vector<double> orbit;
  orbit.reserve(n + 1);
  double x = eval(spec, x0);  // validates x0
  orbit.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) x = eval(spec, x);
    orbit.push_back(x);
  }
  return orbit;
}

std::array<double, 3> three_images(const IntervalMapSpec& spec, double x0) {
  std::array<double, 3> out{};
  const double first = eval(spec, x0);  // validates x0
  if (spec.model() != Model::III || x0 <= 0.0 || x0 >= 1.0) {
    out[0] = first;
    out[1] = eval(spec, out[0]);
    out[2] = eval(spec, out[1]);
    return out;
  }
  double z = std::log(x0) - std::log1p(-x0);
  double x = x0;
  for (double& img : out) {
    z -= spec.delta_eff() * (x - spec.q());
    x = logistic(z);
    img = x;
  }
  return out;
}

std::optional<LYWitness> witness_at(const IntervalMapSpec& spec, double x0) {
  LYWitness w;
  w.x0 = x0;
  w.images = three_images(spec, x0);
  w.orientation = WitnessOrientation::descending;
  if (w.holds(kWitnessMargin)) return w;
  w.orientation = WitnessOrientation::ascending;
  if (w.holds(kWitnessMargin)) return w;
  return std::nullopt;
}

std::string to_string(OrbitStability s) {
  switch (s) {
    case OrbitStability::attracting: return "attracting";
    case OrbitStability::repelling: return "repelling";
    case OrbitStability::neutral: return "neutral";
    case OrbitStability::none: return "none";
  }
  return "?";
}

double OrbitSummary::spread() const {
  if (cycle.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(cycle.begin(), cycle.end());
  return *hi - *lo;
}

OrbitSummary detect_period(const IntervalMapSpec& spec, double x0, const OrbitOptions& options) {
  OrbitSummary s;
  s.initial = x0;
  s.burn_in = options.burn_in;
  s.multiplier = std::numeric_limits<double>::quiet_NaN();

  double x = x0;
  for (std::size_t i = 0; i < options.burn_in; ++i) x = eval(spec, x);

  std::vector<double> orbit{x};
  double y = x;
  for (std::size_t n = 1; n <= options.max_period; ++n) {
    y = eval(spec, y);
    if (std::abs(y - x) < options.tol) {
      s.period = n;
      s.cycle = std::move(orbit);
      s.multiplier = cycle_multiplier(spec, s.cycle);
      switch (classify_multiplier(s.multiplier)) {
        case Stability::attracting: s.classification = OrbitStability::attracting; break;
        case Stability::repelling: s.classification = OrbitStability::repelling; break;
        case Stability::neutral: s.classification = OrbitStability::neutral; break;
      }
      return s;
    }
    orbit.push_back(y);
  }
  return s;
}

double cycle_multiplier(const IntervalMapSpec& spec, std::span<const double> cycle) {
  if (cycle.empty()) throw DomainError("cycle must be nonempty");
  double m = 1.0;
  for (double c : cycle) m *= derivative(spec, c);
  return m;
}

std::string to_string(WitnessOrientation o) {
  return o == WitnessOrientation::descending ? "f3<x0<f" : "f3>x0>f";
}

bool LYWitness::holds(double margin) const {
  const double f1 = images[0];
  const double f3 = images[2];
  if (orientation == WitnessOrientation::descending) return f3 < x0 - margin && x0 < f1 - margin;
  return f3 > x0 + margin && x0 > f1 + margin;
}

std::optional<LYWitness> lmpy_witness(const IntervalMapSpec& spec, double grid_resolution) {
  if (!(grid_resolution > 0.0) || grid_resolution >= 0.5) {
    throw DomainError("witness grid resolution must lie in (0, 0.5)");
  }
  const auto cells = static_cast<std::size_t>(std::llround(1.0 / grid_resolution));
  const double h = 1.0 / static_cast<double>(cells);

  std::vector<double> first_gap(cells + 1), third_gap(cells + 1);
  for (std::size_t k = 1; k < cells; ++k) {
    const double x = static_cast<double>(k) * h;
    if (auto w = witness_at(spec, x)) return w;
    const auto img = three_images(spec, x);
    first_gap[k] = img[0] - x;
    third_gap[k] = img[2] - x;
  }

  if (h <= kRefineResolution) return std::nullopt;
  const auto sub = static_cast<std::size_t>(std::llround(h / kRefineResolution));
  for (std::size_t k = 1; k + 1 < cells; ++k) {
    const bool sign_change = (first_gap[k] > 0) != (first_gap[k + 1] > 0) ||
                             (third_gap[k] > 0) != (third_gap[k + 1] > 0);
    if (!sign_change) continue;
    const double left = static_cast<double>(k) * h;
    for (std::size_t j = 1; j < sub; ++j) {
      const double x = left + static_cast<double>(j) * (h / static_cast<double>(sub));
      if (auto w = witness_at(spec, x)) return w;
    }
  }
  return std::nullopt;
}

bool sharkovsky_implies(unsigned long long t, unsigned long long m) {
  if (t == 0 || m == 0) throw DomainError("periods must be positive");
  if (t == m) return true;
  const auto a = sharkovsky_key(t);
  const auto b = sharkovsky_key(m);
  if (a.power_of_two != b.power_of_two) return !a.power_of_two;
  if (a.power_of_two) return a.exponent > b.exponent;
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  return a.odd < b.odd;
}

}  // namespace replab
