#include "replab/interval_maps.hpp"

#include <algorithm>
#include <cmath>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kNeutralBand = 1e-12;
constexpr double kSingularDerivative = 1e-9;

double checked_point(double x) {
  if (!std::isfinite(x) || x < -kMembershipTol || x > 1.0 + kMembershipTol) {
    throw DomainError("point " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

// Closed-form first derivatives, valid on a neighbourhood of [0,1] so the
// finite-difference stencils may step slightly outside the interval.
double raw_derivative(Model model, double q, double d, double x) {
  switch (model) {
    case Model::I: {
      const double den = 1.0 + d * x * (1.0 - x);
      return (d * x * x - 2.0 * q * d * x + d * q + 1.0) / (den * den);
    }
    case Model::II:
      return 3.0 * d * x * x - 2.0 * d * (1.0 + q) * x + q * d + 1.0;
    case Model::III: {
      const double t = d * (x - q);
      const double num = d * x * x - d * x + 1.0;
      if (t > 0.0) {
        const double e = std::exp(-t);
        const double den = x * e + (1.0 - x);
        return num * e / (den * den);
      }
      const double e = std::exp(t);
      const double den = x + (1.0 - x) * e;
      return num * e / (den * den);
    }
  }
  return 0.0;
}

// Model III image and its complement. Exponents are split by sign so that
// neither branch overflows, however large delta' is.
struct Split {
  double value;
  double complement;
};

Split model_III_split(double q, double d, double x) {
  const double t = d * (x - q);
  if (t > 0.0) {
    const double e = std::exp(-t);
    const double den = x * e + (1.0 - x);
    return {x * e / den, (1.0 - x) / den};
  }
  const double e = std::exp(t);
  const double den = x + (1.0 - x) * e;
  return {x / den, (1.0 - x) * e / den};
}

}  // namespace

std::string to_string(Model model) {
  switch (model) {
    case Model::I: return "I";
    case Model::II: return "II";
    case Model::III: return "III";
  }
  return "?";
}

Model parse_model(const std::string& text) {
  if (text == "I" || text == "1") return Model::I;
  if (text == "II" || text == "2") return Model::II;
  if (text == "III" || text == "3") return Model::III;
  throw DomainError("unknown model '" + text + "' (expected I, II or III)");
}

double model_II_max_step_normalized(double q) {
  return std::min(4.0 / (q * q), 4.0 / ((1.0 - q) * (1.0 - q)));
}

double convergence_threshold(double q) { return 2.0 / (q * (1.0 - q)); }

IntervalMapSpec::IntervalMapSpec(Model model, double q, double delta_eff)
    : model_(model), q_(q), delta_eff_(delta_eff) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("equilibrium q must lie strictly inside (0,1)");
  if (!(delta_eff > 0.0) || !std::isfinite(delta_eff)) {
    throw DomainError("effective step must be positive and finite");
  }
  if (model == Model::II) {
    const double bound = model_II_max_step_normalized(q);
    if (delta_eff > bound * (1.0 + kMembershipTol)) {
      throw StepValidityError("model II step " + std::to_string(delta_eff) +
                              " exceeds the simplex-preserving bound " + std::to_string(bound));
    }
  }
}

IntervalMapSpec IntervalMapSpec::from_game(Model model, const GameParams& params, StepSize delta) {
  return IntervalMapSpec(model, params.equilibrium(), params.normalizer() * delta.value());
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    case Stability::neutral: return "neutral";
  }
  return "?";
}

Stability classify_multiplier(double multiplier) {
  const double m = std::abs(multiplier);
  if (std::abs(m - 1.0) <= kNeutralBand) return Stability::neutral;
  return m < 1.0 ? Stability::attracting : Stability::repelling;
}

double eval(const IntervalMapSpec& spec, double x) {
  x = checked_point(x);
  const double q = spec.q();
  const double d = spec.delta_eff();
  double y = 0.0;
  switch (spec.model()) {
    case Model::I:
      y = x * (1.0 + d * q * (1.0 - x)) / (1.0 + d * x * (1.0 - x));
      break;
    case Model::II:
      y = x * (1.0 - d * (1.0 - x) * (x - q));
      break;
    case Model::III:
      y = model_III_split(q, d, x).value;
      break;
  }
  return std::clamp(y, 0.0, 1.0);
}

double eval_complement(const IntervalMapSpec& spec, double x) {
  if (spec.model() != Model::III) return 1.0 - eval(spec, x);
  x = checked_point(x);
  return std::clamp(model_III_split(spec.q(), spec.delta_eff(), x).complement, 0.0, 1.0);
}

double derivative(const IntervalMapSpec& spec, double x) {
  x = checked_point(x);
  const double q = spec.q();
  const double d = spec.delta_eff();
  if (spec.model() == Model::III && x > 0.0 && x < 1.0) {
    // f' = f (1 - f) (1 - d x (1 - x)) / (x (1 - x)); stays accurate when the
    // orbit sits exponentially close to a vertex.
    const auto s = model_III_split(q, d, x);
    return s.value * s.complement * (1.0 - d * x * (1.0 - x)) / (x * (1.0 - x));
  }
  return raw_derivative(spec.model(), q, d, x);
}

std::vector<FixedPointReport> fixed_points(const IntervalMapSpec& spec) {
  const double q = spec.q();
  const double d = spec.delta_eff();
  double m0 = 0.0, mq = 0.0, m1 = 0.0;
  switch (spec.model()) {
    case Model::I:
      m0 = 1.0 + d * q;
      mq = 1.0 / (1.0 + d * q * (1.0 - q));
      m1 = 1.0 + d * (1.0 - q);
      break;
    case Model::II:
      m0 = 1.0 + q * d;
      mq = 1.0 - d * q * (1.0 - q);
      m1 = 1.0 + (1.0 - q) * d;
      break;
    case Model::III:
      m0 = std::exp(d * q);
      mq = d * q * q - d * q + 1.0;
      m1 = std::exp(d * (1.0 - q));
      break;
  }
  return {
      {0.0, m0, classify_multiplier(m0)},
      {q, mq, classify_multiplier(mq)},
      {1.0, m1, classify_multiplier(m1)},
  };
}

std::vector<double> critical_points(const IntervalMapSpec& spec) {
  const double q = spec.q();
  const double d = spec.delta_eff();
  switch (spec.model()) {
    case Model::I:
      return {};
    case Model::II: {
      if (d <= 3.0 / (1.0 - q + q * q)) return {};
      const double r = std::sqrt((d * (1.0 + q) * (1.0 + q) - 3.0 * q * d - 3.0) / d) / 3.0;
      return {(1.0 + q) / 3.0 - r, (1.0 + q) / 3.0 + r};
    }
    case Model::III: {
      if (d <= 4.0) return {};
      const double r = std::sqrt(0.25 - 1.0 / d);
      return {0.5 - r, 0.5 + r};
    }
  }
  return {};
}

// Sf = g'' - g'^2/2 with g = ln|f'|. Working with g keeps the value finite
// where f' itself underflows (large steps near the vertices).
double schwarzian(const IntervalMapSpec& spec, double x) {
  x = checked_point(x);
  const double q = spec.q();
  const double d = spec.delta_eff();
  double g1 = 0.0;
  double g2 = 0.0;
  switch (spec.model()) {
    case Model::I: {
      // f' = N / D^2 with N = d(x-q)^2 + dq(1-q) + 1 > 0 and D = 1 + dx(1-x).
      const double n = d * (x - q) * (x - q) + d * q * (1.0 - q) + 1.0;
      const double n1 = 2.0 * d * (x - q), n2 = 2.0 * d;
      const double dd = 1.0 + d * x * (1.0 - x);
      const double d1 = d * (1.0 - 2.0 * x), d2 = -2.0 * d;
      g1 = n1 / n - 2.0 * d1 / dd;
      g2 = (n2 * n - n1 * n1) / (n * n) - 2.0 * (d2 * dd - d1 * d1) / (dd * dd);
      break;
    }
    case Model::II: {
      const double f1 = raw_derivative(Model::II, q, d, x);
      if (std::abs(f1) < kSingularDerivative) {
        throw CriticalPointSingularity("Schwarzian undefined at a critical point");
      }
      const double f2 = 6.0 * d * x - 2.0 * d * (1.0 + q);
      const double f3 = 6.0 * d;
      return f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1);
    }
    case Model::III: {
      // f' = u E / den^2 with u = 1 - dx(1-x), E = exp(d(x-q)),
      // den = x + (1-x)E; for d(x-q) > 0 the same with E^-1 factored out.
      const double u = 1.0 - d * x * (1.0 - x);
      if (std::abs(u) < kSingularDerivative) {
        throw CriticalPointSingularity("Schwarzian undefined at a critical point");
      }
      const double u1 = -d * (1.0 - 2.0 * x), u2 = 2.0 * d;
      const double t = d * (x - q);
      double k1 = 0.0, k2 = 0.0;
      if (t > 0.0) {
        const double e = std::exp(-t);
        const double den = x * e + 1.0 - x;
        const double den1 = e * (1.0 - d * x) - 1.0;
        const double den2 = -d * e * (2.0 - d * x);
        k1 = -d - 2.0 * den1 / den;
        k2 = -2.0 * (den2 * den - den1 * den1) / (den * den);
      } else {
        const double e = std::exp(t);
        const double den = x + (1.0 - x) * e;
        const double den1 = 1.0 - e + (1.0 - x) * d * e;
        const double den2 = -2.0 * d * e + (1.0 - x) * d * d * e;
        k1 = d - 2.0 * den1 / den;
        k2 = -2.0 * (den2 * den - den1 * den1) / (den * den);
      }
      g1 = u1 / u + k1;
      g2 = (u2 * u - u1 * u1) / (u * u) + k2;
      break;
    }
  }
  return g2 - 0.5 * g1 * g1;
}

IntervalMapSpec symmetry_conjugate(const IntervalMapSpec& spec) {
  return IntervalMapSpec(spec.model(), 1.0 - spec.q(), spec.delta_eff());
}

}  // namespace replab
