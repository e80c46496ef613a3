#include "replab/chaos_certify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "replab/errors.hpp"

namespace replab {

namespace {

constexpr double kSymmetricTol = 1e-12;
constexpr double kThirdTol = 1e-12;
constexpr double kRootScanStep = 1e-3;
constexpr double kRootTol = 1e-10;
constexpr double kIII_Scan = 0.1;
constexpr double kIII_Bisect = 1e-6;
constexpr double kIII_Grid = 1e-4;
constexpr double kIII_Cap = 5000.0;
constexpr double kConditionMargin = 1e-12;

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("equilibrium q must lie strictly inside (0,1)");
}

double canonical_q(double q) { return std::min(q, 1.0 - q); }

// First grid point x in (max(0, 3q-1), q) satisfying the period-3 condition
// with margin, for q < 1/2.
std::optional<double> period3_point(double q, double d) {
  const IntervalMapSpec spec(Model::III, q, d);
  const double lo = std::max(0.0, 3.0 * q - 1.0);
  const auto n = static_cast<long long>(std::floor((q - lo) / kIII_Grid));
  for (long long k = 1; k <= n; ++k) {
    const double x = lo + kIII_Grid * static_cast<double>(k);
    if (!(x < q - kConditionMargin)) break;
    const auto img = three_images(spec, x);
    if (x + img[0] + img[1] - 3.0 * q > kConditionMargin) return x;
  }
  return std::nullopt;
}

// Scan for delta_q^III with q < 1/2. Gives up (returns nullopt) once the
// candidate grid value exceeds limit.
std::optional<double> delta_III_scan(double q, double limit) {
  const double start = convergence_threshold(q);
  std::vector<char> memo;
  auto indicator = [&](std::size_t k) {
    while (memo.size() <= k) {
      const double d = start + kIII_Scan * static_cast<double>(memo.size());
      memo.push_back(period3_point(q, d).has_value() ? 1 : 0);
    }
    return memo[k] != 0;
  };
  auto delta_at = [&](std::size_t k) { return start + kIII_Scan * static_cast<double>(k); };

  for (std::size_t k = 0;; ++k) {
    const double d = delta_at(k);
    if (d > limit) return std::nullopt;
    if (d > kIII_Cap) throw ThresholdError("no model III period-3 threshold found below 5000");
    if (!indicator(k)) continue;
    bool stable = true;
    for (std::size_t j = k + 1; delta_at(j) <= 2.0 * d; ++j) {
      if (!indicator(j)) {
        stable = false;
        break;
      }
    }
    if (!stable) continue;
    if (k == 0) return d;
    double lo = delta_at(k - 1);
    double hi = d;
    while (hi - lo > kIII_Bisect) {
      const double mid = 0.5 * (lo + hi);
      if (period3_point(q, mid)) hi = mid; else lo = mid;
    }
    return hi;
  }
}

// Searches in canonical coordinates (q <= 1/2) so that q and 1 - q always
// agree, then maps the point back and re-checks it in the original frame.
std::optional<LYWitness> canonical_witness(const IntervalMapSpec& spec) {
  const double q = spec.q();
  if (q <= 0.5) return lmpy_witness(spec);
  const IntervalMapSpec conj(spec.model(), 1.0 - q, spec.delta_eff());
  const auto w = lmpy_witness(conj);
  if (!w) return std::nullopt;
  if (auto mapped = witness_at(spec, 1.0 - w->x0)) return mapped;
  return lmpy_witness(spec);
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::global_convergence: return "global_convergence";
    case Regime::equilibrium_repelling: return "equilibrium_repelling";
    case Regime::certified_chaos: return "certified_chaos";
    case Regime::attracting_two_cycle: return "attracting_two_cycle";
    case Regime::undetermined: return "undetermined";
  }
  return "?";
}

std::pair<double, double> model_II_chaos_window() {
  const double r = 12.0 * std::sqrt(3.0);
  return {(31.0 - r) / 23.0, (r - 8.0) / 23.0};
}

double F_of_delta(double q, double delta_eff) {
  check_q(q);
  if (!(delta_eff >= 0.0)) throw DomainError("step must be nonnegative");
  const double p = (1.0 - q) * (1.0 - q);
  const double d = delta_eff;
  return 3.0 / 256.0 * (4.0 - d * p) * (64.0 - 16.0 * d * p + d * d * d * p * p * (1.0 + q) * (1.0 + q));
}

std::optional<double> f1b6_threshold(double q) {
  if (!(q > 0.0 && q <= 0.5)) throw DomainError("f1b6 threshold needs q in (0, 1/2]");
  if (q <= 0.2) return std::nullopt;
  return 72.0 / (-5.0 * q * q + 26.0 * q - 5.0);
}

double F_unit_root(double q) {
  if (!(q > 0.0 && q <= 0.5)) throw DomainError("F root needs q in (0, 1/2]");
  const double top = 4.0 / ((1.0 - q) * (1.0 - q));
  double hi = top;
  double lo = top - kRootScanStep;
  while (lo > 0.0 && F_of_delta(q, lo) < 1.0) {
    hi = lo;
    lo -= kRootScanStep;
  }
  lo = std::max(lo, 0.0);
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    if (F_of_delta(q, mid) >= 1.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double delta_II_threshold(double q) {
  check_q(q);
  const auto [lo_w, hi_w] = model_II_chaos_window();
  if (!(q > lo_w && q < hi_w)) {
    throw WindowError("q = " + std::to_string(q) + " lies outside the model II chaos window");
  }
  q = canonical_q(q);
  return std::max(*f1b6_threshold(q), F_unit_root(q));
}

bool model_III_period3_condition(const IntervalMapSpec& spec, double x) {
  if (spec.model() != Model::III) throw DomainError("period-3 condition applies to model III only");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("point must lie strictly inside (0,1)");
  const auto img = three_images(spec, x);
  return x + img[0] + img[1] > 3.0 * spec.q();
}

double delta_III_threshold(double q) {
  check_q(q);
  if (std::abs(q - 0.5) < kSymmetricTol) {
    throw SymmetricCaseError("equal gains: model III has an attracting 2-cycle, not chaos");
  }
  return *delta_III_scan(canonical_q(q), kIII_Cap + 1.0);
}

TwoCycle symmetric_two_cycle(double delta_eff) {
  if (!(delta_eff > 8.0) || !std::isfinite(delta_eff)) {
    throw ThresholdError("symmetric 2-cycle needs delta' > 8");
  }
  const double d = delta_eff;
  // In logit coordinates z the map is z -> z - d(sigma(z) - 1/2), so the
  // cycle point solves 2z = d(sigma(z) - 1/2) with z < 0.
  auto sigma_of = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  auto h = [&](double z) { return 2.0 * z - d * (sigma_of(z) - 0.5); };
  double lo = -0.5 * d - 1.0;
  double hi = -1.0;
  for (int i = 0; h(hi) <= 0.0; ++i) {
    if (i > 200) throw DynamicsError("could not bracket the symmetric 2-cycle");
    hi *= 0.5;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (h(mid) < 0.0) lo = mid; else hi = mid;
  }
  TwoCycle c;
  const double z = 0.5 * (lo + hi);
  c.sigma = sigma_of(z);
  const double w = d * c.sigma * (1.0 - c.sigma);
  c.multiplier = (1.0 - w) * (1.0 - w);
  if (!(std::abs(c.multiplier) < 1.0)) {
    throw DynamicsError("symmetric 2-cycle is not attracting at this step");
  }
  return c;
}

RegimeReport classify_regime(Model model, double q, double delta_eff) {
  const IntervalMapSpec spec(model, q, delta_eff);
  RegimeReport r;
  r.model = model;
  r.q = q;
  r.delta_eff = delta_eff;
  const double qc = canonical_q(q);
  r.certificate.convergence_threshold = convergence_threshold(qc);

  if (model == Model::I) {
    r.regime = Regime::global_convergence;
    return r;
  }

  if (model == Model::II) {
    r.certificate.max_step = model_II_max_step_normalized(qc);
    if (delta_eff <= r.certificate.convergence_threshold || qc < 1.0 / 3.0 - kThirdTol) {
      r.regime = Regime::global_convergence;
      return r;
    }
    if (std::abs(qc - 1.0 / 3.0) <= kThirdTol) {
      r.regime = Regime::undetermined;
      return r;
    }
    const auto window = model_II_chaos_window();
    if (qc > window.first) {
      const double threshold = delta_II_threshold(qc);
      r.certificate.chaos_threshold = threshold;
      if (delta_eff > threshold) {
        r.regime = Regime::certified_chaos;
        r.certificate.witness = canonical_witness(spec);
        return r;
      }
    }
    r.regime = Regime::equilibrium_repelling;
    return r;
  }

  // Model III
  if (delta_eff <= r.certificate.convergence_threshold) {
    r.regime = Regime::global_convergence;
    return r;
  }
  if (std::abs(qc - 0.5) < kSymmetricTol) {
    r.certificate.two_cycle = symmetric_two_cycle(delta_eff);
    r.regime = Regime::attracting_two_cycle;
    return r;
  }
  const auto threshold = delta_III_scan(qc, delta_eff);
  if (threshold && delta_eff > *threshold) {
    r.certificate.chaos_threshold = threshold;
    r.certificate.chaos_threshold_numeric = true;
    r.regime = Regime::certified_chaos;
    // The condition point itself is a witness once mapped back to q.
    if (auto x = period3_point(qc, delta_eff)) {
      const double x0 = q <= 0.5 ? *x : 1.0 - *x;
      r.certificate.witness = witness_at(spec, x0);
    }
    if (!r.certificate.witness) r.certificate.witness = canonical_witness(spec);
    return r;
  }
  r.certificate.witness = canonical_witness(spec);
  r.regime = r.certificate.witness ? Regime::certified_chaos : Regime::undetermined;
  return r;
}

}  // namespace replab
