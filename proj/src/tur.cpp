#include "otto/tur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace otto {

std::string_view to_string(TurBound bound) {
  switch (bound) {
    case TurBound::Standard: return "standard";
    case TurBound::Swap: return "swap";
    case TurBound::Tight: return "tight";
    case TurBound::Loose: return "loose";
    case TurBound::GeneralizedTight: return "generalized_tight";
    case TurBound::GeneralizedLoose: return "generalized_loose";
  }
  return "unknown";
}

double inverse_x_tanh_x(double y) {
  if (!(y >= 0.0)) throw std::invalid_argument("inverse_x_tanh_x: argument must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return y;
  // x tanh x is increasing on [0, inf) and exceeds x - 1 for x >= 1.
  double lo = 0.0;
  double hi = std::max(1.0, y + 1.0);
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid * std::tanh(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_lo = std::abs(lo * std::tanh(lo) - y);
  const double r_hi = std::abs(hi * std::tanh(hi) - y);
  return r_lo <= r_hi ? lo : hi;
}

double tight_bound(double mean_entropy) {
  if (!(mean_entropy > 0.0)) return std::numeric_limits<double>::infinity();
  const double g = inverse_x_tanh_x(mean_entropy / 2.0);
  if (mean_entropy < 1e-8) return 1.0 / (g * g) - 1.0 / 3.0;
  const double sh = std::sinh(g);
  return 1.0 / (sh * sh);
}

double loose_bound(double mean_entropy) {
  if (!(mean_entropy > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 / std::expm1(mean_entropy);
}

namespace {

bool at_least(double lhs, double bound) {
  if (std::isinf(bound) && bound > 0.0) return std::isinf(lhs) && lhs > 0.0;
  return lhs >= bound - kTurTolerance * std::abs(bound);
}

}  // namespace

TurReport evaluate_bounds(const CycleStatistics& forward, const CycleStatistics& backward,
                          BoundScope scope) {
  TurReport report;
  report.backward_stats = backward;
  report.mean_entropy = forward.mean_entropy;
  const double s = forward.mean_entropy;

  report[TurBound::Standard].value = s > 0.0 ? 2.0 / s : std::numeric_limits<double>::infinity();
  report[TurBound::Swap].value = report[TurBound::Standard].value - 1.0;
  report[TurBound::Tight].value = tight_bound(s);
  report[TurBound::Loose].value = loose_bound(s);
  report[TurBound::Standard].applicable = scope.time_symmetric;
  report[TurBound::Swap].applicable = scope.number_conserving;
  report[TurBound::Tight].applicable = scope.time_symmetric;
  report[TurBound::Loose].applicable = scope.time_symmetric;

  const double a = 0.5 * (forward.mean_entropy + backward.mean_entropy);
  report[TurBound::GeneralizedTight].value = 0.5 * tight_bound(a);
  // 1/(e^a - 1): reduces to the loose bound when the backward process equals the forward one.
  report[TurBound::GeneralizedLoose].value =
      a > 0.0 ? 1.0 / std::expm1(a) : std::numeric_limits<double>::infinity();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.operational = forward.mean_work != 0.0;
  report.relative_fluctuations = forward.relative_fluctuations();
  report.entropy_fluctuation_product = report.operational ? s * report.relative_fluctuations : nan;

  const double sum_mean = forward.mean_work + backward.mean_work;
  report.generalized_fluctuations =
      sum_mean != 0.0 ? (forward.var_work + backward.var_work) / (sum_mean * sum_mean) : nan;

  // Undefined left-hand sides claim no violation.
  for (TurBound b : {TurBound::Standard, TurBound::Swap, TurBound::Tight, TurBound::Loose}) {
    report[b].satisfied =
        !report.operational || at_least(report.relative_fluctuations, report[b].value);
  }
  for (TurBound b : {TurBound::GeneralizedTight, TurBound::GeneralizedLoose}) {
    report[b].satisfied = sum_mean == 0.0 || at_least(report.generalized_fluctuations,
                                                       report[b].value);
  }
  return report;
}

TurReport tur_report(const EngineParams& params, const BasisPermutation& u) {
  const CycleStatistics forward = cycle_statistics(params, u);
  const CycleStatistics backward = cycle_statistics(params, inverse(u));
  BoundScope scope;
  scope.number_conserving = conserved_number_combination(u, params).has_value();
  scope.time_symmetric = u.is_involution();
  return evaluate_bounds(forward, backward, scope);
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  if (spec.steps == 0) throw std::invalid_argument("sweep: steps must be >= 1");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to)) {
    throw std::invalid_argument("sweep: range ends must be finite");
  }
  if (spec.log_scale && (spec.from <= 0.0 || spec.to <= 0.0)) {
    throw std::invalid_argument("sweep: log scale needs positive range ends");
  }
  std::vector<double> values(spec.steps);
  for (std::size_t k = 0; k < spec.steps; ++k) {
    if (spec.steps == 1) {
      values[k] = spec.from;
      break;
    }
    const double t = static_cast<double>(k) / static_cast<double>(spec.steps - 1);
    values[k] = spec.log_scale ? spec.from * std::pow(spec.to / spec.from, t)
                               : spec.from + (spec.to - spec.from) * t;
  }
  // Endpoints exactly as given.
  values.back() = spec.steps == 1 ? spec.from : spec.to;
  return values;
}

std::string regime_name(const BasisPermutation& u) {
  if (const auto label = match_named(u)) return std::string(to_string(*label));
  if (u.is_identity()) return "Passive";
  return "Custom";
}

std::vector<SweepRow> snr_sweep(const EngineParams& base, const SweepSpec& spec,
                                const std::optional<BasisPermutation>& fixed_unitary) {
  const std::vector<double> values = sweep_values(spec);
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    EngineParams p = base;
    if (spec.variable == SweepVariable::OmegaB) {
      p.omega_b = v;
    } else {
      p.beta_b = v / p.omega_b;
    }
    const BasisPermutation u = fixed_unitary ? *fixed_unitary : ergotropic_unitary(p).unitary;
    SweepRow row;
    row.sweep_value = v;
    row.regime = regime_name(u);
    row.report = tur_report(p, u);
    row.stats = cycle_statistics(p, u);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace otto
