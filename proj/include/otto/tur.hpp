#pragma once

// Thermodynamic uncertainty relations for the extracted work.
//
// With r = var(W) / <W>^2 and s = <Sigma>:
//   standard            r >= 2 / s
//   swap                r >= 2 / s - 1                   (number-conserving strokes)
//   tight               r >= csch^2(g(s / 2))           (time-symmetric processes)
//   loose               r >= 2 / (e^s - 1)              (time-symmetric processes)
//   generalized_tight   R >= csch^2(g(a / 2)) / 2
//   generalized_loose   R >= 1 / (e^a - 1)
// where g inverts x tanh x, R = (var + var_B) / (<W> + <W>_B)^2 and
// a = (s + s_B) / 2 uses the backward process (inverse permutation).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otto/engine.hpp"
#include "otto/permutation.hpp"
#include "otto/statistics.hpp"

namespace otto {

enum class TurBound { Standard, Swap, Tight, Loose, GeneralizedTight, GeneralizedLoose };

inline constexpr std::array<TurBound, 6> kAllTurBounds = {
    TurBound::Standard, TurBound::Swap,          TurBound::Tight,
    TurBound::Loose,    TurBound::GeneralizedTight, TurBound::GeneralizedLoose};

std::string_view to_string(TurBound bound);

/// Relative tolerance on the satisfied flag.
inline constexpr double kTurTolerance = 1e-12;

struct BoundCheck {
  double value = 0.0;     // right-hand side
  bool satisfied = true;  // left-hand side >= value (up to kTurTolerance)
  bool applicable = true; // whether a proof of the bound covers this process
};

struct TurReport {
  bool operational = true;  // false when <W> = 0 and r is undefined
  double relative_fluctuations = 0.0;
  double mean_entropy = 0.0;
  /// <Sigma> var(W) / <W>^2, the quantity compared against 2 in the
  /// rescaled presentation of the standard bound.
  double entropy_fluctuation_product = 0.0;
  /// (var + var_B) / (<W> + <W>_B)^2.
  double generalized_fluctuations = 0.0;
  std::array<BoundCheck, kAllTurBounds.size()> bounds{};
  std::optional<CycleStatistics> backward_stats;

  const BoundCheck& operator[](TurBound b) const { return bounds[static_cast<std::size_t>(b)]; }
  BoundCheck& operator[](TurBound b) { return bounds[static_cast<std::size_t>(b)]; }
};

/// g(y): the x >= 0 with x tanh x = y, by bisection. Throws for y < 0.
double inverse_x_tanh_x(double y);

/// csch^2(g(s / 2)); uses 1/g^2 - 1/3 below s = 1e-8.
double tight_bound(double mean_entropy);
/// 2 / (e^s - 1).
double loose_bound(double mean_entropy);

/// Which proofs cover the process; only affects the `applicable` flags.
struct BoundScope {
  bool number_conserving = false;  // swap bound
  bool time_symmetric = false;     // tight and loose bounds (p_B = p)
};

TurReport evaluate_bounds(const CycleStatistics& forward, const CycleStatistics& backward,
                          BoundScope scope = {});

/// Forward and backward statistics of `u`. The swap bound is marked
/// applicable when u conserves a combination of the number operators, the
/// tight and loose bounds when u is self-inverse.
TurReport tur_report(const EngineParams& params, const BasisPermutation& u);

enum class SweepVariable {
  OmegaB,       // raw omega_b, betas fixed
  BetaBOmegaB,  // the product beta_b * omega_b, omega_b fixed
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::OmegaB;
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 1;
  bool log_scale = false;
};

/// Grid points of a sweep; a single step yields `from`. Throws
/// std::invalid_argument for zero steps, non-finite ends, or a log scale
/// with a non-positive end.
std::vector<double> sweep_values(const SweepSpec& spec);

struct SweepRow {
  double sweep_value = 0.0;
  std::string regime;
  CycleStatistics stats;
  TurReport report;
};

/// Name for the regime column: the named qutrit label when `u` is one,
/// "Passive" for the identity, otherwise "Custom".
std::string regime_name(const BasisPermutation& u);

/// One row per grid point. Without `fixed_unitary` the ergotropic
/// permutation is recomputed at every point.
std::vector<SweepRow> snr_sweep(const EngineParams& base, const SweepSpec& spec,
                                const std::optional<BasisPermutation>& fixed_unitary);

}  // namespace otto
