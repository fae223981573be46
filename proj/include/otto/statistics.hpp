#pragma once

// Exact two-point-measurement statistics of one engine cycle.
//
// The work stroke maps |n m> to |l s> = U|n m>. Each outcome is recorded by
// its level shifts (n - l, m - s), from which
//   W     = omega_a (n - l) + omega_b (m - s)
//   dE_A  = omega_a (l - n),   dE_B = omega_b (s - m) = -W - dE_A
//   Sigma = beta_a dE_A + beta_b dE_B = (beta_a - beta_b) dE_A - beta_b W.
// Atoms are merged on the integer shifts, so coincident values from
// commensurate frequencies merge exactly.

#include <complex>
#include <optional>
#include <vector>

#include "otto/engine.hpp"
#include "otto/ergotropy.hpp"
#include "otto/permutation.hpp"

namespace otto {

struct WorkHeatAtom {
  int shift_a = 0;  // n - l
  int shift_b = 0;  // m - s
  double work = 0.0;
  double delta_e_a = 0.0;
  double probability = 0.0;
  double log_probability = 0.0;

  double delta_e_b() const { return -work - delta_e_a; }
};

/// Finite-support joint distribution p(W, dE_A), atoms sorted by
/// (work, delta_e_a) ascending.
struct JointWorkHeat {
  std::vector<WorkHeatAtom> atoms;

  std::size_t size() const { return atoms.size(); }
  double total_probability() const;
  /// Atom with the given level shifts, if present.
  const WorkHeatAtom* find(int shift_a, int shift_b) const;
};

struct WorkPoint {
  double work;
  double probability;
};

struct CycleStatistics {
  double mean_work = 0.0;
  double var_work = 0.0;
  double mean_delta_e_a = 0.0;
  double mean_delta_e_b = 0.0;
  double mean_entropy = 0.0;
  double snr = 0.0;  // mean_work^2 / var_work; +inf for a deterministic nonzero work

  /// var_work / mean_work^2; NaN when the mean work vanishes.
  double relative_fluctuations() const;
};

JointWorkHeat joint_distribution(const EngineParams& params, const BasisPermutation& u);

/// Same initial Gibbs state, driven by the inverse permutation.
JointWorkHeat backward_joint(const EngineParams& params, const BasisPermutation& u);

/// p(W): atoms summed over dE_A. Work values closer than 1e-12 of the
/// largest level spacing are merged.
std::vector<WorkPoint> work_marginal(const JointWorkHeat& joint);

/// <W^j dE_A^k> by exact summation; j + k <= 8.
double moments(const JointWorkHeat& joint, int j, int k);

/// Stochastic entropy production of one atom.
double atom_entropy(const EngineParams& params, const WorkHeatAtom& atom);

/// Moments of W, dE_A, dE_B and Sigma. `joint` must come from a permutation stroke
/// (the integral fluctuation theorem is used to evaluate <Sigma> without cancellation).
CycleStatistics entropy_production(const EngineParams& params, const JointWorkHeat& joint);
CycleStatistics cycle_statistics(const EngineParams& params, const BasisPermutation& u);

/// chi(lambda, mu) = sum_atoms p exp(i lambda W + i mu dE_A), accumulated in
/// the log domain. |Im lambda| and |Im mu| above 1e3 throw std::domain_error.
std::complex<double> characteristic_function(const JointWorkHeat& joint, std::complex<double> lambda,
                                             std::complex<double> mu);
std::complex<double> characteristic_function(const EngineParams& params, const BasisPermutation& u,
                                             std::complex<double> lambda,
                                             std::complex<double> mu);

inline constexpr double kCountingFieldCap = 1e3;

/// |<exp(-Sigma)> - 1|, evaluated in the log domain.
double integral_ft_residual(const EngineParams& params, const JointWorkHeat& joint);

/// max over atoms of |p(W, dE_A) - e^Sigma p_B(-W, -dE_A)| / p(W, dE_A).
/// An atom without a time-reversed partner yields +inf.
double detailed_ft_check(const EngineParams& params, const BasisPermutation& u);

/// alpha with dE_A = alpha W on every trajectory, when u conserves some
/// a n_A + b n_B that is not proportional to the total energy.
std::optional<double> moment_law_alpha(const EngineParams& params, const BasisPermutation& u);

/// Closed-form mean entropy production of the named qutrit permutations.
double closed_form_entropy(const EngineParams& params, RegimeLabel which);

/// Closed-form var(W) / <W>^2 of the named qutrit permutations (not Passive).
double closed_form_relative_fluctuations(const EngineParams& params, RegimeLabel which);

}  // namespace otto
