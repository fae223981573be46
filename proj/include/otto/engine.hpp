#pragma once

// Two-qudit working fluid: parameters, Gibbs product states and energies on
// the lexicographic product basis |n m>, index i = n * dim_b + m.
//
// Units: hbar = k_B = 1. Subsystem A is the one coupled to the reservoir at
// inverse temperature beta_a, B to beta_b.

#include <cstddef>
#include <vector>

namespace otto {

struct EngineParams {
  double omega_a = 1.0;
  double omega_b = 0.75;
  double beta_a = 0.5;
  double beta_b = 4.0;
  std::size_t dim_a = 3;
  std::size_t dim_b = 3;

  /// Throws std::invalid_argument when a field is non-finite or out of range.
  void validate() const;

  std::size_t dimension() const { return dim_a * dim_b; }
  std::size_t index(std::size_t n, std::size_t m) const { return n * dim_b + m; }
  std::size_t level_a(std::size_t i) const { return i / dim_b; }
  std::size_t level_b(std::size_t i) const { return i % dim_b; }

  /// Frequency ratio omega_b / omega_a.
  double ratio() const { return omega_b / omega_a; }

  /// beta * omega for each side; these set the Gibbs populations.
  double reduced_a() const { return beta_a * omega_a; }
  double reduced_b() const { return beta_b * omega_b; }

  /// Same engine with the roles of A and B exchanged.
  EngineParams swapped() const;

  bool is_qutrit_pair() const { return dim_a == 3 && dim_b == 3; }
};

struct DiagonalState {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }
};

struct EnergyTable {
  std::vector<double> energies;

  std::size_t size() const { return energies.size(); }
  double operator[](std::size_t i) const { return energies[i]; }
};

/// Product of single-qudit Gibbs states. Normalised by the computed sum of
/// the weights, so beta = 0 needs no special case.
DiagonalState gibbs_state(const EngineParams& params);

/// Natural logarithms of the Gibbs populations. Finite even when the
/// populations themselves underflow.
std::vector<double> gibbs_log_populations(const EngineParams& params);

/// Single-qudit Gibbs marginals, length dim_a and dim_b respectively.
std::vector<double> gibbs_marginal_a(const EngineParams& params);
std::vector<double> gibbs_marginal_b(const EngineParams& params);

/// energies[n * dim_b + m] = n * omega_a + m * omega_b.
EnergyTable energy_table(const EngineParams& params);

}  // namespace otto
