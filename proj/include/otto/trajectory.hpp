#pragma once

// Monte Carlo cycles of the two-stroke engine.
//
// A cycle draws |n m> from the Gibbs product state, applies the permutation
// (|l s> = U|n m>), then re-thermalises each qudit completely: (n', m') are
// drawn afresh from the single-qudit Gibbs marginals, independent of (l, s).
// Reservoir microstates are not simulated.
//
// Random numbers: std::mt19937_64. A uniform in [0, 1) is the top 53 bits of
// one draw times 2^-53; levels are picked by inverse CDF. With `workers`
// shards, shard k is seeded with the (k+1)-th output of SplitMix64 started at
// the master seed, and shard summaries are merged in shard order.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "otto/engine.hpp"
#include "otto/permutation.hpp"
#include "otto/statistics.hpp"

namespace otto {

struct Trajectory {
  std::size_t n = 0, m = 0;              // initial measurement
  std::size_t l = 0, s = 0;              // after the work stroke
  std::size_t n_prime = 0, m_prime = 0;  // after thermalisation

  double work(const EngineParams& p) const;
  double delta_e_a(const EngineParams& p) const;
  double delta_e_b(const EngineParams& p) const;
  double heat_hot(const EngineParams& p) const;   // Q_H = E_n'^A - E_l^A
  double heat_cold(const EngineParams& p) const;  // Q_C = E_m'^B - E_s^B
  double entropy(const EngineParams& p) const;    // beta_a dE_A + beta_b dE_B
  std::pair<int, int> shifts() const {
    return {static_cast<int>(n) - static_cast<int>(l), static_cast<int>(m) - static_cast<int>(s)};
  }
};

/// Welford accumulator with Chan's pairwise merge.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 below two samples.
  double variance() const;
  double standard_error() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct HistogramEntry {
  int shift_a;
  int shift_b;
  double mass;
};

struct EmpiricalSummary {
  std::uint64_t sample_count = 0;
  RunningMoments work, heat_hot, heat_cold, entropy;
  RunningMoments delta_e_a, delta_e_b;
  RunningMoments exp_minus_entropy;
  RunningMoments hot_balance;   // Q_H + dE_A
  RunningMoments cold_balance;  // Q_C + dE_B
  RunningMoments cycle_energy;  // Q_H + Q_C - W
  std::map<std::pair<int, int>, std::uint64_t> counts;  // keyed on level shifts

  void add(const EngineParams& params, const Trajectory& t);
  void merge(const EmpiricalSummary& other);
  std::vector<HistogramEntry> histogram() const;
};

class CycleSampler {
 public:
  CycleSampler(const EngineParams& params, BasisPermutation u, std::uint64_t seed);

  Trajectory next();
  const EngineParams& params() const { return params_; }

 private:
  double uniform();
  static std::size_t pick(const std::vector<double>& cumulative, double u);

  EngineParams params_;
  BasisPermutation unitary_;
  std::mt19937_64 rng_;
  std::vector<double> joint_cdf_;
  std::vector<double> marginal_a_cdf_;
  std::vector<double> marginal_b_cdf_;
};

/// SplitMix64 step used to derive shard seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic for fixed (params, u, count, seed, workers).
EmpiricalSummary sample_cycles(const EngineParams& params, const BasisPermutation& u,
                               std::uint64_t count, std::uint64_t seed, unsigned workers = 1);

struct IdentityCheck {
  double residual = 0.0;
  double standard_error = 0.0;
  bool passed = false;
};

struct MeanIdentityReport {
  IdentityCheck hot;    // <Q_H> + <dE_A>
  IdentityCheck cold;   // <Q_C> + <dE_B>
  IdentityCheck cycle;  // <Q_H + Q_C - W>
  bool passed() const { return hot.passed && cold.passed && cycle.passed; }
};

/// Each residual must lie within 4 standard errors of zero. Exact <dE_A>,
/// <dE_B> come from `exact`; a zero standard error demands |residual| <= 1e-12.
MeanIdentityReport mean_identities_check(const EmpiricalSummary& summary,
                                         const JointWorkHeat& exact);

/// Total variation distance between the empirical histogram and `exact`.
double total_variation(const EmpiricalSummary& summary, const JointWorkHeat& exact);

/// Whether every observed outcome is an atom of `exact`.
bool histogram_within_support(const EmpiricalSummary& summary, const JointWorkHeat& exact);

}  // namespace otto
