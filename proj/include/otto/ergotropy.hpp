#pragma once

// Work-optimal (ergotropic) permutation for a diagonal product state.
//
// P_E sorts the product basis by ascending energy, P_rho by descending
// population; U = P_E^-1 P_rho sends the k-th most populated state onto the
// k-th lowest level. Both sorts are stable on lexicographic order, so ties
// resolve deterministically. Ties never change the extracted work.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otto/engine.hpp"
#include "otto/permutation.hpp"

namespace otto {

enum class RegimeLabel { Passive, Swap, IdleSwapB, IdleSwapA, DoubleSwap, DoubleSwapInverse };

inline constexpr RegimeLabel kAllRegimes[] = {
    RegimeLabel::Passive,   RegimeLabel::Swap,       RegimeLabel::IdleSwapB,
    RegimeLabel::IdleSwapA, RegimeLabel::DoubleSwap, RegimeLabel::DoubleSwapInverse};

std::string_view to_string(RegimeLabel label);
std::optional<RegimeLabel> parse_regime(std::string_view text);

/// Two-qutrit permutation carrying `label` (identity for Passive).
BasisPermutation named_unitary(RegimeLabel label);

/// Label of a 9-state permutation, if it is one of the named ones.
std::optional<RegimeLabel> match_named(const BasisPermutation& p);

struct ErgotropyResult {
  BasisPermutation unitary;
  double mean_work = 0.0;
  std::optional<RegimeLabel> regime;  // two-qutrit engines only
};

struct SortPermutations {
  BasisPermutation by_energy;      // P_E
  BasisPermutation by_population;  // P_rho
};

SortPermutations sort_permutations(const EngineParams& params);

/// Mean work Tr[rho0 H] - Tr[U rho0 U^dagger H] of a permutation.
double permutation_work(const EngineParams& params, const BasisPermutation& u);

/// Passive inputs (optimal work below 1e-12 in units of the largest level)
/// are reported as the identity with zero work. For two qutrits, a tie-broken
/// permutation outside the named set is replaced by the named one that
/// extracts the same work.
ErgotropyResult ergotropic_unitary(const EngineParams& params);

/// Closed-form mean work of a named two-qutrit permutation, valid for any
/// parameters (negative outside the permutation's own regime). Passive -> 0.
/// Throws std::invalid_argument for other dimensions.
double closed_form_work(const EngineParams& params, RegimeLabel which);

struct RegimePoint {
  double omega_b;
  double beta_ratio;  // beta_a / beta_b
  RegimeLabel regime;
};

/// Classifies the ergotropic permutation over omega_b x (beta_a / beta_b),
/// keeping omega_a, beta_b and the dimensions of `base`. Row-major in
/// beta_ratios (outer) then omega_b_values (inner). Two qutrits only.
std::vector<RegimePoint> regime_map(const EngineParams& base,
                                    std::span<const double> omega_b_values,
                                    std::span<const double> beta_ratios);

}  // namespace otto
