#include "otto/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otto {

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Passive: return "Passive";
    case RegimeLabel::Swap: return "Swap";
    case RegimeLabel::IdleSwapB: return "IdleSwapB";
    case RegimeLabel::IdleSwapA: return "IdleSwapA";
    case RegimeLabel::DoubleSwap: return "DoubleSwap";
    case RegimeLabel::DoubleSwapInverse: return "DoubleSwapInverse";
  }
  return "Unknown";
}

std::optional<RegimeLabel> parse_regime(std::string_view text) {
  for (RegimeLabel label : kAllRegimes) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

BasisPermutation named_unitary(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Passive: return BasisPermutation::identity(9);
    case RegimeLabel::Swap: return qutrit::swap();
    case RegimeLabel::IdleSwapB: return qutrit::idle_swap_b();
    case RegimeLabel::IdleSwapA: return qutrit::idle_swap_a();
    case RegimeLabel::DoubleSwap: return qutrit::double_swap();
    case RegimeLabel::DoubleSwapInverse: return qutrit::double_swap_inverse();
  }
  throw std::invalid_argument("named_unitary: unknown label");
}

std::optional<RegimeLabel> match_named(const BasisPermutation& p) {
  if (p.size() != 9) return std::nullopt;
  for (RegimeLabel label : kAllRegimes) {
    if (named_unitary(label) == p) return label;
  }
  return std::nullopt;
}

namespace {

// rank[i] = position of i after stable-sorting indices by `less`.
template <typename Less>
BasisPermutation rank_permutation(std::size_t size, Less less) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<std::size_t> rank(size);
  for (std::size_t r = 0; r < size; ++r) rank[order[r]] = r;
  return BasisPermutation(std::move(rank));
}

double energy_scale(const EngineParams& params) {
  const double top = static_cast<double>(params.dim_a - 1) * params.omega_a +
                     static_cast<double>(params.dim_b - 1) * params.omega_b;
  return std::max(1.0, top);
}

}  // namespace

SortPermutations sort_permutations(const EngineParams& params) {
  const EnergyTable energy = energy_table(params);
  // Populations compared through their exponents so that underflowed
  // weights keep their order.
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  std::vector<double> exponent(params.dimension());
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    exponent[i] = a * static_cast<double>(params.level_a(i)) +
                  b * static_cast<double>(params.level_b(i));
  }
  return SortPermutations{
      rank_permutation(energy.size(),
                       [&](std::size_t i, std::size_t j) { return energy[i] < energy[j]; }),
      rank_permutation(exponent.size(),
                       [&](std::size_t i, std::size_t j) { return exponent[i] < exponent[j]; }),
  };
}

double permutation_work(const EngineParams& params, const BasisPermutation& u) {
  const DiagonalState rho = gibbs_state(params);
  const EnergyTable energy = energy_table(params);
  if (u.size() != rho.size()) {
    throw std::invalid_argument("permutation_work: permutation size does not match engine");
  }
  double work = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) work += rho[i] * (energy[i] - energy[u(i)]);
  return work;
}

ErgotropyResult ergotropic_unitary(const EngineParams& params) {
  const SortPermutations sorts = sort_permutations(params);
  ErgotropyResult result;
  result.unitary = compose(inverse(sorts.by_energy), sorts.by_population);
  result.mean_work = permutation_work(params, result.unitary);

  const double tolerance = 1e-12 * energy_scale(params);
  if (result.mean_work <= tolerance) {
    result.unitary = BasisPermutation::identity(params.dimension());
    result.mean_work = 0.0;
  }
  if (!params.is_qutrit_pair()) return result;

  result.regime = match_named(result.unitary);
  if (!result.regime) {
    // Only reachable on exact degeneracies; pick an equally good named one.
    for (RegimeLabel label : kAllRegimes) {
      const double w = permutation_work(params, named_unitary(label));
      if (std::abs(w - result.mean_work) <= tolerance) {
        result.unitary = named_unitary(label);
        result.regime = label;
        break;
      }
    }
  }
  return result;
}

double closed_form_work(const EngineParams& params, RegimeLabel which) {
  params.validate();
  if (!params.is_qutrit_pair()) {
    throw std::invalid_argument("closed_form_work: only defined for two qutrits");
  }
  const double wa = params.omega_a;
  const double wb = params.omega_b;
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  const double ca = 1.0 + 2.0 * std::cosh(a);
  const double cb = 1.0 + 2.0 * std::cosh(b);
  const double denom = ca * cb;
  switch (which) {
    case RegimeLabel::Passive:
      return 0.0;
    case RegimeLabel::Swap:
      return 2.0 * (wa - wb) * (std::sinh(b) / cb - std::sinh(a) / ca);
    case RegimeLabel::IdleSwapB:
      return 2.0 * (wa - 2.0 * wb) * (std::sinh(b) + std::sinh(b - a)) / denom;
    case RegimeLabel::IdleSwapA:
      return 2.0 * (wb - 2.0 * wa) * (std::sinh(a) + std::sinh(a - b)) / denom;
    case RegimeLabel::DoubleSwap:
      return 2.0 *
             (wa * (std::sinh(b) + std::sinh(b - a)) - wb * (std::sinh(a) + std::sinh(b))) /
             denom;
    case RegimeLabel::DoubleSwapInverse:
      // U3~ = U1 U3 U1 is U3 with the two qutrits relabelled.
      return closed_form_work(params.swapped(), RegimeLabel::DoubleSwap);
  }
  throw std::invalid_argument("closed_form_work: unknown label");
}

std::vector<RegimePoint> regime_map(const EngineParams& base,
                                    std::span<const double> omega_b_values,
                                    std::span<const double> beta_ratios) {
  if (!base.is_qutrit_pair()) {
    throw std::invalid_argument("regime_map: only defined for two qutrits");
  }
  std::vector<RegimePoint> out;
  out.reserve(omega_b_values.size() * beta_ratios.size());
  for (double ratio : beta_ratios) {
    for (double omega_b : omega_b_values) {
      EngineParams p = base;
      p.omega_b = omega_b;
      p.beta_a = ratio * base.beta_b;
      const ErgotropyResult r = ergotropic_unitary(p);
      out.push_back({omega_b, ratio, r.regime.value()});
    }
  }
  return out;
}

}  // namespace otto
