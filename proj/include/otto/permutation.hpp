#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otto/engine.hpp"

namespace otto {

/// Permutation unitary on the product basis: U|i> = |map[i]>.
class BasisPermutation {
 public:
  BasisPermutation() = default;

  /// Throws std::invalid_argument unless `map` is a bijection on [0, size).
  explicit BasisPermutation(std::vector<std::size_t> map);

  static BasisPermutation identity(std::size_t size);

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  std::span<const std::size_t> map() const { return map_; }

  bool is_identity() const;
  bool is_involution() const;

  /// Smallest k >= 1 with p^k = identity.
  std::size_t order() const;

  friend bool operator==(const BasisPermutation&, const BasisPermutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Operator product outer * inner: inner acts first.
BasisPermutation compose(const BasisPermutation& outer, const BasisPermutation& inner);
BasisPermutation inverse(const BasisPermutation& p);

/// U rho U^dagger for diagonal rho: out[p(i)] = in[i].
DiagonalState apply_permutation(const DiagonalState& state, const BasisPermutation& p);

/// 1-based disjoint cycles, e.g. "(24)(37)(68)". Fixed points are omitted and
/// the identity prints as "()". Labels above 9 are comma separated.
std::string cycle_notation(const BasisPermutation& p);

/// Inverse of cycle_notation for a basis of `size` states. Accepts "()" and
/// either compact digits or comma separated labels inside each cycle.
BasisPermutation parse_cycle_notation(std::string_view text, std::size_t size);

/// Smallest coprime (a, b) != (0, 0), ordered by a + b then a, such that
/// a * n_A + b * n_B is conserved by p, with a, b <= 2 * max(dim).
std::optional<std::pair<int, int>> conserved_number_combination(const BasisPermutation& p,
                                                                const EngineParams& params);

/// The named two-qutrit permutations on the 9-state basis.
namespace qutrit {
BasisPermutation swap();                 // U1 = (24)(37)(68)
BasisPermutation idle_swap_b();          // U2 = (34)(67)
BasisPermutation idle_swap_a();          // U2~ = (27)(38) = U1 U2 U1
BasisPermutation double_swap();          // U3 = U2 U1 = (236874)
BasisPermutation double_swap_inverse();  // U3~ = U1 U2 = U3^-1
}  // namespace qutrit

}  // namespace otto
