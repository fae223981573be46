#include "otto/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace otto {

BasisPermutation::BasisPermutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t target : map_) {
    if (target >= map_.size() || seen[target]) {
      throw std::invalid_argument("BasisPermutation: map is not a bijection");
    }
    seen[target] = true;
  }
}

BasisPermutation BasisPermutation::identity(std::size_t size) {
  std::vector<std::size_t> map(size);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return BasisPermutation(std::move(map));
}

bool BasisPermutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i) return false;
  }
  return true;
}

bool BasisPermutation::is_involution() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[map_[i]] != i) return false;
  }
  return true;
}

std::size_t BasisPermutation::order() const {
  // lcm of the cycle lengths
  std::vector<bool> visited(map_.size(), false);
  std::size_t result = 1;
  for (std::size_t start = 0; start < map_.size(); ++start) {
    if (visited[start]) continue;
    std::size_t length = 0;
    for (std::size_t i = start; !visited[i]; i = map_[i]) {
      visited[i] = true;
      ++length;
    }
    result = std::lcm(result, length);
  }
  return result;
}

BasisPermutation compose(const BasisPermutation& outer, const BasisPermutation& inner) {
  if (outer.size() != inner.size()) {
    throw std::invalid_argument("compose: permutation sizes differ");
  }
  std::vector<std::size_t> map(inner.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = outer(inner(i));
  return BasisPermutation(std::move(map));
}

BasisPermutation inverse(const BasisPermutation& p) {
  std::vector<std::size_t> map(p.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[p(i)] = i;
  return BasisPermutation(std::move(map));
}

DiagonalState apply_permutation(const DiagonalState& state, const BasisPermutation& p) {
  if (state.size() != p.size()) {
    throw std::invalid_argument("apply_permutation: state and permutation sizes differ");
  }
  DiagonalState out;
  out.probs.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) out.probs[p(i)] = state.probs[i];
  return out;
}

std::string cycle_notation(const BasisPermutation& p) {
  const bool compact = p.size() <= 9;
  std::vector<bool> visited(p.size(), false);
  std::string out;
  // Starting each cycle at its smallest unvisited element yields cycles sorted
  // by smallest element, each beginning with that element.
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (visited[start] || p(start) == start) {
      visited[start] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (std::size_t i = start; !visited[i]; i = p(i)) {
      visited[i] = true;
      if (!compact && !first) out += ',';
      out += std::to_string(i + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

BasisPermutation parse_cycle_notation(std::string_view text, std::size_t size) {
  auto fail = [&](const std::string& why) -> BasisPermutation {
    throw std::invalid_argument("parse_cycle_notation: " + why + " in \"" + std::string(text) +
                                "\"");
  };
  std::vector<std::size_t> map(size);
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::vector<bool> used(size, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (pos == text.size()) return fail("empty text");
  while (pos < text.size()) {
    if (text[pos] != '(') return fail("expected '('");
    ++pos;
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) return fail("unbalanced parenthesis");
    const std::string_view body = text.substr(pos, close - pos);
    pos = close + 1;
    skip_space();

    std::vector<std::size_t> cycle;
    const bool has_commas = body.find(',') != std::string_view::npos;
    std::size_t k = 0;
    while (k < body.size()) {
      const char c = body[k];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++k;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail("unexpected character");
      std::size_t label = 0;
      if (has_commas) {
        while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) {
          label = label * 10 + static_cast<std::size_t>(body[k] - '0');
          ++k;
        }
      } else {
        label = static_cast<std::size_t>(c - '0');
        ++k;
      }
      if (label == 0 || label > size) return fail("label out of range");
      if (used[label - 1]) return fail("label repeated");
      used[label - 1] = true;
      cycle.push_back(label - 1);
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      map[cycle[j]] = cycle[(j + 1) % cycle.size()];
    }
  }
  return BasisPermutation(std::move(map));
}

std::optional<std::pair<int, int>> conserved_number_combination(const BasisPermutation& p,
                                                                const EngineParams& params) {
  if (p.size() != params.dimension()) {
    throw std::invalid_argument("conserved_number_combination: size mismatch");
  }
  const int limit = static_cast<int>(2 * std::max(params.dim_a, params.dim_b));
  auto conserved = [&](int a, int b) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::size_t j = p(i);
      const long before = a * static_cast<long>(params.level_a(i)) +
                          b * static_cast<long>(params.level_b(i));
      const long after = a * static_cast<long>(params.level_a(j)) +
                         b * static_cast<long>(params.level_b(j));
      if (before != after) return false;
    }
    return true;
  };
  for (int sum = 1; sum <= 2 * limit; ++sum) {
    for (int a = std::max(0, sum - limit); a <= std::min(sum, limit); ++a) {
      const int b = sum - a;
      if (std::gcd(a, b) != 1) continue;
      if (conserved(a, b)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

namespace qutrit {

BasisPermutation swap() { return parse_cycle_notation("(24)(37)(68)", 9); }
BasisPermutation idle_swap_b() { return parse_cycle_notation("(34)(67)", 9); }
BasisPermutation idle_swap_a() { return parse_cycle_notation("(27)(38)", 9); }
BasisPermutation double_swap() { return parse_cycle_notation("(236874)", 9); }
BasisPermutation double_swap_inverse() { return inverse(double_swap()); }

}  // namespace qutrit

}  // namespace otto
