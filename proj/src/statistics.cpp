#include "otto/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <stdexcept>
#include <utility>

namespace otto {

namespace {

double log_sum_exp(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum);
}

void require_same_engine(const EngineParams& params, const BasisPermutation& u,
                         const char* where) {
  if (u.size() != params.dimension()) {
    throw std::invalid_argument(std::string(where) +
                                ": permutation size does not match the engine basis");
  }
}

}  // namespace

double JointWorkHeat::total_probability() const {
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.probability;
  return total;
}

const WorkHeatAtom* JointWorkHeat::find(int shift_a, int shift_b) const {
  for (const auto& atom : atoms) {
    if (atom.shift_a == shift_a && atom.shift_b == shift_b) return &atom;
  }
  return nullptr;
}

double CycleStatistics::relative_fluctuations() const {
  if (mean_work == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return var_work / (mean_work * mean_work);
}

JointWorkHeat joint_distribution(const EngineParams& params, const BasisPermutation& u) {
  require_same_engine(params, u, "joint_distribution");
  const std::vector<double> log_pop = gibbs_log_populations(params);

  std::map<std::pair<int, int>, std::vector<double>> groups;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::size_t j = u(i);
    const int shift_a =
        static_cast<int>(params.level_a(i)) - static_cast<int>(params.level_a(j));
    const int shift_b =
        static_cast<int>(params.level_b(i)) - static_cast<int>(params.level_b(j));
    groups[{shift_a, shift_b}].push_back(log_pop[i]);
  }

  JointWorkHeat joint;
  joint.atoms.reserve(groups.size());
  for (const auto& [key, logs] : groups) {
    WorkHeatAtom atom;
    atom.shift_a = key.first;
    atom.shift_b = key.second;
    // + 0.0 turns a signed zero into +0.
    atom.work = params.omega_a * key.first + params.omega_b * key.second + 0.0;
    atom.delta_e_a = -params.omega_a * key.first + 0.0;
    atom.log_probability = log_sum_exp(logs);
    atom.probability = std::exp(atom.log_probability);
    joint.atoms.push_back(atom);
  }
  if (joint.atoms.size() == 1) {
    // A lone atom carries all the mass; avoid printing 0.99999999999999989.
    joint.atoms.front().log_probability = 0.0;
    joint.atoms.front().probability = 1.0;
  }
  std::sort(joint.atoms.begin(), joint.atoms.end(), [](const auto& x, const auto& y) {
    return std::tie(x.work, x.delta_e_a) < std::tie(y.work, y.delta_e_a);
  });
  return joint;
}

JointWorkHeat backward_joint(const EngineParams& params, const BasisPermutation& u) {
  return joint_distribution(params, inverse(u));
}

std::vector<WorkPoint> work_marginal(const JointWorkHeat& joint) {
  double scale = 0.0;
  for (const auto& atom : joint.atoms) scale = std::max(scale, std::abs(atom.work));
  const double tolerance = 1e-12 * std::max(1.0, scale);

  std::vector<WorkPoint> out;
  for (const auto& atom : joint.atoms) {  // already sorted by work
    if (!out.empty() && atom.work - out.back().work <= tolerance) {
      out.back().probability += atom.probability;
    } else {
      out.push_back({atom.work, atom.probability});
    }
  }
  return out;
}

double moments(const JointWorkHeat& joint, int j, int k) {
  if (j < 0 || k < 0 || j + k > 8) {
    throw std::invalid_argument("moments: orders must satisfy j, k >= 0 and j + k <= 8");
  }
  double sum = 0.0;
  for (const auto& atom : joint.atoms) {
    sum += atom.probability * std::pow(atom.work, j) * std::pow(atom.delta_e_a, k);
  }
  return sum;
}

namespace {

// P (s - 1 + e^{-s}), with a series where the closed form cancels and logs where e^{-s} overflows.
double relative_entropy_term(const WorkHeatAtom& atom, double s) {
  if (std::abs(s) < 1e-3) {
    return atom.probability * s * s *
           (0.5 - s * (1.0 / 6.0 - s * (1.0 / 24.0 - s * (1.0 / 120.0 - s / 720.0))));
  }
  if (std::abs(s) < 30.0) return atom.probability * (s + std::expm1(-s));
  return atom.probability * (s - 1.0) + std::exp(atom.log_probability - s);
}

}  // namespace

double atom_entropy(const EngineParams& params, const WorkHeatAtom& atom) {
  // beta_a dE_A + beta_b dE_B written on the level shifts.
  return -params.reduced_a() * atom.shift_a - params.reduced_b() * atom.shift_b;
}

CycleStatistics entropy_production(const EngineParams& params, const JointWorkHeat& joint) {
  CycleStatistics s;
  for (const auto& atom : joint.atoms) {
    s.mean_work += atom.probability * atom.work;
    s.mean_delta_e_a += atom.probability * atom.delta_e_a;
    s.mean_delta_e_b += atom.probability * atom.delta_e_b();
  }
  for (const auto& atom : joint.atoms) {
    const double d = atom.work - s.mean_work;
    s.var_work += atom.probability * d * d;
  }
  // The joint comes from a permutation, so sum P e^{-s} = 1 and <s> = sum P (s - 1 + e^{-s}).
  // Every term is non-negative, which keeps tiny entropy productions accurate.
  for (const auto& atom : joint.atoms) {
    s.mean_entropy += relative_entropy_term(atom, atom_entropy(params, atom));
  }
  if (s.var_work > 0.0) {
    s.snr = s.mean_work * s.mean_work / s.var_work;
  } else {
    s.snr = s.mean_work == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return s;
}

CycleStatistics cycle_statistics(const EngineParams& params, const BasisPermutation& u) {
  return entropy_production(params, joint_distribution(params, u));
}

std::complex<double> characteristic_function(const JointWorkHeat& joint, std::complex<double> lambda,
                                             std::complex<double> mu) {
  if (std::abs(lambda.imag()) > kCountingFieldCap || std::abs(mu.imag()) > kCountingFieldCap) {
    throw std::domain_error("characteristic_function: imaginary counting field above cap");
  }
  const std::complex<double> i_unit(0.0, 1.0);
  std::vector<std::complex<double>> exponents;
  exponents.reserve(joint.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& atom : joint.atoms) {
    const std::complex<double> e =
        atom.log_probability + i_unit * (lambda * atom.work + mu * atom.delta_e_a);
    top = std::max(top, e.real());
    exponents.push_back(e);
  }
  std::complex<double> sum = 0.0;
  for (const auto& e : exponents) sum += std::exp(e - top);
  return std::exp(top) * sum;
}

std::complex<double> characteristic_function(const EngineParams& params, const BasisPermutation& u,
                                             std::complex<double> lambda,
                                             std::complex<double> mu) {
  return characteristic_function(joint_distribution(params, u), lambda, mu);
}

double integral_ft_residual(const EngineParams& params, const JointWorkHeat& joint) {
  std::vector<double> logs;
  logs.reserve(joint.size());
  for (const auto& atom : joint.atoms) {
    logs.push_back(atom.log_probability - atom_entropy(params, atom));
  }
  return std::abs(std::expm1(log_sum_exp(logs)));
}

double detailed_ft_check(const EngineParams& params, const BasisPermutation& u) {
  const JointWorkHeat forward = joint_distribution(params, u);
  const JointWorkHeat backward = backward_joint(params, u);
  double worst = 0.0;
  for (const auto& atom : forward.atoms) {
    const WorkHeatAtom* partner = backward.find(-atom.shift_a, -atom.shift_b);
    if (partner == nullptr) return std::numeric_limits<double>::infinity();
    const double log_ratio =
        atom_entropy(params, atom) + partner->log_probability - atom.log_probability;
    worst = std::max(worst, std::abs(std::expm1(log_ratio)));
  }
  // Atoms only present backward falsify the theorem as well.
  for (const auto& atom : backward.atoms) {
    if (forward.find(-atom.shift_a, -atom.shift_b) == nullptr) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

std::optional<double> moment_law_alpha(const EngineParams& params, const BasisPermutation& u) {
  const auto combo = conserved_number_combination(u, params);
  if (!combo) return std::nullopt;
  const auto [a, b] = *combo;
  // [H_A + x H_B, U] = 0 with x = b omega_a / (a omega_b); alpha = x / (1 - x).
  const double denom = a * params.omega_b - b * params.omega_a;
  if (denom == 0.0) return std::nullopt;
  return b * params.omega_a / denom;
}

double closed_form_entropy(const EngineParams& params, RegimeLabel which) {
  params.validate();
  if (!params.is_qutrit_pair()) {
    throw std::invalid_argument("closed_form_entropy: only defined for two qutrits");
  }
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  const double ca = 1.0 + 2.0 * std::cosh(a);
  const double cb = 1.0 + 2.0 * std::cosh(b);
  const double denom = ca * cb;
  switch (which) {
    case RegimeLabel::Passive:
      return 0.0;
    case RegimeLabel::Swap:
      // (b - a) / (omega_a - omega_b) * <W1>, with the gap factor cancelled.
      return 2.0 * (b - a) * (std::sinh(b) / cb - std::sinh(a) / ca);
    case RegimeLabel::IdleSwapB:
      return 2.0 * (2.0 * b - a) * (std::sinh(b) + std::sinh(b - a)) / denom;
    case RegimeLabel::IdleSwapA:
      return 2.0 * (2.0 * a - b) * (std::sinh(a) + std::sinh(a - b)) / denom;
    case RegimeLabel::DoubleSwap:
      return 2.0 *
             (b * (std::sinh(a) + std::sinh(b)) - a * (std::sinh(b) + std::sinh(b - a))) /
             denom;
    case RegimeLabel::DoubleSwapInverse:
      return closed_form_entropy(params.swapped(), RegimeLabel::DoubleSwap);
  }
  throw std::invalid_argument("closed_form_entropy: unknown label");
}

double closed_form_relative_fluctuations(const EngineParams& params, RegimeLabel which) {
  params.validate();
  if (!params.is_qutrit_pair()) {
    throw std::invalid_argument("closed_form_relative_fluctuations: only defined for two qutrits");
  }
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  const double x = params.ratio();
  const double denom = (1.0 + 2.0 * std::cosh(a)) * (1.0 + 2.0 * std::cosh(b));
  switch (which) {
    case RegimeLabel::Passive:
      throw std::invalid_argument("closed_form_relative_fluctuations: no work is extracted");
    case RegimeLabel::Swap: {
      const double num = std::cosh(a) + std::cosh(b) + 4.0 * std::cosh(b - a);
      const double s = std::sinh(b) - std::sinh(a) + 2.0 * std::sinh(b - a);
      return denom * num / (2.0 * s * s) - 1.0;
    }
    case RegimeLabel::IdleSwapB: {
      const double num = std::cosh(b) + std::cosh(b - a);
      const double s = std::sinh(b) + std::sinh(b - a);
      return denom * num / (2.0 * s * s) - 1.0;
    }
    case RegimeLabel::IdleSwapA:
      return closed_form_relative_fluctuations(params.swapped(), RegimeLabel::IdleSwapB);
    case RegimeLabel::DoubleSwap: {
      const double num =
          x * x * std::cosh(a) + (1.0 - x) * (1.0 - x) * std::cosh(b) + std::cosh(b - a);
      const double s = (1.0 - x) * std::sinh(b) - x * std::sinh(a) + std::sinh(b - a);
      return denom * num / (2.0 * s * s) - 1.0;
    }
    case RegimeLabel::DoubleSwapInverse:
      return closed_form_relative_fluctuations(params.swapped(), RegimeLabel::DoubleSwap);
  }
  throw std::invalid_argument("closed_form_relative_fluctuations: unknown label");
}

}  // namespace otto
