#include "otto/engine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace otto {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("EngineParams: " + what);
}

// Normalised Gibbs populations of a single equally spaced qudit.
std::vector<double> single_gibbs(double reduced, std::size_t dim) {
  std::vector<double> w(dim);
  for (std::size_t k = 0; k < dim; ++k) w[k] = std::exp(-reduced * static_cast<double>(k));
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= z;
  return w;
}

double log_partition(double reduced, std::size_t dim) {
  // Ground-state weight is 1, so the sum is >= 1 and never underflows.
  double z = 0.0;
  for (std::size_t k = 0; k < dim; ++k) z += std::exp(-reduced * static_cast<double>(k));
  return std::log(z);
}

}  // namespace

void EngineParams::validate() const {
  require(std::isfinite(omega_a) && omega_a > 0.0, "omega_a must be finite and > 0");
  require(std::isfinite(omega_b) && omega_b > 0.0, "omega_b must be finite and > 0");
  require(std::isfinite(beta_a) && beta_a >= 0.0, "beta_a must be finite and >= 0");
  require(std::isfinite(beta_b) && beta_b >= 0.0, "beta_b must be finite and >= 0");
  require(dim_a >= 2, "dim_a must be >= 2");
  require(dim_b >= 2, "dim_b must be >= 2");
  require(std::isfinite(ratio()) && ratio() > 0.0, "omega_b / omega_a must be finite and > 0");
}

EngineParams EngineParams::swapped() const {
  EngineParams s = *this;
  s.omega_a = omega_b;
  s.omega_b = omega_a;
  s.beta_a = beta_b;
  s.beta_b = beta_a;
  s.dim_a = dim_b;
  s.dim_b = dim_a;
  return s;
}

std::vector<double> gibbs_marginal_a(const EngineParams& params) {
  params.validate();
  return single_gibbs(params.reduced_a(), params.dim_a);
}

std::vector<double> gibbs_marginal_b(const EngineParams& params) {
  params.validate();
  return single_gibbs(params.reduced_b(), params.dim_b);
}

DiagonalState gibbs_state(const EngineParams& params) {
  params.validate();
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  DiagonalState state;
  state.probs.resize(params.dimension());
  for (std::size_t n = 0; n < params.dim_a; ++n) {
    for (std::size_t m = 0; m < params.dim_b; ++m) {
      state.probs[params.index(n, m)] =
          std::exp(-a * static_cast<double>(n) - b * static_cast<double>(m));
    }
  }
  const double total = std::accumulate(state.probs.begin(), state.probs.end(), 0.0);
  for (double& p : state.probs) p /= total;
  return state;
}

std::vector<double> gibbs_log_populations(const EngineParams& params) {
  params.validate();
  const double a = params.reduced_a();
  const double b = params.reduced_b();
  const double log_z = log_partition(a, params.dim_a) + log_partition(b, params.dim_b);
  std::vector<double> out(params.dimension());
  for (std::size_t n = 0; n < params.dim_a; ++n) {
    for (std::size_t m = 0; m < params.dim_b; ++m) {
      out[params.index(n, m)] =
          -a * static_cast<double>(n) - b * static_cast<double>(m) - log_z;
    }
  }
  return out;
}

EnergyTable energy_table(const EngineParams& params) {
  params.validate();
  EnergyTable table;
  table.energies.resize(params.dimension());
  for (std::size_t n = 0; n < params.dim_a; ++n) {
    for (std::size_t m = 0; m < params.dim_b; ++m) {
      table.energies[params.index(n, m)] =
          static_cast<double>(n) * params.omega_a + static_cast<double>(m) * params.omega_b;
    }
  }
  return table;
}

}  // namespace otto
