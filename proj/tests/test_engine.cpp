#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracle.hpp"
#include "otto/engine.hpp"

using otto::EngineParams;

TEST_CASE("gibbs state at infinite temperature is uniform") {
  EngineParams p;
  p.beta_a = 0.0;
  p.beta_b = 0.0;
  const auto rho = otto::gibbs_state(p);
  REQUIRE(rho.size() == 9);
  for (double v : rho.probs) CHECK(v == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gibbs ground population matches partition functions") {
  EngineParams p;
  p.omega_a = 1.0;
  p.omega_b = 1.0;
  p.beta_a = 0.5;
  p.beta_b = 2.0;
  const double za = 1.0 + std::exp(-0.5) + std::exp(-1.0);
  const double zb = 1.0 + std::exp(-2.0) + std::exp(-4.0);
  const auto rho = otto::gibbs_state(p);
  CHECK(std::abs(rho[0] - 1.0 / (za * zb)) < 1e-15);
  const double total = std::accumulate(rho.probs.begin(), rho.probs.end(), 0.0);
  CHECK(std::abs(total - 1.0) < 1e-15);
}

TEST_CASE("gibbs state matches direct evaluation") {
  oracle::ParamGen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const EngineParams p = gen.qutrits(1e-3, 40.0);
    const auto rho = otto::gibbs_state(p);
    for (std::size_t i = 0; i < 9; ++i) {
      const double expected = oracle::population(p, i / 3, i % 3);
      CHECK(std::abs(rho[i] - expected) <= 1e-14 * std::max(expected, 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("zero temperature on B concentrates on the m = 0 column") {
  EngineParams p;
  p.omega_b = 1.0;
  p.beta_b = 700.0;
  const auto rho = otto::gibbs_state(p);
  double column = 0.0;
  for (std::size_t n = 0; n < 3; ++n) column += rho[p.index(n, 0)];
  CHECK(column == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t n = 0; n < 3; ++n) CHECK(rho[p.index(n, 2)] == 0.0);
  const auto logs = otto::gibbs_log_populations(p);
  for (double v : logs) CHECK(std::isfinite(v));
}

TEST_CASE("log populations agree with populations") {
  oracle::ParamGen gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const EngineParams p = gen.qutrits();
    const auto rho = otto::gibbs_state(p);
    const auto logs = otto::gibbs_log_populations(p);
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::exp(logs[i]) == doctest::Approx(rho[i]).epsilon(1e-13));
  }
}

TEST_CASE("marginals multiply to the joint state") {
  EngineParams p;
  p.dim_a = 4;
  p.dim_b = 2;
  const auto rho = otto::gibbs_state(p);
  const auto pa = otto::gibbs_marginal_a(p);
  const auto pb = otto::gibbs_marginal_b(p);
  REQUIRE(pa.size() == 4);
  REQUIRE(pb.size() == 2);
  for (std::size_t n = 0; n < 4; ++n) {
    for (std::size_t m = 0; m < 2; ++m) {
      CHECK(rho[p.index(n, m)] == doctest::Approx(pa[n] * pb[m]).epsilon(1e-14));
    }
  }
}

TEST_CASE("exchanging A and B transposes the gibbs state") {
  oracle::ParamGen gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    EngineParams p = gen.qutrits();
    p.dim_a = 2 + gen.index(3);
    p.dim_b = 2 + gen.index(3);
    const EngineParams q = p.swapped();
    CHECK(q.dim_a == p.dim_b);
    CHECK(q.omega_a == p.omega_b);
    const auto rho = otto::gibbs_state(p);
    const auto sigma = otto::gibbs_state(q);
    for (std::size_t n = 0; n < p.dim_a; ++n) {
      for (std::size_t m = 0; m < p.dim_b; ++m) {
        CHECK(rho[p.index(n, m)] == doctest::Approx(sigma[q.index(m, n)]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("energy table") {
  EngineParams p;
  p.omega_a = 1.0;
  p.omega_b = 0.5;
  CHECK(otto::energy_table(p)[7] == 2.5);
  CHECK(otto::energy_table(p)[0] == 0.0);

  p.omega_b = 1.0;
  auto e = otto::energy_table(p).energies;
  CHECK(std::count(e.begin(), e.end(), 1.0) == 2);
  CHECK(std::count(e.begin(), e.end(), 2.0) == 3);
  CHECK(std::count(e.begin(), e.end(), 3.0) == 2);

  p.omega_b = 2.0;
  p.dim_a = 2;
  p.dim_b = 2;
  e = otto::energy_table(p).energies;
  CHECK(e == std::vector<double>{0.0, 2.0, 1.0, 3.0});
}

TEST_CASE("parameter validation") {
  EngineParams p;
  CHECK_NOTHROW(p.validate());
  auto bad = [](auto mutate) {
    EngineParams q;
    mutate(q);
    return q;
  };
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.omega_a = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.omega_b = -1.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.beta_a = -0.1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.beta_b = NAN; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.omega_a = INFINITY; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](EngineParams& q) { q.dim_a = 1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(otto::gibbs_state(bad([](EngineParams& q) { q.dim_b = 0; })), std::invalid_argument);
  CHECK_NOTHROW(bad([](EngineParams& q) { q.beta_a = 0.0; }).validate());
}
