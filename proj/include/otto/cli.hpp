#pragma once

// Command-line front end. `run` executes an already-parsed configuration;
// `main_entry` parses argv with CLI11 first. Both return the process exit code.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "otto/engine.hpp"
#include "otto/ergotropy.hpp"
#include "otto/permutation.hpp"
#include "otto/tur.hpp"

namespace otto::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadArguments = 2,
  kExitVerificationFailed = 3,
};

inline constexpr std::uint64_t kMinVerifySamples = 10'000;

struct RunConfig {
  std::string subcommand;  // classify | distribution | sweep | regime-map | verify-ft
  EngineParams params;
  std::string unitary = "auto";

  SweepSpec sweep{SweepVariable::OmegaB, 0.05, 2.0, 100, false};
  double ratio_from = 1.0 / 16.0;  // beta_a / beta_b, regime-map only
  double ratio_to = 1.0;
  std::size_t ratio_steps = 16;

  std::string output;  // empty: write to the output stream
  std::uint64_t seed = 20240611;
  std::uint64_t samples = 1'000'000;
};

/// %.17g with "-0" printed as "0".
std::string format_double(double v);

/// auto | u1 | u2 | u2t | u3 | u3t | identity | cycles:<text>.
/// Throws std::invalid_argument for unknown selectors.
BasisPermutation resolve_unitary(std::string_view selector, const EngineParams& params);

std::string distribution_csv(const EngineParams& params, const BasisPermutation& u);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string regime_map_csv(const std::vector<RegimePoint>& points);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace otto::cli
