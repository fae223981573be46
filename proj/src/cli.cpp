#include "otto/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "otto/statistics.hpp"
#include "otto/trajectory.hpp"

namespace otto::cli {

namespace {

constexpr double kExactFtTolerance = 1e-8;

void require_qutrits(const EngineParams& params, std::string_view selector) {
  if (!params.is_qutrit_pair()) {
    throw std::invalid_argument("unitary '" + std::string(selector) +
                                "' is only defined for --dim-a 3 --dim-b 3");
  }
}

// CSV goes to --output when given, otherwise to `out`.
int emit(const RunConfig& config, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (config.output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << config.output << "' for writing\n";
    return kExitBadArguments;
  }
  file << text;
  if (!file) {
    err << "error: failed writing '" << config.output << "'\n";
    return kExitBadArguments;
  }
  return kExitOk;
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const EngineParams& p = config.params;
  const BasisPermutation u = resolve_unitary(config.unitary, p);
  const CycleStatistics stats = cycle_statistics(p, u);
  std::ostringstream text;
  text << regime_name(u) << ' ' << cycle_notation(u) << '\n';
  text << "mean_work " << format_double(stats.mean_work) << '\n';
  text << "mean_entropy " << format_double(stats.mean_entropy) << '\n';
  return emit(config, text.str(), out, err);
}

int cmd_distribution(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const BasisPermutation u = resolve_unitary(config.unitary, config.params);
  return emit(config, distribution_csv(config.params, u), out, err);
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<BasisPermutation> fixed;
  if (config.unitary != "auto") fixed = resolve_unitary(config.unitary, config.params);
  const auto rows = snr_sweep(config.params, config.sweep, fixed);
  return emit(config, sweep_csv(rows), out, err);
}

int cmd_regime_map(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.sweep.variable != SweepVariable::OmegaB) {
    throw std::invalid_argument("regime-map sweeps omega-b only");
  }
  const std::vector<double> omegas = sweep_values(config.sweep);
  const std::vector<double> ratios =
      sweep_values({SweepVariable::OmegaB, config.ratio_from, config.ratio_to,
                    config.ratio_steps, false});
  return emit(config, regime_map_csv(regime_map(config.params, omegas, ratios)), out, err);
}

int cmd_verify_ft(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.samples < kMinVerifySamples) {
    err << "error: --samples must be at least " << kMinVerifySamples << '\n';
    return kExitBadArguments;
  }
  const EngineParams& p = config.params;
  const BasisPermutation u = resolve_unitary(config.unitary, p);
  const double detailed = detailed_ft_check(p, u);
  const double integral = integral_ft_residual(p, joint_distribution(p, u));
  const EmpiricalSummary mc = sample_cycles(p, u, config.samples, config.seed);
  const double mc_mean = mc.exp_minus_entropy.mean();
  const double mc_se = mc.exp_minus_entropy.standard_error();
  const double mc_dev = std::abs(mc_mean - 1.0);
  const bool mc_ok = mc_se > 0.0 ? mc_dev <= 4.0 * mc_se : mc_dev <= 1e-12;

  std::ostringstream text;
  text << "unitary " << regime_name(u) << ' ' << cycle_notation(u) << '\n';
  text << "detailed_ft_max_rel_error " << format_double(detailed) << '\n';
  text << "integral_ft_residual " << format_double(integral) << '\n';
  text << "mc_mean_exp_minus_entropy " << format_double(mc_mean) << '\n';
  text << "mc_standard_error " << format_double(mc_se) << '\n';
  text << "mc_samples " << mc.sample_count << '\n';

  bool ok = true;
  if (!(detailed < kExactFtTolerance)) {
    text << "FAIL detailed_ft " << format_double(detailed) << '\n';
    ok = false;
  }
  if (!(integral < kExactFtTolerance)) {
    text << "FAIL integral_ft " << format_double(integral) << '\n';
    ok = false;
  }
  if (!mc_ok) {
    text << "FAIL monte_carlo " << format_double(mc_mean - 1.0) << '\n';
    ok = false;
  }
  if (ok) text << "PASS\n";
  const int written = emit(config, text.str(), out, err);
  if (written != kExitOk) return written;
  if (!ok) {
    err << "fluctuation theorem check failed\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BasisPermutation resolve_unitary(std::string_view selector, const EngineParams& params) {
  if (selector == "auto") return ergotropic_unitary(params).unitary;
  if (selector == "identity") return BasisPermutation::identity(params.dimension());
  if (selector.starts_with("cycles:")) {
    return parse_cycle_notation(selector.substr(7), params.dimension());
  }
  const std::pair<std::string_view, RegimeLabel> named[] = {
      {"u1", RegimeLabel::Swap},       {"u2", RegimeLabel::IdleSwapB},
      {"u2t", RegimeLabel::IdleSwapA}, {"u3", RegimeLabel::DoubleSwap},
      {"u3t", RegimeLabel::DoubleSwapInverse}};
  for (const auto& [name, label] : named) {
    if (selector == name) {
      require_qutrits(params, selector);
      return named_unitary(label);
    }
  }
  throw std::invalid_argument("unknown unitary selector '" + std::string(selector) + "'");
}

std::string distribution_csv(const EngineParams& params, const BasisPermutation& u) {
  const JointWorkHeat joint = joint_distribution(params, u);
  std::string csv = "w,delta_e_a,probability\n";
  for (const auto& atom : joint.atoms) {
    csv += format_double(atom.work) + ',' + format_double(atom.delta_e_a) + ',' +
           format_double(atom.probability) + '\n';
  }
  return csv;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string csv =
      "sweep_value,regime,mean_work,var_work,mean_entropy,snr,bound_standard,bound_swap,"
      "bound_tight,bound_loose,gen_lhs,gen_bound_tight,gen_bound_loose\n";
  for (const auto& row : rows) {
    const TurReport& r = row.report;
    const double fields[] = {row.stats.mean_work,
                             row.stats.var_work,
                             row.stats.mean_entropy,
                             row.stats.snr,
                             r[TurBound::Standard].value,
                             r[TurBound::Swap].value,
                             r[TurBound::Tight].value,
                             r[TurBound::Loose].value,
                             r.generalized_fluctuations,
                             r[TurBound::GeneralizedTight].value,
                             r[TurBound::GeneralizedLoose].value};
    csv += format_double(row.sweep_value) + ',' + row.regime;
    for (double f : fields) csv += ',' + format_double(f);
    csv += '\n';
  }
  return csv;
}

std::string regime_map_csv(const std::vector<RegimePoint>& points) {
  std::string csv = "omega_b,beta_param,regime\n";
  for (const auto& pt : points) {
    csv += format_double(pt.omega_b) + ',' + format_double(pt.beta_ratio) + ',' +
           std::string(to_string(pt.regime)) + '\n';
  }
  return csv;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.params.validate();
    if (config.subcommand == "classify") return cmd_classify(config, out, err);
    if (config.subcommand == "distribution") return cmd_distribution(config, out, err);
    if (config.subcommand == "sweep") return cmd_sweep(config, out, err);
    if (config.subcommand == "regime-map") return cmd_regime_map(config, out, err);
    if (config.subcommand == "verify-ft") return cmd_verify_ft(config, out, err);
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitBadArguments;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string sweep_name = "omega-b";
  std::string scale = "linear";

  CLI::App app{"Two-qutrit Otto engine: ergotropy, work statistics and TURs"};
  app.name("otto-engine");
  app.require_subcommand(1);

  auto add_engine = [&](CLI::App* sub) {
    sub->add_option("--omega-a", config.params.omega_a, "Level spacing of A")->capture_default_str();
    sub->add_option("--omega-b", config.params.omega_b, "Level spacing of B")->capture_default_str();
    sub->add_option("--beta-a", config.params.beta_a, "Inverse temperature of A's bath")
        ->capture_default_str();
    sub->add_option("--beta-b", config.params.beta_b, "Inverse temperature of B's bath")
        ->capture_default_str();
    sub->add_option("--dim-a", config.params.dim_a, "Levels of A")->capture_default_str();
    sub->add_option("--dim-b", config.params.dim_b, "Levels of B")->capture_default_str();
    sub->add_option("--unitary", config.unitary,
                    "auto|u1|u2|u2t|u3|u3t|identity|cycles:<text>")
        ->capture_default_str();
    sub->add_option("--output", config.output, "Write to this file instead of stdout");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--from", config.sweep.from, "First grid value")->capture_default_str();
    sub->add_option("--to", config.sweep.to, "Last grid value")->capture_default_str();
    sub->add_option("--steps", config.sweep.steps, "Number of grid points")
        ->capture_default_str();
    sub->add_option("--scale", scale, "Grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
  };

  CLI::App* classify = app.add_subcommand("classify", "Ergotropic permutation and its means");
  add_engine(classify);
  CLI::App* distribution =
      app.add_subcommand("distribution", "Joint (W, dE_A) distribution as CSV");
  add_engine(distribution);
  CLI::App* sweep = app.add_subcommand("sweep", "Statistics and TUR bounds along a sweep");
  add_engine(sweep);
  add_grid(sweep);
  sweep->add_option("--sweep", sweep_name, "Swept parameter")
      ->check(CLI::IsMember({"omega-b", "beta-b-omega-b"}))
      ->capture_default_str();
  CLI::App* map = app.add_subcommand("regime-map", "Regime label over omega_b x beta_a/beta_b");
  add_engine(map);
  add_grid(map);
  map->add_option("--ratio-from", config.ratio_from, "First beta_a/beta_b")
      ->capture_default_str();
  map->add_option("--ratio-to", config.ratio_to, "Last beta_a/beta_b")->capture_default_str();
  map->add_option("--ratio-steps", config.ratio_steps, "Number of ratios")
      ->capture_default_str();
  CLI::App* verify = app.add_subcommand("verify-ft", "Exact and sampled fluctuation theorems");
  add_engine(verify);
  verify->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  verify->add_option("--samples", config.samples, "Monte Carlo cycles")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty()) {
      err << e.what() << '\n';
    } else {
      err << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    }
    return kExitBadArguments;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.sweep.variable =
      sweep_name == "omega-b" ? SweepVariable::OmegaB : SweepVariable::BetaBOmegaB;
  config.sweep.log_scale = scale == "log";
  return run(config, out, err);
}

}  // namespace otto::cli
