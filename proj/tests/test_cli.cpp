#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "otto/cli.hpp"

namespace cli = otto::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "otto-engine");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::set<std::string> column(const std::vector<std::vector<std::string>>& rows, std::size_t c) {
  std::set<std::string> out;
  for (std::size_t r = 1; r < rows.size(); ++r) out.insert(rows[r][c]);
  return out;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(0.0) == "0");
  CHECK(cli::format_double(1.0) == "1");
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(-2.5) == "-2.5");
  for (double v : {1.0 / 3.0, 2.0e-300, 123456.789, -7.25e17}) {
    CHECK(std::strtod(cli::format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("unitary selectors") {
  const otto::EngineParams p;
  CHECK(cli::resolve_unitary("u1", p) == otto::qutrit::swap());
  CHECK(cli::resolve_unitary("u2", p) == otto::qutrit::idle_swap_b());
  CHECK(cli::resolve_unitary("u2t", p) == otto::qutrit::idle_swap_a());
  CHECK(cli::resolve_unitary("u3", p) == otto::qutrit::double_swap());
  CHECK(cli::resolve_unitary("u3t", p) == otto::qutrit::double_swap_inverse());
  CHECK(cli::resolve_unitary("identity", p).is_identity());
  CHECK(cli::resolve_unitary("auto", p) == otto::qutrit::double_swap());
  CHECK(cli::resolve_unitary("cycles:(24)(37)(68)", p) == otto::qutrit::swap());
  CHECK_THROWS_AS(cli::resolve_unitary("cycles:(24)(45)", p), std::invalid_argument);
  CHECK_THROWS_AS(cli::resolve_unitary("u4", p), std::invalid_argument);
  otto::EngineParams qubits;
  qubits.dim_a = qubits.dim_b = 2;
  CHECK_THROWS_AS(cli::resolve_unitary("u1", qubits), std::invalid_argument);
  CHECK(cli::resolve_unitary("cycles:(23)", qubits)(1) == 2);
}

TEST_CASE("classify") {
  auto r = invoke({"classify", "--omega-a", "1", "--omega-b", "0.2", "--beta-a", "0.5", "--beta-b", "4"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "DoubleSwap (236874)");
  r = invoke({"classify", "--omega-a", "1", "--omega-b", "0.3", "--beta-a", "0.5", "--beta-b", "4"});
  CHECK(first_line(r.out) == "Swap (24)(37)(68)");
  r = invoke({"classify", "--omega-b", "0.4", "--beta-a", "0.1", "--beta-b", "4"});
  CHECK(first_line(r.out) == "Swap (24)(37)(68)");
  r = invoke({"classify", "--beta-a", "1", "--beta-b", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "Passive ()\nmean_work 0\nmean_entropy 0\n");
  r = invoke({"classify", "--omega-a", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("omega_a") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("distribution csv") {
  auto r = invoke({"distribution", "--unitary", "identity"});
  CHECK(r.code == 0);
  CHECK(r.out == "w,delta_e_a,probability\n0,0,1\n");

  r = invoke({"distribution", "--unitary", "u1", "--omega-b", "0.4", "--beta-a", "0.5", "--beta-b", "5"});
  auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"w", "delta_e_a", "probability"});
  CHECK(column(rows, 0).size() == 5);

  r = invoke({"distribution", "--unitary", "u3", "--omega-b", "0.75", "--beta-a", "0.5", "--beta-b", "2.6666666666666665"});
  rows = parse_csv(r.out);
  CHECK(column(rows, 0).size() == 7);
  double total = 0.0;
  double prev_w = -1e300, prev_e = -1e300;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double w = std::strtod(rows[k][0].c_str(), nullptr);
    const double e = std::strtod(rows[k][1].c_str(), nullptr);
    CHECK((w > prev_w || (w == prev_w && e > prev_e)));
    prev_w = w;
    prev_e = e;
    total += std::strtod(rows[k][2].c_str(), nullptr);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("sweep csv") {
  const auto r = invoke({"sweep", "--sweep", "omega-b", "--from", "0.05", "--to", "2", "--steps", "80",
                         "--omega-a", "1", "--beta-a", "0.5", "--beta-b", "4"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 81);
  CHECK(first_line(r.out) ==
        "sweep_value,regime,mean_work,var_work,mean_entropy,snr,bound_standard,bound_swap,"
        "bound_tight,bound_loose,gen_lhs,gen_bound_tight,gen_bound_loose");
  std::vector<std::string> sequence;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].size() == 13);
    if (sequence.empty() || sequence.back() != rows[k][1]) sequence.push_back(rows[k][1]);
    const double mean = std::strtod(rows[k][2].c_str(), nullptr);
    const double var = std::strtod(rows[k][3].c_str(), nullptr);
    const double snr = std::strtod(rows[k][5].c_str(), nullptr);
    if (var > 0.0) CHECK(snr == mean * mean / var);
  }
  const std::vector<std::string> expected = {"IdleSwapB", "DoubleSwap", "Swap", "DoubleSwap", "IdleSwapA"};
  bool found = false;
  for (std::size_t start = 0; start + expected.size() <= sequence.size(); ++start) {
    found |= std::equal(expected.begin(), expected.end(), sequence.begin() + static_cast<long>(start));
  }
  CHECK(found);

  // Deterministic bytes.
  const auto again = invoke({"sweep", "--sweep", "omega-b", "--from", "0.05", "--to", "2", "--steps", "80",
                             "--omega-a", "1", "--beta-a", "0.5", "--beta-b", "4"});
  CHECK(again.out == r.out);
}

TEST_CASE("single-step sweep matches classify") {
  const auto sweep = invoke({"sweep", "--from", "0.75", "--to", "0.75", "--steps", "1"});
  const auto classify = invoke({"classify", "--omega-b", "0.75"});
  const auto rows = parse_csv(sweep.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "DoubleSwap");
  CHECK(classify.out.find("mean_work " + rows[1][2] + "\n") != std::string::npos);
  CHECK(classify.out.find("mean_entropy " + rows[1][4] + "\n") != std::string::npos);
}

TEST_CASE("product sweep with a fixed unitary") {
  const auto r = invoke({"sweep", "--sweep", "beta-b-omega-b", "--unitary", "u3", "--beta-a", "0.001",
                         "--omega-b", "0.01", "--from", "0.01", "--to", "50", "--steps", "25", "--scale", "log"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 26);
  CHECK(column(rows, 1) == std::set<std::string>{"DoubleSwap"});
  CHECK(rows[1][0] == "0.01");
  CHECK(rows[25][0] == "50");
}

TEST_CASE("sweep argument errors") {
  CHECK(invoke({"sweep", "--steps", "0"}).code == 2);
  CHECK(invoke({"sweep", "--scale", "log", "--from", "0"}).code == 2);
  CHECK(invoke({"sweep", "--sweep", "beta-a"}).code == 2);
  CHECK(invoke({"sweep", "--scale", "cubic"}).code == 2);
  CHECK(invoke({"sweep", "--unitary", "bogus"}).code == 2);
}

TEST_CASE("regime map csv") {
  auto labels = [](const std::string& ratio) {
    const auto r = invoke({"regime-map", "--from", "0.01", "--to", "10", "--steps", "300", "--scale", "log",
                           "--ratio-from", ratio, "--ratio-to", ratio, "--ratio-steps", "1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"omega_b", "beta_param", "regime"});
    CHECK(rows.size() == 301);
    return column(rows, 2);
  };
  const auto low = labels("0.0625");
  CHECK(low == std::set<std::string>{"Passive", "Swap", "IdleSwapB", "IdleSwapA", "DoubleSwap"});
  CHECK(labels("0.5625").count("DoubleSwap") == 0);
  CHECK(labels("1") == std::set<std::string>{"Passive"});

  const auto grid = invoke({"regime-map", "--steps", "4", "--ratio-from", "0.25", "--ratio-to", "0.75",
                            "--ratio-steps", "3"});
  CHECK(parse_csv(grid.out).size() == 13);
  CHECK(invoke({"regime-map", "--dim-a", "2"}).code == 2);
}

TEST_CASE("verify-ft") {
  auto r = invoke({"verify-ft", "--unitary", "u1", "--samples", "100000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  r = invoke({"verify-ft", "--unitary", "u3", "--samples", "100000"});
  CHECK(r.code == 0);
  r = invoke({"verify-ft", "--unitary", "identity", "--samples", "10000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("detailed_ft_max_rel_error 0\n") != std::string::npos);
  CHECK(r.out.find("integral_ft_residual 0\n") != std::string::npos);
  CHECK(r.out.find("mc_mean_exp_minus_entropy 1\n") != std::string::npos);
  CHECK(invoke({"verify-ft", "--samples", "9999"}).code == 2);

  const auto a = invoke({"verify-ft", "--seed", "5", "--samples", "20000"});
  const auto b = invoke({"verify-ft", "--seed", "5", "--samples", "20000"});
  CHECK(a.out == b.out);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "otto_cli_test.csv";
  auto r = invoke({"distribution", "--unitary", "identity", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "w,delta_e_a,probability\n0,0,1\n");
  std::filesystem::remove(path);

  r = invoke({"distribution", "--output", "/nonexistent-dir/x.csv"});
  CHECK(r.code == 2);
}

TEST_CASE("argument parsing") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"classify", "--omega-z", "1"}).code == 2);
  CHECK(invoke({"classify", "--omega-b", "abc"}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("regime-map") != std::string::npos);
}

TEST_CASE("run with a prepared config") {
  cli::RunConfig config;
  config.subcommand = "distribution";
  config.unitary = "u2";
  config.params.omega_b = 0.75;
  std::ostringstream out, err;
  CHECK(cli::run(config, out, err) == 0);
  CHECK(parse_csv(out.str()).size() == 4);
  config.subcommand = "nope";
  CHECK(cli::run(config, out, err) == 2);
}
