#include "otto/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace otto {

namespace {

double level(std::size_t k, double omega) { return static_cast<double>(k) * omega; }

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> cdf(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    cdf[i] = total;
  }
  return cdf;
}

bool within_four_sigma(double residual, double se) {
  if (se == 0.0) return std::abs(residual) <= 1e-12;
  return std::abs(residual) <= 4.0 * se;
}

}  // namespace

double Trajectory::work(const EngineParams& p) const {
  return level(n, p.omega_a) - level(l, p.omega_a) + level(m, p.omega_b) - level(s, p.omega_b);
}
double Trajectory::delta_e_a(const EngineParams& p) const {
  return level(l, p.omega_a) - level(n, p.omega_a);
}
double Trajectory::delta_e_b(const EngineParams& p) const {
  return level(s, p.omega_b) - level(m, p.omega_b);
}
double Trajectory::heat_hot(const EngineParams& p) const {
  return level(n_prime, p.omega_a) - level(l, p.omega_a);
}
double Trajectory::heat_cold(const EngineParams& p) const {
  return level(m_prime, p.omega_b) - level(s, p.omega_b);
}
double Trajectory::entropy(const EngineParams& p) const {
  return p.beta_a * delta_e_a(p) + p.beta_b * delta_e_b(p);
}

void RunningMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count_);
  const double n2 = static_cast<double>(other.count_);
  const double total = n1 + n2;
  const double delta = other.mean_ - mean_;
  mean_ += delta * n2 / total;
  m2_ += other.m2_ + delta * delta * n1 * n2 / total;
  count_ += other.count_;
}

double RunningMoments::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningMoments::standard_error() const {
  return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

void EmpiricalSummary::add(const EngineParams& params, const Trajectory& t) {
  ++sample_count;
  const double w = t.work(params);
  const double qh = t.heat_hot(params);
  const double qc = t.heat_cold(params);
  const double dea = t.delta_e_a(params);
  const double deb = t.delta_e_b(params);
  const double sigma = t.entropy(params);
  work.add(w);
  heat_hot.add(qh);
  heat_cold.add(qc);
  entropy.add(sigma);
  delta_e_a.add(dea);
  delta_e_b.add(deb);
  exp_minus_entropy.add(std::exp(-sigma));
  hot_balance.add(qh + dea);
  cold_balance.add(qc + deb);
  cycle_energy.add(qh + qc - w);
  ++counts[t.shifts()];
}

void EmpiricalSummary::merge(const EmpiricalSummary& other) {
  sample_count += other.sample_count;
  work.merge(other.work);
  heat_hot.merge(other.heat_hot);
  heat_cold.merge(other.heat_cold);
  entropy.merge(other.entropy);
  delta_e_a.merge(other.delta_e_a);
  delta_e_b.merge(other.delta_e_b);
  exp_minus_entropy.merge(other.exp_minus_entropy);
  hot_balance.merge(other.hot_balance);
  cold_balance.merge(other.cold_balance);
  cycle_energy.merge(other.cycle_energy);
  for (const auto& [key, c] : other.counts) counts[key] += c;
}

std::vector<HistogramEntry> EmpiricalSummary::histogram() const {
  std::vector<HistogramEntry> out;
  out.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    out.push_back({key.first, key.second,
                   static_cast<double>(c) / static_cast<double>(sample_count)});
  }
  return out;
}

CycleSampler::CycleSampler(const EngineParams& params, BasisPermutation u, std::uint64_t seed)
    : params_(params), unitary_(std::move(u)), rng_(seed) {
  params_.validate();
  if (unitary_.size() != params_.dimension()) {
    throw std::invalid_argument("CycleSampler: permutation size does not match the engine");
  }
  joint_cdf_ = cumulative(gibbs_state(params_).probs);
  marginal_a_cdf_ = cumulative(gibbs_marginal_a(params_));
  marginal_b_cdf_ = cumulative(gibbs_marginal_b(params_));
}

double CycleSampler::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::size_t CycleSampler::pick(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

Trajectory CycleSampler::next() {
  Trajectory t;
  const std::size_t i = pick(joint_cdf_, uniform());
  const std::size_t j = unitary_(i);
  t.n = params_.level_a(i);
  t.m = params_.level_b(i);
  t.l = params_.level_a(j);
  t.s = params_.level_b(j);
  t.n_prime = pick(marginal_a_cdf_, uniform());
  t.m_prime = pick(marginal_b_cdf_, uniform());
  return t;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

EmpiricalSummary sample_cycles(const EngineParams& params, const BasisPermutation& u,
                               std::uint64_t count, std::uint64_t seed, unsigned workers) {
  if (count == 0) throw std::invalid_argument("sample_cycles: count must be >= 1");
  workers = std::max(1u, workers);

  std::uint64_t state = seed;
  std::vector<std::uint64_t> shard_seeds(workers);
  for (auto& s : shard_seeds) s = splitmix64(state);

  std::vector<EmpiricalSummary> shards(workers);
  auto run = [&](unsigned k) {
    const std::uint64_t share = count / workers + (k < count % workers ? 1 : 0);
    CycleSampler sampler(params, u, shard_seeds[k]);
    for (std::uint64_t c = 0; c < share; ++c) shards[k].add(params, sampler.next());
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned k = 0; k < workers; ++k) threads.emplace_back(run, k);
  }

  EmpiricalSummary total;
  for (const auto& shard : shards) total.merge(shard);
  return total;
}

MeanIdentityReport mean_identities_check(const EmpiricalSummary& summary,
                                         const JointWorkHeat& exact) {
  double exact_dea = 0.0;
  double exact_deb = 0.0;
  for (const auto& atom : exact.atoms) {
    exact_dea += atom.probability * atom.delta_e_a;
    exact_deb += atom.probability * atom.delta_e_b();
  }
  MeanIdentityReport report;
  report.hot = {summary.heat_hot.mean() + exact_dea, summary.heat_hot.standard_error(), false};
  report.cold = {summary.heat_cold.mean() + exact_deb, summary.heat_cold.standard_error(), false};
  report.cycle = {summary.cycle_energy.mean(), summary.cycle_energy.standard_error(), false};
  for (IdentityCheck* c : {&report.hot, &report.cold, &report.cycle}) {
    c->passed = within_four_sigma(c->residual, c->standard_error);
  }
  return report;
}

double total_variation(const EmpiricalSummary& summary, const JointWorkHeat& exact) {
  std::map<std::pair<int, int>, double> diff;
  for (const auto& atom : exact.atoms) diff[{atom.shift_a, atom.shift_b}] -= atom.probability;
  for (const auto& e : summary.histogram()) diff[{e.shift_a, e.shift_b}] += e.mass;
  double tv = 0.0;
  for (const auto& [key, d] : diff) tv += std::abs(d);
  return 0.5 * tv;
}

bool histogram_within_support(const EmpiricalSummary& summary, const JointWorkHeat& exact) {
  for (const auto& [key, c] : summary.counts) {
    if (exact.find(key.first, key.second) == nullptr) return false;
  }
  return true;
}

}  // namespace otto
