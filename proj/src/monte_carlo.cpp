// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>
#include <thread>

#include "dickeamp/errors.hpp"
#include "dickeamp/protocol.hpp"

namespace dickeamp {

namespace {

constexpr std::int64_t kChunkTrials = 4096;
constexpr double kZ95 = 1.959963984540054;

struct ChunkTally {
  std::int64_t successes = 0;
  std::vector<std::int64_t> failures_by_stage;
  std::vector<std::int64_t> first_stage;
};

// Cumulative outcome distribution of one stage.
struct StageSampler {
  std::vector<double> cumulative;
  std::size_t success_slot = 0;
  std::size_t last_nonzero = 0;

  std::size_t draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return last_nonzero;
    return static_cast<std::size_t>(it - cumulative.begin());
  }
};

StageSampler make_sampler(const StageReport& stage) {
  StageSampler s;
  double acc = 0.0;
  for (std::size_t i = 0; i < stage.outcomes.size(); ++i) {
    const auto& o = stage.outcomes[i];
    acc += o.probability;
    s.cumulative.push_back(acc);
    if (o.probability > 0.0) s.last_nonzero = i;
    if (o.pattern == stage.pattern) s.success_slot = i;
  }
  return s;
}

ChunkTally run_chunk(const std::vector<StageSampler>& samplers, std::uint64_t seed,
                     std::int64_t chunk, std::int64_t trials) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  ChunkTally t;
  t.failures_by_stage.assign(samplers.size(), 0);
  t.first_stage.assign(samplers.front().cumulative.size(), 0);
  for (std::int64_t i = 0; i < trials; ++i) {
    bool ok = true;
    for (std::size_t s = 0; s < samplers.size(); ++s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const std::size_t slot = samplers[s].draw(u);
      if (s == 0) ++t.first_stage[slot];
      if (slot != samplers[s].success_slot) {
        ++t.failures_by_stage[s];
        ok = false;
        break;
      }
    }
    if (ok) ++t.successes;
  }
  return t;
}

}  // namespace

MCReport monte_carlo(const ProtocolConfig& config, std::int64_t trials, int jobs) {
  if (trials < 1) throw DomainError("monte_carlo: trials must be >= 1");
  if (jobs < 1) throw DomainError("monte_carlo: jobs must be >= 1");
  const AmplificationReport schedule = run_schedule(config);

  // A failed schedule stops at the zero-probability stage; no trial can pass it.
  std::vector<StageSampler> samplers;
  for (const StageReport& stage : schedule.stages) samplers.push_back(make_sampler(stage));

  const std::int64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkTally> tallies(static_cast<std::size_t>(n_chunks));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < n_chunks; c = next++) {
      const std::int64_t count = std::min(kChunkTrials, trials - c * kChunkTrials);
      tallies[static_cast<std::size_t>(c)] = run_chunk(samplers, config.rng_seed, c, count);
    }
  };
  const int n_threads = static_cast<int>(std::min<std::int64_t>(jobs, n_chunks));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }

  MCReport r;
  r.seed = config.rng_seed;
  r.trials = trials;
  r.failures_by_stage.assign(samplers.size(), 0);
  const auto& first = schedule.stages.front();
  for (const auto& o : first.outcomes) r.first_stage.push_back({o.pattern, 0, o.probability});
  for (const ChunkTally& t : tallies) {
    r.successes += t.successes;
    for (std::size_t s = 0; s < samplers.size(); ++s) r.failures_by_stage[s] += t.failures_by_stage[s];
    for (std::size_t i = 0; i < r.first_stage.size(); ++i) r.first_stage[i].count += t.first_stage[i];
  }

  const double n = static_cast<double>(trials);
  r.success_frequency = static_cast<double>(r.successes) / n;
  r.expected_probability = schedule.success_probability;
  r.standard_error = std::sqrt(r.expected_probability * (1.0 - r.expected_probability) / n);
  {
    const double p = r.success_frequency;
    const double z2 = kZ95 * kZ95;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = kZ95 / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    r.ci_low = std::max(0.0, centre - half);
    r.ci_high = std::min(1.0, centre + half);
  }
  if (r.successes > 0) r.mean_gain = schedule.final_gain;

  // Pearson statistic; outcomes with expected count < 5 are pooled into one bin.
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  int bins = 0;
  for (const auto& o : r.first_stage) {
    const double expected = o.expected * n;
    if (expected >= 5.0) {
      r.chi_square += std::pow(static_cast<double>(o.count) - expected, 2) / expected;
      ++bins;
    } else {
      pooled_obs += static_cast<double>(o.count);
      pooled_exp += expected;
    }
  }
  if (pooled_exp > 0.0) {
    r.chi_square += std::pow(pooled_obs - pooled_exp, 2) / pooled_exp;
    ++bins;
  }
  r.chi_square_dof = std::max(bins - 1, 0);
  r.chi_square_p_value =
      r.chi_square_dof > 0 ? boost::math::gamma_q(r.chi_square_dof / 2.0, r.chi_square / 2.0) : 1.0;
  return r;
}

}  // namespace dickeamp
