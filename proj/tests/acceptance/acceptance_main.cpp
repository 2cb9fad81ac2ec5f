// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dickeamp/cli/cli.hpp"
#include "dickeamp/errors.hpp"
#include "dickeamp/joint.hpp"
#include "dickeamp/metrics.hpp"
#include "dickeamp/oracle.hpp"
#include "dickeamp/protocol.hpp"

using namespace dickeamp;

namespace {

// Pinned tolerances.
constexpr double kOracleDeviation = 1e-10;
constexpr double kOracleResidual = 1e-12;
constexpr double kOracleSeconds = 30.0;
constexpr double kAmplitudeTol = 1e-12;
constexpr double kRatioTol = 1e-12;
constexpr double kNearlyTwo = 0.002;
constexpr double kFigureSeconds = 1.0;
constexpr double kMultiStageSeconds = 10.0;
constexpr double kSuccessFactor = 10.0;
constexpr double kSigmas = 3.0;
constexpr double kMonteCarloSeconds = 60.0;
constexpr double kQualityIdentity = 1e-12;
constexpr double kLosslessModeTol = 1e-10;
constexpr double kFidelityFactor = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

ProtocolConfig base_config(int n_atoms, cplx alpha, double p, Schedule s, int stages, EvolutionOrder order,
                           double beta = 1.0) {
  ProtocolConfig c;
  c.n_atoms = n_atoms;
  c.alpha = alpha;
  c.p_w = c.p_r = p;
  c.beta_w = c.beta_r = beta;
  c.schedule = s;
  c.stages = stages;
  c.order = order;
  c.truncation = default_truncation(n_atoms, s, stages);
  return c;
}

Outcome ac1_oracle() {
  const auto t0 = Clock::now();
  double dev = 0.0, res = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const auto r = oracle::verify_ladder(n, kOracleDeviation);
    dev = std::max(dev, r.max_deviation);
    res = std::max(res, r.max_residual);
  }
  const double secs = seconds_since(t0);
  return {dev < kOracleDeviation && res < kOracleResidual && secs < kOracleSeconds,
          fmt("N=1..12 max deviation %.3g, max residual %.3g, %.2f s", dev, res, secs)};
}

Outcome ac2_pair_herald() {
  const double p = 1e-3;
  double worst = 0.0;
  bool threshold_ok = true;
  for (int n : {3, 10, 100, 10000}) {
    for (int k = 0; k <= std::min(5, n); ++k) {
      ModeTruncation t = ModeTruncation::defaults(n);
      t.atomic_k_max = std::min(n, 8);
      JointState psi = build_joint(DickeVector::basis(k, n, t.atomic_k_max), t);
      psi = apply_read(apply_write(psi, p, 1.0, EvolutionOrder::FirstOrder), p, 1.0, EvolutionOrder::FirstOrder);
      const DickeVector slice = conditional_slice(psi, {1, 1});
      const double factor = slice[k].real() / std::sqrt(p * p);
      const double eta = (k + 1) * (1.0 - static_cast<double>(k) / n);
      worst = std::max(worst, std::abs(factor - eta));
      // The conditional state must be |k,N> itself.
      worst = std::max(worst, std::sqrt(std::max(0.0, slice.norm_sq() - std::norm(slice[k]))) / p);
      if (k >= 1 && (factor > 1.0 + kAmplitudeTol) != (n >= k + 2)) threshold_ok = false;
    }
  }
  return {worst <= kAmplitudeTol && threshold_ok,
          fmt("max |factor - (k+1)(1-k/N)| = %.3g; gain > 1 iff N >= k+2: ", worst) +
              (threshold_ok ? "yes" : "no")};
}

Outcome ac3_single_stage() {
  const auto c = base_config(1000, 0.1, 1e-2, Schedule::TypeI, 1, EvolutionOrder::FirstOrder);
  const StageReport r = run_stage(weak_coherent_atomic_state(0.1, 1000, 1), c, StageKind::WriteThenRead);
  if (!r.success || !r.pure_state) return {false, "herald failed"};
  const double ratio = ((*r.pure_state)[1] / (*r.pure_state)[0]).real();
  const double gain = ratio / 0.1;
  const bool ok = std::abs(ratio - 0.1998) <= kRatioTol && std::abs(gain - 2.0) / 2.0 <= kNearlyTwo;
  return {ok, fmt("ratio %.15g (want 0.1998), gain %.6g", ratio, gain)};
}

Outcome ac4_figure_data() {
  const auto t0 = Clock::now();
  const int n_atoms = 100;
  std::istringstream csv(cli::gain_table_csv(n_atoms, 10));
  std::string line;
  std::getline(csv, line);
  std::vector<double> g1, g2;
  bool exact = true;
  while (std::getline(csv, line)) {
    int n = 0;
    double a = 0.0, b = 0.0;
    std::sscanf(line.c_str(), "%d,%lf,%lf", &n, &a, &b);
    const double want1 = std::pow(2.0 * (1.0 - 1.0 / n_atoms), n);
    const double want2 = (n + 1) * (1.0 - static_cast<double>(n) / n_atoms);
    exact = exact && std::abs(a - want1) <= 1e-12 * want1 && std::abs(b - want2) <= 1e-12 * want2;
    g1.push_back(a);
    g2.push_back(b);
  }
  bool equal_at_one = g1[1] == g2[1];
  bool dominance = true;
  double ratio_err = 0.0;
  for (int n = 2; n <= 10; ++n) dominance = dominance && g1[n] > g2[n];
  for (int n = 1; n <= 10; ++n) ratio_err = std::max(ratio_err, std::abs(g1[n] / g1[n - 1] - 1.98));
  const double secs = seconds_since(t0);
  const bool ok = exact && equal_at_one && dominance && ratio_err <= 1e-12 && secs < kFigureSeconds;
  return {ok, std::string(exact ? "closed forms match" : "closed forms MISMATCH") +
                  fmt("; consecutive ratio error %.3g; %.4f s", ratio_err, secs)};
}

Outcome ac5_multi_stage() {
  const auto t0 = Clock::now();
  double worst_excess = -1.0;
  int runs = 0;
  for (Schedule s : {Schedule::TypeI, Schedule::TypeII}) {
    for (auto order : {EvolutionOrder::FirstOrder, EvolutionOrder::Exact}) {
      for (double alpha : {0.01, 0.05, 0.1}) {
        for (double p : {1e-4, 1e-3}) {
          for (int n = 1; n <= 5; ++n) {
            auto c = base_config(100, alpha, p, s, n, order);
            if (order == EvolutionOrder::Exact) {
              c.truncation.fock_a_max = c.truncation.fock_b_max = 5;
              c.truncation.atomic_k_max = std::max(c.truncation.atomic_k_max, n + 6);
            }
            const auto r = run_schedule(c);
            if (!r.success || !r.final_gain) return {false, "schedule failed"};
            const double rel = std::abs(*r.final_gain - r.analytic_gain) / r.analytic_gain;
            const double bound = 5 * alpha * alpha + 10 * n * p;
            worst_excess = std::max(worst_excess, rel / bound);
            ++runs;
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst_excess <= 1.0 && secs < kMultiStageSeconds,
          fmt("%.0f runs, worst relative error / bound = %.3g, %.2f s", runs, worst_excess, secs)};
}

Outcome ac6_success_convergence() {
  std::vector<double> errors;
  bool within = true;
  for (double p : {1e-3, 1e-4, 1e-5}) {
    auto c = base_config(100, 0.0, p, Schedule::TypeI, 1, EvolutionOrder::FirstOrder);
    const double numeric = p_success_numeric(c);
    const double analytic = p_success_analytic(p, p);
    const double err = std::abs(numeric - analytic) / analytic;
    within = within && err <= kSuccessFactor * p;
    errors.push_back(err);
  }
  const bool monotone = errors[0] > errors[1] && errors[1] > errors[2];
  return {within && monotone, fmt("relative errors %.3g, %.3g, %.3g", errors[0], errors[1], errors[2])};
}

Outcome ac7_monte_carlo() {
  const auto t0 = Clock::now();
  auto c = base_config(100, 0.1, 0.01, Schedule::TypeI, 1, EvolutionOrder::FirstOrder);
  c.rng_seed = 424242;
  const MCReport a = monte_carlo(c, 100000, 4);
  const MCReport b = monte_carlo(c, 100000, 1);
  const double numeric = p_success_numeric(c);
  const double sigma = std::sqrt(numeric * (1.0 - numeric) / 100000.0);
  const double z = std::abs(a.success_frequency - numeric) / sigma;
  const bool identical = cli::mc_to_json(a).dump() == cli::mc_to_json(b).dump();
  const double secs = seconds_since(t0);
  return {z <= kSigmas && identical && secs < kMonteCarloSeconds,
          fmt("frequency %.6g vs numeric %.6g (%.2f sigma)", a.success_frequency, numeric, z) +
              (identical ? ", reports byte-identical" : ", reports DIFFER")};
}

// Random configs spanning both schedules and orders. Exact runs use
// couplings and truncations for which the leakage guard stays quiet.
ProtocolConfig random_config(std::mt19937_64& rng, bool lossless) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n_atoms = 3 + static_cast<int>(u(rng) * 997);
  const auto order = u(rng) < 0.5 ? EvolutionOrder::FirstOrder : EvolutionOrder::Exact;
  const auto sched = u(rng) < 0.5 ? Schedule::TypeI : Schedule::TypeII;
  const int stages = 1 + static_cast<int>(u(rng) * std::min(4, n_atoms - 2));
  const double log_p = order == EvolutionOrder::Exact ? -5.0 + 2.0 * u(rng) : -5.0 + 3.0 * u(rng);
  const double beta = lossless ? 1.0 : 0.3 + 0.7 * u(rng);
  const cplx alpha(0.3 * u(rng), 0.1 * (u(rng) - 0.5));
  auto c = base_config(n_atoms, alpha, std::pow(10.0, log_p), sched, stages, order, beta);
  c.p_r = std::pow(10.0, log_p + 0.5 * (u(rng) - 0.5));
  if (order == EvolutionOrder::Exact) {
    c.truncation.fock_a_max = c.truncation.fock_b_max = c.truncation.fock_c_max = 5;
    c.truncation.atomic_k_max = std::min(n_atoms, std::max(c.truncation.atomic_k_max, stages + 7));
  }
  if (lossless) c.target_gain = TargetGain::Exact;
  else c.target_gain = u(rng) < 0.5 ? TargetGain::Exact : TargetGain::LargeN;
  return c;
}

Outcome ac8_quality() {
  std::mt19937_64 rng(8);
  double identity = 0.0;
  double lossless_mode = 0.0;
  int out_of_range = 0;
  int failures = 0;
  int lossless_runs = 0;
  auto check = [&](double p) { out_of_range += !probability_in_range(p); };
  for (int i = 0; i < 1000; ++i) {
    const bool lossless = i % 4 == 0;
    ProtocolConfig c = random_config(rng, lossless);
    // The zero-loss statement concerns the perturbative model.
    if (lossless) c.order = EvolutionOrder::FirstOrder;
    AmplificationReport r;
    try {
      r = run_schedule(c);
    } catch (const Error& e) {
      ++failures;
      continue;
    }
    for (const auto& s : r.stages) {
      check(s.probability);
      check(s.cumulative_probability);
      for (const auto& o : s.outcomes) check(o.probability);
    }
    check(r.success_probability);
    if (!r.quality) continue;
    const QualityReport& q = *r.quality;
    for (double p : {q.p_suc, q.p_mode, q.p_spon, q.p_amp, q.q_amp, q.fidelity}) check(p);
    identity = std::max(identity, std::abs(q.q_amp - q.p_amp * (1 - q.p_spon) * (1 - q.p_mode)));
    if (lossless) {
      lossless_mode = std::max(lossless_mode, std::abs(q.p_mode));
      ++lossless_runs;
    }
  }
  const bool ok = identity <= kQualityIdentity && lossless_mode < kLosslessModeTol && out_of_range == 0 &&
                  failures == 0;
  return {ok, fmt("identity error %.3g; max P_mode at beta=1 %.3g", identity, lossless_mode) +
                  "; " + std::to_string(out_of_range) + " out-of-range values; " +
                  std::to_string(failures) + " errored runs; " + std::to_string(lossless_runs) +
                  " lossless runs"};
}

Outcome ac9_order_consistency() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;  // (1 - F) / max(p)
  for (int i = 0; i < 100; ++i) {
    const int n_atoms = 3 + static_cast<int>(u(rng) * 997);
    const double p = std::pow(10.0, -5.0 + 3.0 * u(rng));
    const double beta = u(rng) < 0.3 ? 1.0 : 0.5 + 0.5 * u(rng);
    const cplx alpha(0.3 * u(rng), 0.1 * (u(rng) - 0.5));
    auto c = base_config(n_atoms, alpha, p, Schedule::TypeI, 1, EvolutionOrder::FirstOrder, beta);
    c.truncation.fock_a_max = c.truncation.fock_b_max = c.truncation.fock_c_max = 7;
    const DickeVector in = weak_coherent_atomic_state(alpha, n_atoms, 1);
    const StageReport first = run_stage(in, c, StageKind::WriteThenRead);
    c.order = EvolutionOrder::Exact;
    const StageReport exact = run_stage(in, c, StageKind::WriteThenRead);
    if (!first.pure_state || !exact.state) return {false, "herald failed"};
    const double f = exact.state->expectation(*first.pure_state);
    worst = std::max(worst, (1.0 - f) / (kFidelityFactor * p));
  }
  return {worst <= 1.0, fmt("worst (1 - F) / (10 max p) = %.3g over 100 configs", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 oracle equivalence", ac1_oracle},
      {"AC2 heralded pair gain", ac2_pair_herald},
      {"AC3 single-stage gain", ac3_single_stage},
      {"AC4 gain table", ac4_figure_data},
      {"AC5 multi-stage vs closed form", ac5_multi_stage},
      {"AC6 success probability convergence", ac6_success_convergence},
      {"AC7 Monte Carlo statistics", ac7_monte_carlo},
      {"AC8 quality identity and limits", ac8_quality},
      {"AC9 first order vs exact", ac9_order_consistency},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
