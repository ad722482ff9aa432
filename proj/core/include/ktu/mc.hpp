#ifndef KTU_MC_HPP
#define KTU_MC_HPP

#include <cstdint>
#include <string>

#include "ktu/samples.hpp"

namespace ktu::mc {

enum class SeparatorKind { mean, thm1, quotient, lp };

struct TrialConfig {
  Dist dist = Dist::ball;
  int n = 2;
  int M = 1;
  int k = 1;
  int trials = 1;
  std::uint64_t seed = 0;
  SeparatorKind separator = SeparatorKind::lp;
  int threads = 0;  // 0 = hardware concurrency (results independent of it)
};

struct MCResult {
  int trials = 0;
  int successes = 0;
  int excluded = 0;  // indeterminate oracle statuses, not counted either way
  double p_hat = 0.0;
  double ci_low = 0.0;   // 95% Wilson score interval
  double ci_high = 0.0;
};

/// Empirical separation probability: per trial, draws fresh background and
/// error samples from per-trial derived seeds and tests separation with
/// the chosen constructor. Constructive separators count a success only
/// when the returned functional actually separates (verified by direct
/// evaluation). Deterministic for a fixed config + seed, serial or
/// parallel.
MCResult run_trials(const TrialConfig& config);

/// 95% Wilson score interval helper (exposed for reporting).
void wilson_interval(int successes, int trials, double& low, double& high);

const char* to_string(SeparatorKind kind);
SeparatorKind separator_from_string(const std::string& name);
const char* to_string(Dist dist);
Dist dist_from_string(const std::string& name);

}  // namespace ktu::mc

#endif
