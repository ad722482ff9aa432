#include "ktu/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "ktu/errors.hpp"
#include "ktu/lp.hpp"
#include "ktu/rng.hpp"
#include "ktu/separators.hpp"

namespace ktu::mc {

namespace {

enum class TrialOutcome { success, failure, excluded };

TrialOutcome one_trial(const TrialConfig& config, std::uint64_t trial_seed) {
  const std::uint64_t seed_m = derive_seed(trial_seed, 1);
  const std::uint64_t seed_y = derive_seed(trial_seed, 2);

  Eigen::MatrixXd M_pts, Y_pts;
  if (config.dist == Dist::ball) {
    M_pts = sample_ball(config.n, config.M, seed_m).points;
    Y_pts = sample_ball(config.n, config.k, seed_y).points;
  } else {
    const CubeSpec spec = CubeSpec::uniform(config.n);
    M_pts = sample_cube(config.n, config.M, spec, seed_m).points;
    Y_pts = sample_cube(config.n, config.k, spec, seed_y).points;
  }

  switch (config.separator) {
    case SeparatorKind::lp: {
      const LpResult r = lp_separability(M_pts, Y_pts);
      if (r.status == LpStatus::indeterminate) return TrialOutcome::excluded;
      if (r.status != LpStatus::separable) return TrialOutcome::failure;
      // The witness must hold up under direct evaluation.
      return separates(*r.witness, M_pts, Y_pts) ? TrialOutcome::success
                                                 : TrialOutcome::failure;
    }
    case SeparatorKind::mean: {
      const LinearFunctional fn = mean_separator(Y_pts, OffsetMode::algorithmic);
      return separates(fn, M_pts, Y_pts) ? TrialOutcome::success
                                         : TrialOutcome::failure;
    }
    case SeparatorKind::thm1: {
      const SeparatorOutcome r = thm1_separator(Y_pts);
      return separates(r.fn, M_pts, Y_pts) ? TrialOutcome::success
                                           : TrialOutcome::failure;
    }
    case SeparatorKind::quotient: {
      try {
        const LinearFunctional fn = quotient_separator(M_pts, Y_pts);
        return separates(fn, M_pts, Y_pts) ? TrialOutcome::success
                                           : TrialOutcome::failure;
      } catch (const NumericError&) {
        return TrialOutcome::failure;
      }
    }
  }
  return TrialOutcome::excluded;
}

}  // namespace

void wilson_interval(int successes, int trials, double& low, double& high) {
  if (trials <= 0) {
    low = 0.0;
    high = 1.0;
    return;
  }
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  low = std::max(0.0, center - half);
  high = std::min(1.0, center + half);
}

MCResult run_trials(const TrialConfig& config) {
  if (config.trials < 1) throw ConstraintError("run_trials: trials >= 1 required");
  if (config.n < 1) throw ConstraintError("run_trials: n >= 1 required");
  if (config.M < 0 || config.k < 0)
    throw ConstraintError("run_trials: M, k >= 0 required");

  MCResult out;
  out.trials = config.trials;

  if (config.k == 0) {
    // Empty Y is vacuously separated.
    out.successes = config.trials;
    out.p_hat = 1.0;
    wilson_interval(out.successes, out.trials, out.ci_low, out.ci_high);
    return out;
  }

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  const auto run_range = [&](int begin, int end) {
    for (int t = begin; t < end; ++t)
      outcomes[static_cast<std::size_t>(t)] =
          one_trial(config, derive_seed(config.seed, static_cast<std::uint64_t>(t)));
  };

  int threads = config.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, config.trials);
  if (threads <= 1) {
    run_range(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (config.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(config.trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (const TrialOutcome oc : outcomes) {
    if (oc == TrialOutcome::success) ++out.successes;
    if (oc == TrialOutcome::excluded) ++out.excluded;
  }
  const int effective = out.trials - out.excluded;
  out.p_hat = (effective > 0)
                  ? static_cast<double>(out.successes) / effective
                  : 0.0;
  wilson_interval(out.successes, effective, out.ci_low, out.ci_high);
  return out;
}

const char* to_string(SeparatorKind kind) {
  switch (kind) {
    case SeparatorKind::mean: return "mean";
    case SeparatorKind::thm1: return "thm1";
    case SeparatorKind::quotient: return "quotient";
    case SeparatorKind::lp: return "lp";
  }
  return "?";
}

SeparatorKind separator_from_string(const std::string& name) {
  if (name == "mean") return SeparatorKind::mean;
  if (name == "thm1") return SeparatorKind::thm1;
  if (name == "quotient") return SeparatorKind::quotient;
  if (name == "lp") return SeparatorKind::lp;
  throw ConfigError("unknown separator: " + name);
}

const char* to_string(Dist dist) {
  return dist == Dist::ball ? "ball" : "cube";
}

Dist dist_from_string(const std::string& name) {
  if (name == "ball") return Dist::ball;
  if (name == "cube") return Dist::cube;
  throw ConfigError("unknown distribution: " + name);
}

}  // namespace ktu::mc
