#pragma once

// Monte Carlo orchestration: accessibility estimates, sweeps over (N, x)
// grids, critical-window scans, update-sequence and NK experiments.
//
// Every cell (N, offset index) owns the substream derive_key(master, N,
// offset index) and trial t of a cell uses derive_key(cell, t), so results
// depend only on the plan and seed. Trials inside a cell run in parallel and
// are combined by integer sums, which keeps the output independent of the
// thread count.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apl/sequence.hpp"
#include "apl/stats.hpp"

namespace apl::harness {

enum class PlanKind { transition_sweep, critical_window, nk_experiment, oracle_validation };

/// absolute: x = x_c + offset; scaled: x = x_c + offset / N.
enum class OffsetMode { absolute, scaled };

struct ExperimentPlan {
  PlanKind kind = PlanKind::transition_sweep;
  std::vector<int> N_list;
  double beta = 1.0;
  std::vector<double> offsets;
  OffsetMode offset_mode = OffsetMode::absolute;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 1;
  int thread_count = 0;     // 0: OpenMP default
  bool record_time = true;  // false writes wall_time = 0 for byte-stable output
};

struct SweepRow {
  int N = 0;
  double beta = 1.0;
  double x = 0.0;
  double offset = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct Crossing {
  int N = 0;
  std::optional<double> x_star;  // absent when p_hat never brackets 1/2

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (N, x, offset)
  std::vector<Crossing> crossings;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Raised when a cell fails; carries the rows finished before the failure.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, SweepResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SweepResult& partial() const { return partial_; }

 private:
  SweepResult partial_;
};

std::uint64_t cell_seed(std::uint64_t master_seed, int N, std::size_t offset_index);
std::uint64_t trial_seed(std::uint64_t cell, std::uint64_t trial);

/// n = beta N; throws std::domain_error unless it is an integer in [1, N].
int odd_class_size(int N, double beta);

/// x_c(N) + offset (or offset / N), clamped to (0, 1].
double cell_gap(int N, double beta, double offset, OffsetMode mode);

struct Estimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  stats::Interval ci;
};

/// Fraction of independent fields (trial t seeded by trial_seed(seed, t))
/// in which the target is accessible, with its Wilson interval.
Estimate estimate_accessibility(int N, int n, double x, std::uint64_t trials,
                                std::uint64_t seed, int threads = 0);

/// Linear interpolation of the p_hat = 1/2 crossing over rows of one N,
/// taken in increasing x. The first bracketing pair wins.
std::optional<double> crossing_point(const std::vector<SweepRow>& rows_of_one_N);

SweepResult run_transition_sweep(const ExperimentPlan& plan);

struct WindowResult {
  SweepResult sweep;
  bool all_inside = false;  // every CI lies strictly inside (0, 1)
};

/// Estimates at x_c(N) -/+ Delta / N (just x_c when Delta = 0).
WindowResult run_critical_window(const std::vector<int>& N_list, double beta, double Delta,
                                 std::uint64_t trials, std::uint64_t seed, int threads = 0,
                                 bool record_time = true);

struct Slope {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Central difference (p(x_c + h) - p(x_c - h)) / (x_hi - x_lo) for one N,
/// using the rows whose offsets equal -h and +h.
Slope transition_slope(const SweepResult& result, int N, double h);

struct SeqRow {
  std::uint64_t trial = 0;
  std::size_t L = 0;
  bool good = false;
  sequence::Clause first_violated = sequence::Clause::none;
  int T_half = 0;
  int O_half = 0;
};

/// Continuous-model paths of dimension N with n = beta N odd coordinates,
/// checked for goodness; T and O are counted on [0, 1/2].
std::vector<SeqRow> run_seqmodel(int N, double beta, double x, std::uint64_t trials,
                                 double epsilon, sequence::GoodnessMode mode,
                                 std::uint64_t seed, int threads = 0);

enum class NkMode { exhaustive, greedy, walk, iidcheck };

struct NkRow {
  std::uint64_t seed = 0;
  int N = 0;
  int K = 0;
  double value = 0.0;
  double normalized_value = 0.0;  // value / N
  int steps = 0;                  // walk length, or greedy block count
};

/// One row per replica s = 0..seeds-1; replica s uses derive_key(seed, N, K, s).
/// iidcheck rows hold the maximum of 2^N i.i.d. N(0, N) draws instead.
std::vector<NkRow> run_nk(int N, int K, int seeds, NkMode mode, std::uint64_t seed,
                          int threads = 0);

}  // namespace apl::harness
