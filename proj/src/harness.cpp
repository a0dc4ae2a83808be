#include "apl/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <tuple>

#include "apl/analytic.hpp"
#include "apl/hypercube.hpp"
#include "apl/nk.hpp"

namespace apl::harness {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

void sort_rows(std::vector<SweepRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.N, a.x, a.offset) < std::tie(b.N, b.x, b.offset);
  });
}

std::vector<Crossing> crossings_of(const std::vector<SweepRow>& rows) {
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].N == rows[i].N) ++j;
    out.push_back(Crossing{rows[i].N, crossing_point({rows.begin() + i, rows.begin() + j})});
    i = j;
  }
  return out;
}

SweepRow run_cell(int N, double beta, double offset, OffsetMode mode, std::uint64_t trials,
                  std::uint64_t seed, int threads, bool record_time) {
  const auto start = std::chrono::steady_clock::now();
  const double x = cell_gap(N, beta, offset, mode);
  const Estimate e = estimate_accessibility(N, odd_class_size(N, beta), x, trials, seed, threads);
  SweepRow row{N, beta, x, offset, e.trials, e.successes, e.p_hat, e.ci.low, e.ci.high, seed, 0.0};
  if (record_time) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    row.wall_time = std::max(elapsed.count(), std::numeric_limits<double>::min());
  }
  return row;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master_seed, int N, std::size_t offset_index) {
  return derive_key(master_seed, static_cast<std::uint64_t>(N), offset_index);
}

std::uint64_t trial_seed(std::uint64_t cell, std::uint64_t trial) {
  return derive_key(cell, trial);
}

int odd_class_size(int N, double beta) {
  const double scaled = beta * N;
  const double n = std::round(scaled);
  if (std::abs(scaled - n) > 1e-9 || n < 1 || n > N)
    throw std::domain_error("beta N must be an integer in [1, N]");
  return static_cast<int>(n);
}

double cell_gap(int N, double beta, double offset, OffsetMode mode) {
  const double shift = mode == OffsetMode::scaled ? offset / N : offset;
  const double x = analytic::critical_x(N, beta) + shift;
  // The smallest positive double keeps x inside (0, 1].
  return std::clamp(x, std::numeric_limits<double>::min(), 1.0);
}

Estimate estimate_accessibility(int N, int n, double x, std::uint64_t trials,
                                std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  // Validates N, n and x before any thread starts.
  (void)hypercube::LazyField(N, n, x, seed);

  std::uint64_t successes = 0;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel num_threads(resolve_threads(threads)) reduction(+ : successes)
  {
    hypercube::SearchScratch scratch;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < count; ++t) {
      const hypercube::LazyField field(N, n, x, trial_seed(seed, static_cast<std::uint64_t>(t)));
      if (hypercube::is_accessible(field, scratch, false).accessible) ++successes;
    }
  }
  Estimate e;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci = stats::wilson_interval(successes, trials);
  return e;
}

std::optional<double> crossing_point(const std::vector<SweepRow>& rows_of_one_N) {
  std::vector<SweepRow> rows = rows_of_one_N;
  sort_rows(rows);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double a = rows[i].p_hat - 0.5;
    const double b = rows[i + 1].p_hat - 0.5;
    if (a == 0.0) return rows[i].x;
    if ((a < 0.0) != (b < 0.0) || b == 0.0)
      return rows[i].x + (0.5 - rows[i].p_hat) * (rows[i + 1].x - rows[i].x) /
                             (rows[i + 1].p_hat - rows[i].p_hat);
  }
  return std::nullopt;
}

SweepResult run_transition_sweep(const ExperimentPlan& plan) {
  if (plan.N_list.empty() || plan.offsets.empty())
    throw std::invalid_argument("a sweep needs at least one N and one offset");
  SweepResult result;
  for (int N : plan.N_list) {
    for (std::size_t k = 0; k < plan.offsets.size(); ++k) {
      try {
        result.rows.push_back(run_cell(N, plan.beta, plan.offsets[k], plan.offset_mode,
                                       plan.trials, cell_seed(plan.master_seed, N, k),
                                       plan.thread_count, plan.record_time));
      } catch (const std::exception& e) {
        sort_rows(result.rows);
        result.crossings = crossings_of(result.rows);
        throw SweepError("cell N=" + std::to_string(N) + " offset=" +
                             std::to_string(plan.offsets[k]) + ": " + e.what(),
                         std::move(result));
      }
    }
  }
  sort_rows(result.rows);
  result.crossings = crossings_of(result.rows);
  return result;
}

WindowResult run_critical_window(const std::vector<int>& N_list, double beta, double Delta,
                                 std::uint64_t trials, std::uint64_t seed, int threads,
                                 bool record_time) {
  if (!(Delta >= 0.0)) throw std::domain_error("Delta must be nonnegative");
  ExperimentPlan plan;
  plan.kind = PlanKind::critical_window;
  plan.N_list = N_list;
  plan.beta = beta;
  plan.offsets = Delta == 0.0 ? std::vector<double>{0.0} : std::vector<double>{-Delta, Delta};
  plan.offset_mode = OffsetMode::scaled;
  plan.trials = trials;
  plan.master_seed = seed;
  plan.thread_count = threads;
  plan.record_time = record_time;
  WindowResult w;
  w.sweep = run_transition_sweep(plan);
  w.all_inside = std::all_of(w.sweep.rows.begin(), w.sweep.rows.end(), [](const SweepRow& r) {
    return r.ci_low > 0.0 && r.ci_high < 1.0;
  });
  return w;
}

Slope transition_slope(const SweepResult& result, int N, double h) {
  const SweepRow* lo = nullptr;
  const SweepRow* hi = nullptr;
  for (const SweepRow& r : result.rows) {
    if (r.N != N) continue;
    if (r.offset == -h) lo = &r;
    if (r.offset == h) hi = &r;
  }
  if (!lo || !hi || hi->x <= lo->x)
    throw std::invalid_argument("sweep lacks the offsets -h and +h for N=" + std::to_string(N));
  const double dx = hi->x - lo->x;
  const auto variance = [](const SweepRow& r) {
    return r.p_hat * (1 - r.p_hat) / static_cast<double>(r.trials);
  };
  return Slope{(hi->p_hat - lo->p_hat) / dx, std::sqrt(variance(*lo) + variance(*hi)) / dx};
}

std::vector<SeqRow> run_seqmodel(int N, double beta, double x, std::uint64_t trials,
                                 double epsilon, sequence::GoodnessMode mode,
                                 std::uint64_t seed, int threads) {
  const int n = odd_class_size(N, beta);
  const auto cfg = sequence::GoodnessConfig::make(N, n, epsilon, mode);
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  std::vector<SeqRow> rows(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic, 8)
  for (std::int64_t t = 0; t < count; ++t) {
    CounterRng rng(derive_key(seed, static_cast<std::uint64_t>(t)));
    const auto seq = sequence::sample_continuous(N, n, x, rng);
    const auto verdict = sequence::is_good(seq, cfg);
    const auto half = sequence::interval_stats(seq, 0.0, 0.5);
    rows[t] = SeqRow{static_cast<std::uint64_t>(t), seq.length(), verdict.good,
                     verdict.first_violated, half.total, half.odd};
  }
  return rows;
}

std::vector<NkRow> run_nk(int N, int K, int seeds, NkMode mode, std::uint64_t seed,
                          int threads) {
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  if (N < 1 || N > nk::max_genome_length || K < 1 || K > N)
    throw std::domain_error("NK runs require 1 <= K <= N <= " +
                            std::to_string(nk::max_genome_length));
  std::vector<NkRow> rows(static_cast<std::size_t>(seeds));
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic, 1)
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t key =
        derive_key(seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(K),
                   static_cast<std::uint64_t>(s));
    NkRow row{key, N, K, 0.0, 0.0, 0};
    if (mode == NkMode::iidcheck) {
      CounterRng rng(key);
      const double scale = std::sqrt(static_cast<double>(N));
      double best = -std::numeric_limits<double>::infinity();
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << N); ++i)
        best = std::max(best, scale * rng.normal());
      row.value = best;
    } else {
      const nk::NKLandscape land(N, K, key);
      switch (mode) {
        case NkMode::exhaustive:
          row.value = nk::exhaustive_max(land).value;
          break;
        case NkMode::greedy: {
          const auto g = nk::greedy_block_max(land);
          row.value = g.value;
          row.steps = static_cast<int>(g.block_increments.size());
          break;
        }
        case NkMode::walk: {
          CounterRng rng(derive_key(key, 0x57A1C));
          const nk::Genotype start{static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << N))};
          const auto w = nk::adaptive_walk(land, start, nk::WalkRule::random, rng);
          row.value = w.final_fitness;
          row.steps = w.steps;
          break;
        }
        case NkMode::iidcheck:
          break;
      }
    }
    row.normalized_value = row.value / N;
    rows[static_cast<std::size_t>(s)] = row;
  }
  return rows;
}

}  // namespace apl::harness
