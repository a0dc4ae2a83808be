#include "apl/nk.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace apl::nk {

namespace {

constexpr std::size_t max_table_entries = std::size_t{1} << 25;
constexpr std::uint64_t scan_chunks = 64;

// Ordering used by every maximization: larger value wins, then smaller label.
bool better(double value, std::uint32_t label, double best_value, std::uint32_t best_label) {
  return value > best_value || (value == best_value && label < best_label);
}

}  // namespace

NKLandscape::NKLandscape(int N, int K, std::uint64_t seed, const PotentialSampler& sampler)
    : N_(N), K_(K), seed_(seed) {
  if (N < 1 || N > max_genome_length || K < 1 || K > N)
    throw std::domain_error("NK landscape requires 1 <= K <= N <= " +
                            std::to_string(max_genome_length));
  const std::size_t entries = static_cast<std::size_t>(N) << K;
  if (entries > max_table_entries)
    throw std::domain_error("NK table of " + std::to_string(entries) +
                            " entries exceeds the size cap");
  genome_mask_ = N == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << N) - 1u;
  window_mask_ = (std::uint32_t{1} << K) - 1u;
  table_.resize(entries);
  const std::uint64_t key = derive_key(seed, 0x4E4B);
  const auto count = static_cast<std::int64_t>(entries);
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < count; ++e) {
    CounterRng rng(derive_key(key, static_cast<std::uint64_t>(e)));
    table_[e] = sampler ? sampler(rng) : rng.normal();
  }
}

NKLandscape build_landscape(int N, int K, std::uint64_t seed) {
  return NKLandscape(N, K, seed);
}

double fitness_of(const NKLandscape& land, Genotype sigma) {
  double total = 0.0;
  for (int i = 0; i < land.N(); ++i) total += land.potential(i, land.window(sigma, i));
  return total;
}

MaxResult exhaustive_max(const NKLandscape& land) {
  const int N = land.N();
  const int K = land.K();
  const std::uint64_t total = std::uint64_t{1} << N;
  const std::uint64_t chunks = std::min(total, scan_chunks);
  const std::uint64_t chunk_size = total / chunks;

  std::vector<double> best_value(chunks, -std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> best_label(chunks, 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
    const std::uint64_t hi = lo + chunk_size;
    Genotype sigma{static_cast<std::uint32_t>(lo ^ (lo >> 1))};
    double value = fitness_of(land, sigma);
    double top = value;
    std::uint32_t top_label = sigma.bits;
    for (std::uint64_t g = lo + 1; g < hi; ++g) {
      const int bit = std::countr_zero(g);
      const Genotype next = sigma.flipped(bit);
      for (int d = 0; d < K; ++d) {
        const int site = (bit - d + N) % N;
        value += land.potential(site, land.window(next, site)) -
                 land.potential(site, land.window(sigma, site));
      }
      sigma = next;
      if (better(value, sigma.bits, top, top_label)) {
        top = value;
        top_label = sigma.bits;
      }
    }
    // Refresh with the exact sum so chunks compare on drift-free values.
    best_value[c] = fitness_of(land, Genotype{top_label});
    best_label[c] = top_label;
  }

  MaxResult result{Genotype{best_label[0]}, best_value[0]};
  for (std::uint64_t c = 1; c < chunks; ++c)
    if (better(best_value[c], best_label[c], result.value, result.genotype.bits))
      result = MaxResult{Genotype{best_label[c]}, best_value[c]};
  return result;
}

GreedyResult greedy_block_max(const NKLandscape& land) {
  const int N = land.N();
  const int K = land.K();
  const int blocks = N / K - 1;
  GreedyResult result;
  Genotype sigma{0};
  for (int j = 1; j <= blocks; ++j) {
    const int first_bit = j * K;
    const int first_site = (j - 1) * K + 1;
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t best_pattern = 0;
    for (std::uint32_t pattern = 0; pattern < (std::uint32_t{1} << K); ++pattern) {
      const Genotype candidate{sigma.bits | (pattern << first_bit)};
      double sum = 0.0;
      for (int s = first_site; s < first_site + K; ++s)
        sum += land.potential(s, land.window(candidate, s));
      if (sum > best) {
        best = sum;
        best_pattern = pattern;
      }
    }
    sigma.bits |= best_pattern << first_bit;
    result.block_increments.push_back(best);
  }
  result.genotype = sigma;
  result.value = fitness_of(land, sigma);
  return result;
}

double block_brw_max(int K, CounterRng& rng) {
  if (K < 1 || K > max_brw_depth)
    throw std::domain_error("BRW depth must lie in [1, " + std::to_string(max_brw_depth) + "]");
  std::vector<double> level(std::size_t{1} << K);
  std::vector<double> parent(std::size_t{1} << (K - 1));
  parent[0] = 0.0;
  std::size_t width = 1;
  for (int depth = 1; depth <= K; ++depth) {
    for (std::size_t p = 0; p < width; ++p) {
      level[2 * p] = parent[p] + rng.normal();
      level[2 * p + 1] = parent[p] + rng.normal();
    }
    width *= 2;
    if (depth < K) std::copy_n(level.begin(), width, parent.begin());
  }
  return *std::max_element(level.begin(), level.end());
}

double brw_centering(int K) {
  const double rate = std::sqrt(2.0 * std::numbers::ln2);
  return rate * K - 3.0 / (2.0 * rate) * std::log(static_cast<double>(K));
}

WalkResult adaptive_walk(const NKLandscape& land, Genotype start, WalkRule rule,
                         CounterRng& rng) {
  const int N = land.N();
  const std::uint64_t step_cap = std::uint64_t{1} << N;
  WalkResult walk;
  walk.path.push_back(start);
  Genotype current = start;
  double current_fitness = fitness_of(land, current);
  std::vector<std::pair<int, double>> fitter;
  for (;;) {
    fitter.clear();
    for (int i = 0; i < N; ++i) {
      const double f = fitness_of(land, current.flipped(i));
      if (f > current_fitness) fitter.emplace_back(i, f);
    }
    if (fitter.empty()) break;
    std::size_t pick = 0;
    if (rule == WalkRule::random) {
      pick = rng.below(fitter.size());
    } else {
      for (std::size_t c = 1; c < fitter.size(); ++c)
        if (fitter[c].second > fitter[pick].second) pick = c;
    }
    current = current.flipped(fitter[pick].first);
    current_fitness = fitter[pick].second;
    walk.path.push_back(current);
    if (static_cast<std::uint64_t>(++walk.steps) > step_cap)
      throw std::logic_error("adaptive walk exceeded 2^N steps");
  }
  walk.final_fitness = current_fitness;
  return walk;
}

bool is_local_max(const NKLandscape& land, Genotype sigma) {
  const double f = fitness_of(land, sigma);
  for (int i = 0; i < land.N(); ++i)
    if (fitness_of(land, sigma.flipped(i)) > f) return false;
  return true;
}

std::uint64_t count_local_maxima(const NKLandscape& land) {
  const int N = land.N();
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << N);
  std::vector<double> values(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < total; ++s)
    values[s] = fitness_of(land, Genotype{static_cast<std::uint32_t>(s)});
  std::uint64_t maxima = 0;
#pragma omp parallel for schedule(static) reduction(+ : maxima)
  for (std::int64_t s = 0; s < total; ++s) {
    bool local = true;
    for (int i = 0; i < N && local; ++i)
      local = values[s ^ (std::int64_t{1} << i)] <= values[s];
    maxima += local ? 1 : 0;
  }
  return maxima;
}

std::vector<int> statistic_sites(int N, int K) {
  std::vector<int> sites;
  for (int i = 1; 4 * K * i <= N; ++i) sites.push_back(4 * K * i - 1);
  return sites;
}

double local_statistic_T(const NKLandscape& land, Genotype sigma, int k) {
  const int N = land.N();
  const int K = land.K();
  if (k < 0 || k >= N || (k + 1) % (4 * K) != 0)
    throw std::domain_error("site " + std::to_string(k) + " is not on the 4K grid");
  double total = 0.0;
  for (int d = K - 1; d >= 0; --d) {
    const int site = (k - d + N) % N;
    total += land.potential(site, land.window(sigma, site));
  }
  return total;
}

int count_low_statistics(const NKLandscape& land, Genotype sigma, double threshold) {
  int low = 0;
  for (int k : statistic_sites(land.N(), land.K()))
    if (local_statistic_T(land, sigma, k) <= threshold) ++low;
  return low;
}

}  // namespace apl::nk
