#pragma once

// NK fitness landscapes with standard Gaussian site potentials.
//
// X(sigma) = sum_i Y[i][window_i(sigma)], where window_i packs the bits
// sigma_i, ..., sigma_{i+K-1} (indices mod N) with sigma_i as the lowest bit.
// Sites and bits are 0-based.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "apl/rng.hpp"

namespace apl::nk {

inline constexpr int max_genome_length = 24;
inline constexpr int max_brw_depth = 20;

struct Genotype {
  std::uint32_t bits = 0;

  constexpr bool operator[](int i) const { return (bits >> i) & 1u; }
  constexpr Genotype flipped(int i) const {
    return Genotype{bits ^ (std::uint32_t{1} << i)};
  }
  friend constexpr bool operator==(Genotype, Genotype) = default;
};

/// Draws one site potential from a uniform stream. The default is the
/// standard Gaussian.
using PotentialSampler = std::function<double(CounterRng&)>;

class NKLandscape {
 public:
  /// Throws std::domain_error unless 1 <= K <= N <= max_genome_length.
  NKLandscape(int N, int K, std::uint64_t seed,
              const PotentialSampler& sampler = {});

  int N() const { return N_; }
  int K() const { return K_; }
  std::uint64_t seed() const { return seed_; }

  double potential(int site, std::uint32_t window) const {
    return table_[static_cast<std::size_t>(site) << K_ | window];
  }
  std::span<const double> table() const { return table_; }

  /// Window of `site`: bits site..site+K-1 (cyclic), site's bit lowest.
  std::uint32_t window(Genotype sigma, int site) const {
    const std::uint32_t rotated =
        site == 0 ? sigma.bits
                  : ((sigma.bits >> site) | (sigma.bits << (N_ - site))) & genome_mask_;
    return rotated & window_mask_;
  }

 private:
  int N_;
  int K_;
  std::uint64_t seed_;
  std::uint32_t genome_mask_;
  std::uint32_t window_mask_;
  std::vector<double> table_;  // N x 2^K
};

NKLandscape build_landscape(int N, int K, std::uint64_t seed);

double fitness_of(const NKLandscape& land, Genotype sigma);

struct MaxResult {
  Genotype genotype;
  double value = 0.0;
};

/// Global maximum by a Gray-code scan split across OpenMP threads. Ties go
/// to the smaller genotype label. The reported value is fitness_of of the
/// maximizer.
MaxResult exhaustive_max(const NKLandscape& land);

struct GreedyResult {
  Genotype genotype;
  double value = 0.0;
  std::vector<double> block_increments;  // one per chosen block
};

/// Blockwise greedy maximization: the first K bits are 0; each following
/// block of K bits maximizes the sum of the K site potentials whose windows
/// end inside it; bits past floor(N/K) K are 0. Ties go to the smaller block
/// pattern.
GreedyResult greedy_block_max(const NKLandscape& land);

/// Maximum over the 2^K leaves of a binary branching random walk of depth K
/// with independent standard Gaussian increments.
double block_brw_max(int K, CounterRng& rng);

/// m_K = sqrt(2 ln 2) K - 3 / (2 sqrt(2 ln 2)) ln K.
double brw_centering(int K);

enum class WalkRule { random, steepest };

struct WalkResult {
  std::vector<Genotype> path;
  double final_fitness = 0.0;
  int steps = 0;
};

/// Moves to a strictly fitter neighbour (uniform among them, or the fittest)
/// until none exists.
WalkResult adaptive_walk(const NKLandscape& land, Genotype start, WalkRule rule,
                         CounterRng& rng);

bool is_local_max(const NKLandscape& land, Genotype sigma);

/// Number of genotypes with no strictly fitter neighbour.
std::uint64_t count_local_maxima(const NKLandscape& land);

/// Sites k (0-based) with k + 1 a positive multiple of 4K and k < N.
std::vector<int> statistic_sites(int N, int K);

/// Sum of the K potentials whose windows contain bit k, i.e. sites
/// k-K+1..k (cyclic). Flipping bit k changes X by exactly the change in this
/// sum. Throws std::domain_error if k is not in statistic_sites.
double local_statistic_T(const NKLandscape& land, Genotype sigma, int k);

/// Number of grid sites k with T(sigma, k) <= threshold.
int count_low_statistics(const NKLandscape& land, Genotype sigma, double threshold);

}  // namespace apl::nk
