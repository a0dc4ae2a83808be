#pragma once

// Straightforward serial implementations kept as references for the fast
// kernels. They favour obviousness over speed and are used by the tests and
// the benchmarks only.

#include <cstdint>

#include "apl/hypercube.hpp"
#include "apl/nk.hpp"

namespace apl::reference {

/// Breadth-first search over strictly increasing moves from the source.
hypercube::AccessResult bfs_accessible(const hypercube::FitnessField& field);

/// Counts increasing source -> target paths by depth-first enumeration.
std::uint64_t enumerate_accessible_paths(const hypercube::FitnessField& field);

/// Fitness by explicit modular indexing of every window.
double naive_fitness(const nk::NKLandscape& land, nk::Genotype sigma);

/// Global maximum by evaluating naive_fitness on every genotype in label
/// order. Ties go to the smaller label.
nk::MaxResult naive_exhaustive_max(const nk::NKLandscape& land);

struct Estimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

/// Serial accessibility estimate on materialized fields using bfs_accessible.
/// Trial t uses the field seed trial_seed(seed, t), like the fast estimator.
Estimate estimate_accessibility(int N, int n, double x, std::uint64_t trials,
                                std::uint64_t seed);

}  // namespace apl::reference
