#include "apl/reference.hpp"

#include <algorithm>
#include <deque>
#include <vector>

#include "apl/harness.hpp"

namespace apl::reference {

using hypercube::AccessResult;
using hypercube::FitnessField;
using hypercube::VertexId;

AccessResult bfs_accessible(const FitnessField& field) {
  const int N = field.dimension();
  const auto values = field.values();
  const std::uint32_t none = ~std::uint32_t{0};
  std::vector<std::uint32_t> parent(values.size(), none);
  std::deque<std::uint32_t> queue{field.source().bits};
  parent[field.source().bits] = field.source().bits;

  AccessResult result;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    ++result.visited_count;
    if (v == field.target().bits) {
      result.accessible = true;
      std::vector<VertexId> path;
      for (std::uint32_t a = v;; a = parent[a]) {
        path.push_back(VertexId{a});
        if (a == field.source().bits) break;
      }
      std::reverse(path.begin(), path.end());
      result.path_witness = std::move(path);
      return result;
    }
    for (int i = 0; i < N; ++i) {
      const std::uint32_t c = v ^ (std::uint32_t{1} << i);
      if (parent[c] == none && values[c] > values[v] && values[c] <= field.gap()) {
        parent[c] = v;
        queue.push_back(c);
      }
    }
  }
  return result;
}

namespace {

std::uint64_t paths_from(const FitnessField& field, std::uint32_t v) {
  if (v == field.target().bits) return 1;
  std::uint64_t total = 0;
  for (int i = 0; i < field.dimension(); ++i) {
    const std::uint32_t c = v ^ (std::uint32_t{1} << i);
    if (field.values()[c] > field.values()[v] && field.values()[c] <= field.gap())
      total += paths_from(field, c);
  }
  return total;
}

}  // namespace

std::uint64_t enumerate_accessible_paths(const FitnessField& field) {
  return paths_from(field, field.source().bits);
}

double naive_fitness(const nk::NKLandscape& land, nk::Genotype sigma) {
  const int N = land.N();
  const int K = land.K();
  double total = 0.0;
  for (int i = 0; i < N; ++i) {
    std::uint32_t window = 0;
    for (int d = 0; d < K; ++d)
      window |= static_cast<std::uint32_t>(sigma[(i + d) % N]) << d;
    total += land.potential(i, window);
  }
  return total;
}

nk::MaxResult naive_exhaustive_max(const nk::NKLandscape& land) {
  nk::MaxResult best{nk::Genotype{0}, naive_fitness(land, nk::Genotype{0})};
  const std::uint64_t total = std::uint64_t{1} << land.N();
  for (std::uint64_t s = 1; s < total; ++s) {
    const nk::Genotype sigma{static_cast<std::uint32_t>(s)};
    const double value = naive_fitness(land, sigma);
    if (value > best.value) best = nk::MaxResult{sigma, value};
  }
  return best;
}

Estimate estimate_accessibility(int N, int n, double x, std::uint64_t trials,
                                std::uint64_t seed) {
  Estimate estimate{trials, 0};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const FitnessField field =
        hypercube::sample_field(N, n, x, harness::trial_seed(seed, t));
    if (bfs_accessible(field).accessible) ++estimate.successes;
  }
  return estimate;
}

}  // namespace apl::reference
