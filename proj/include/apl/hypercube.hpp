#pragma once

// Conditioned fitness fields on {0,1}^N and accessibility by increasing paths.
//
// A field puts 0 on the source u = 0...0, the gap x on the target w (the
// first n bits set) and i.i.d. uniform values everywhere else. Interior
// values are a pure function of (seed, vertex), so a field can be held as a
// flat array (FitnessField) or evaluated on demand (LazyField) with
// identical contents.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apl/analytic.hpp"
#include "apl/rng.hpp"

namespace apl::hypercube {

inline constexpr int max_sim_dimension = 30;
inline constexpr int max_materialized_dimension = 24;
inline constexpr int max_exact_dimension = 12;

/// Vertex of the hypercube; coordinate i is bit i.
struct VertexId {
  std::uint32_t bits = 0;

  constexpr VertexId flipped(int coordinate) const {
    return VertexId{bits ^ (std::uint32_t{1} << coordinate)};
  }
  constexpr bool operator[](int coordinate) const {
    return (bits >> coordinate) & 1u;
  }
  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

constexpr int hamming(VertexId a, VertexId b) {
  return std::popcount(a.bits ^ b.bits);
}

/// The target with the first n coordinates set.
constexpr VertexId first_bits(int n) {
  return VertexId{n >= 32 ? ~std::uint32_t{0}
                          : (std::uint32_t{1} << n) - 1u};
}

/// Interior value of `v` in the field keyed by `key`.
inline double interior_value(std::uint64_t key, VertexId v) {
  return to_unit_open(counter_bits(key, v.bits));
}

/// Key of the field with a given seed.
constexpr std::uint64_t field_key(std::uint64_t seed) {
  return derive_key(seed, 0xF1E1D);
}

/// On-demand field: values computed from the seed whenever asked for.
class LazyField {
 public:
  LazyField(int N, int n, double x, std::uint64_t seed);

  double value(VertexId v) const {
    if (v == target_) return gap_;
    if (v == source_) return 0.0;
    return interior_value(key_, v);
  }
  int dimension() const { return N_; }
  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  double gap() const { return gap_; }

 private:
  int N_;
  VertexId source_;
  VertexId target_;
  double gap_;
  std::uint64_t key_;
};

/// Materialized field: flat array of 2^N values indexed by vertex label.
class FitnessField {
 public:
  /// Explicit construction; requires values[source] = 0, values[target] = gap.
  FitnessField(int N, VertexId source, VertexId target, double gap,
               std::vector<double> values);

  double value(VertexId v) const { return values_[v.bits]; }
  std::span<const double> values() const { return values_; }
  int dimension() const { return N_; }
  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  double gap() const { return gap_; }

 private:
  int N_;
  VertexId source_;
  VertexId target_;
  double gap_;
  std::vector<double> values_;
};

/// Field with u = 0, w = first_bits(n), X(u) = 0, X(w) = x and interior
/// values drawn from the seeded stream. Same contents as LazyField(N, n, x,
/// seed). Throws std::domain_error when N exceeds
/// max_materialized_dimension or the arguments are out of range.
FitnessField sample_field(int N, int n, double x, std::uint64_t seed);

struct AccessResult {
  bool accessible = false;
  std::size_t visited_count = 0;
  std::optional<std::vector<VertexId>> path_witness;
};

/// Open-addressing map from vertex to a linked vertex, cleared in O(1) by
/// bumping an epoch. Used as the visited set of the searches.
class VertexMap {
 public:
  explicit VertexMap(std::size_t initial_capacity = 1024);

  void clear();
  /// Inserts key -> link if absent; returns whether it was inserted.
  bool insert(std::uint32_t key, std::uint32_t link);
  bool contains(std::uint32_t key) const { return find(key) != nullptr; }
  const std::uint32_t* find(std::uint32_t key) const;
  std::size_t size() const { return size_; }

 private:
  struct Slot {
    std::uint32_t key;
    std::uint32_t link;
    std::uint32_t epoch;
  };
  std::size_t probe_start(std::uint32_t key) const;
  void grow();

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
  std::uint32_t epoch_ = 1;
};

/// Per-thread scratch for the accessibility search.
struct SearchScratch {
  VertexMap forward;
  VertexMap backward;
  std::vector<std::pair<std::uint32_t, double>> stack;
};

/// Decides accessibility by splitting at the value level m = x/2: a path
/// exists iff some vertex reachable from u through values below m is
/// adjacent to a vertex that reaches w through values in [m, x]. Every
/// increasing path crosses m exactly once, so the split is exact. The
/// witness is filled when `want_witness` is set.
AccessResult is_accessible(const FitnessField& field, SearchScratch& scratch,
                           bool want_witness = true);
AccessResult is_accessible(const LazyField& field, SearchScratch& scratch,
                           bool want_witness = true);
AccessResult is_accessible(const FitnessField& field);

/// Exact number of strictly increasing u -> w paths (N <= 12). Throws
/// std::domain_error above the cap and std::overflow_error past 128 bits.
analytic::BigCount count_accessible_paths(const FitnessField& field);

/// All sequences in {0..N-1}^ell where coordinates 0..n-1 occur an odd
/// number of times and the rest an even number. Oracle scale only:
/// N <= 4, ell <= 8, otherwise std::length_error.
std::vector<std::vector<int>> enumerate_sequences(int n, int N, int ell);

/// Vertices visited when the flips in `sequence` are applied from 0.
std::vector<VertexId> apply_sequence(std::span<const int> sequence);

}  // namespace apl::hypercube
