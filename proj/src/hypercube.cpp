#include "apl/hypercube.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace apl::hypercube {

namespace {

void check_field_args(int N, int n, double x, int cap) {
  if (N < 1 || N > cap)
    throw std::domain_error("dimension " + std::to_string(N) +
                            " outside [1, " + std::to_string(cap) + "]");
  if (n < 1 || n > N)
    throw std::domain_error("Hamming distance must satisfy 1 <= n <= N");
  if (!(x > 0.0 && x <= 1.0))
    throw std::domain_error("gap must lie in (0, 1]");
}

template <typename Field>
AccessResult search(const Field& field, SearchScratch& scratch,
                    bool want_witness) {
  const int N = field.dimension();
  const VertexId source = field.source();
  const VertexId target = field.target();
  const double gap = field.gap();
  const double level = 0.5 * gap;

  auto& backward = scratch.backward;
  auto& forward = scratch.forward;
  auto& stack = scratch.stack;
  backward.clear();
  forward.clear();

  // Vertices that reach the target through values in [level, gap].
  backward.insert(target.bits, target.bits);
  stack.assign(1, {target.bits, gap});
  while (!stack.empty()) {
    const auto [b, vb] = stack.back();
    stack.pop_back();
    for (int i = 0; i < N; ++i) {
      const VertexId c = VertexId{b}.flipped(i);
      const double vc = field.value(c);
      // Sampled fields have no ties; explicit fields may, and ties block.
      if constexpr (std::is_same_v<Field, LazyField>) assert(vc != vb || c == source);
      if (vc >= level && vc < vb && backward.insert(c.bits, b))
        stack.emplace_back(c.bits, vc);
    }
  }

  AccessResult result;
  forward.insert(source.bits, source.bits);
  stack.assign(1, {source.bits, 0.0});
  while (!stack.empty()) {
    const auto [a, va] = stack.back();
    stack.pop_back();
    for (int i = 0; i < N; ++i) {
      const VertexId c = VertexId{a}.flipped(i);
      const double vc = field.value(c);
      if (vc >= level) {
        if (!backward.contains(c.bits)) continue;
        result.accessible = true;
        if (want_witness) {
          std::vector<VertexId> path;
          for (std::uint32_t v = a;; v = *forward.find(v)) {
            path.push_back(VertexId{v});
            if (v == source.bits) break;
          }
          std::reverse(path.begin(), path.end());
          for (std::uint32_t v = c.bits;; v = *backward.find(v)) {
            path.push_back(VertexId{v});
            if (v == target.bits) break;
          }
          result.path_witness = std::move(path);
        }
        result.visited_count = forward.size() + backward.size();
        stack.clear();
        return result;
      }
      if (vc > va && forward.insert(c.bits, a)) stack.emplace_back(c.bits, vc);
    }
  }
  result.visited_count = forward.size() + backward.size();
  return result;
}

}  // namespace

LazyField::LazyField(int N, int n, double x, std::uint64_t seed)
    : N_(N), source_{0}, target_(first_bits(n)), gap_(x), key_(field_key(seed)) {
  check_field_args(N, n, x, max_sim_dimension);
}

FitnessField::FitnessField(int N, VertexId source, VertexId target, double gap,
                           std::vector<double> values)
    : N_(N), source_(source), target_(target), gap_(gap),
      values_(std::move(values)) {
  if (N < 1 || N > max_materialized_dimension)
    throw std::domain_error("materialized dimension out of range");
  if (values_.size() != (std::size_t{1} << N))
    throw std::invalid_argument("field needs 2^N values");
  if (source == target)
    throw std::invalid_argument("source and target must differ");
  if (!(gap > 0.0 && gap <= 1.0))
    throw std::domain_error("gap must lie in (0, 1]");
  if (values_[source.bits] != 0.0 || values_[target.bits] != gap)
    throw std::invalid_argument("endpoint values must be 0 and the gap");
}

FitnessField sample_field(int N, int n, double x, std::uint64_t seed) {
  check_field_args(N, n, x, max_materialized_dimension);
  const LazyField lazy(N, n, x, seed);
  std::vector<double> values(std::size_t{1} << N);
  for (std::uint32_t v = 0; v < values.size(); ++v)
    values[v] = lazy.value(VertexId{v});
  return FitnessField(N, lazy.source(), lazy.target(), x, std::move(values));
}

VertexMap::VertexMap(std::size_t initial_capacity) {
  const std::size_t capacity = std::bit_ceil(std::max<std::size_t>(16, initial_capacity));
  slots_.assign(capacity, Slot{0, 0, 0});
  mask_ = capacity - 1;
}

void VertexMap::clear() {
  size_ = 0;
  if (++epoch_ == 0) {
    std::fill(slots_.begin(), slots_.end(), Slot{0, 0, 0});
    epoch_ = 1;
  }
}

std::size_t VertexMap::probe_start(std::uint32_t key) const {
  return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 20) & mask_;
}

bool VertexMap::insert(std::uint32_t key, std::uint32_t link) {
  if (2 * (size_ + 1) > slots_.size()) grow();
  for (std::size_t i = probe_start(key);; i = (i + 1) & mask_) {
    Slot& slot = slots_[i];
    if (slot.epoch != epoch_) {
      slot = Slot{key, link, epoch_};
      ++size_;
      return true;
    }
    if (slot.key == key) return false;
  }
}

const std::uint32_t* VertexMap::find(std::uint32_t key) const {
  for (std::size_t i = probe_start(key);; i = (i + 1) & mask_) {
    const Slot& slot = slots_[i];
    if (slot.epoch != epoch_) return nullptr;
    if (slot.key == key) return &slot.link;
  }
}

void VertexMap::grow() {
  std::vector<Slot> old;
  old.swap(slots_);
  slots_.assign(old.size() * 2, Slot{0, 0, 0});
  mask_ = slots_.size() - 1;
  const std::uint32_t live = epoch_;
  epoch_ = 1;
  size_ = 0;
  for (const Slot& slot : old)
    if (slot.epoch == live) insert(slot.key, slot.link);
}

AccessResult is_accessible(const FitnessField& field, SearchScratch& scratch,
                           bool want_witness) {
  return search(field, scratch, want_witness);
}

AccessResult is_accessible(const LazyField& field, SearchScratch& scratch,
                           bool want_witness) {
  return search(field, scratch, want_witness);
}

AccessResult is_accessible(const FitnessField& field) {
  SearchScratch scratch;
  return search(field, scratch, true);
}

analytic::BigCount count_accessible_paths(const FitnessField& field) {
  const int N = field.dimension();
  if (N > max_exact_dimension)
    throw std::domain_error("exact path counting is capped at N = " +
                            std::to_string(max_exact_dimension));
  const double gap = field.gap();
  const auto values = field.values();

  // Every increasing path visits vertices in increasing value order, so a
  // single pass in that order accumulates the path counts.
  std::vector<std::uint32_t> order;
  for (std::uint32_t v = 0; v < values.size(); ++v)
    if (VertexId{v} != field.source() && values[v] > 0.0 && values[v] <= gap)
      order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });

  std::vector<analytic::BigCount> paths(values.size(), 0);
  paths[field.source().bits] = 1;
  for (std::uint32_t v : order) {
    analytic::BigCount total = 0;
    for (int i = 0; i < N; ++i) {
      const std::uint32_t c = VertexId{v}.flipped(i).bits;
      if (values[c] < values[v] && paths[c] != 0 &&
          __builtin_add_overflow(total, paths[c], &total))
        throw std::overflow_error("accessible path count exceeds 128 bits");
    }
    paths[v] = total;
  }
  return paths[field.target().bits];
}

std::vector<std::vector<int>> enumerate_sequences(int n, int N, int ell) {
  if (N < 0 || N > 4 || ell < 0 || ell > 8)
    throw std::length_error("sequence enumeration is capped at N <= 4, ell <= 8");
  if (n < 0 || n > N) throw std::domain_error("need 0 <= n <= N");

  std::vector<std::vector<int>> out;
  if (N == 0) {
    if (ell == 0) out.emplace_back();
    return out;
  }
  std::vector<int> seq(ell, 0);
  std::size_t total = 1;
  for (int i = 0; i < ell; ++i) total *= N;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    unsigned parity = 0;
    for (int i = 0; i < ell; ++i) {
      const int coordinate = static_cast<int>(rest % N);
      rest /= N;
      seq[ell - 1 - i] = coordinate;
      parity ^= 1u << coordinate;
    }
    if (parity == first_bits(n).bits) out.push_back(seq);
  }
  return out;
}

std::vector<VertexId> apply_sequence(std::span<const int> sequence) {
  std::vector<VertexId> path{VertexId{0}};
  path.reserve(sequence.size() + 1);
  for (int coordinate : sequence) path.push_back(path.back().flipped(coordinate));
  return path;
}

}  // namespace apl::hypercube
