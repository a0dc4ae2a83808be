#pragma once

// Counter-based random streams.
//
// Every draw is a pure function of (key, counter): the SplitMix64 output
// function applied to key + (counter + 1) * golden_gamma. A stream is
// identified by its key alone, so any trial, vertex or table entry can be
// regenerated without replaying a sequential state. Keys for substreams are
// derived by hashing the parent key with the substream coordinates.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace apl {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 / Stafford "mix13" finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_bits(std::uint64_t key,
                                     std::uint64_t counter) noexcept {
  return mix64(key + (counter + 1) * golden_gamma);
}

/// Folds substream coordinates into a key. Order matters.
constexpr std::uint64_t derive_key(std::uint64_t key) noexcept { return key; }

template <typename... Rest>
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t id,
                                   Rest... rest) noexcept {
  return derive_key(mix64(key ^ mix64(id + golden_gamma)) + golden_gamma,
                    static_cast<std::uint64_t>(rest)...);
}

/// Maps 64 random bits to the open interval (0, 1): midpoints of the 2^-52
/// grid, so both ends stay representable.
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// A random stream: key plus a running counter. Cheap to copy; copies are
/// independent replicas that produce the same values.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return counter_bits(key_, counter_++);
  }

  /// Uniform on (0, 1).
  double uniform() noexcept { return to_unit_open((*this)()); }

  /// Uniform integer in [0, n), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    auto m = static_cast<unsigned __int128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal by Box-Muller (cosine branch only, no cached state).
  double normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Child stream keyed by this stream's key and `id`; does not advance.
  [[nodiscard]] constexpr CounterRng split(std::uint64_t id) const noexcept {
    return CounterRng(derive_key(key_, id));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// In-place Fisher-Yates shuffle driven by a CounterRng.
template <typename It>
void shuffle(It first, It last, CounterRng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace apl
