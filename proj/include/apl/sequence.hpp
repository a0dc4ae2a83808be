#pragma once

// Update-sequence measures and good-path predicates.
//
// A path from 0 is encoded by its coordinate flips (a_1, ..., a_L), with
// coordinates 0..N-1. Coordinates 0..n-1 form the odd class (they must be
// flipped an odd number of times to reach the target), n..N-1 the even
// class. Flip counts follow F1 (odd support, x^k / (k! sinh x)) or F2 (even
// support, x^k / (k! cosh x)); arrangements are uniform given the counts.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "apl/analytic.hpp"
#include "apl/rng.hpp"

namespace apl::sequence {

double pmf_F1(int k, double x);
double pmf_F2(int k, double x);
int sample_F1(double x, CounterRng& rng);
int sample_F2(double x, CounterRng& rng);

struct UpdateSequence {
  int N = 0;
  int n = 0;
  std::vector<int> entries;
  std::vector<double> positions;  // empty unless from the continuous model

  std::size_t length() const { return entries.size(); }
  /// Flip count per coordinate.
  std::vector<int> occupancy() const;
};

/// Draws from mu_{k,n}: flip counts per class (with the class of k swapped),
/// a uniform arrangement, then k appended. k is a coordinate in 0..N-1.
UpdateSequence sample_mu_kn(int k, int n, int N, double x, CounterRng& rng);

/// Probability of `entries` under mu_{k,n}. Throws std::invalid_argument
/// when the sequence does not end with k or has the wrong parities.
double pmf_mu_kn(std::span<const int> entries, int k, int n, int N, double x);

/// Continuous model: U_i ~ F1 for i < n and F2 otherwise, each copy placed
/// uniformly on [0, 1], entries read off in time order.
UpdateSequence sample_continuous(int N, int n, double x, CounterRng& rng);

struct IntervalStats {
  int total = 0;        // T_I: updates inside I
  int odd = 0;          // O_I: coordinates updated an odd number of times
  int odd_primary = 0;  // O'_I: same, restricted to coordinates < n
};

/// Counts over timestamps in [a, b]. An empty interval (a > b) gives zeros.
/// Throws std::invalid_argument if the sequence has no positions.
IntervalStats interval_stats(const UpdateSequence& seq, double a, double b);

/// Hamming distances between the vertices v_0..v_L of a sequence's path.
class HammingProfile {
 public:
  explicit HammingProfile(const UpdateSequence& seq);

  std::size_t length() const { return length_; }
  /// H(v_i, v_j); throws std::out_of_range past the path.
  int H(std::size_t i, std::size_t j) const;
  /// Hamming distance restricted to coordinates < n.
  int Hprime(std::size_t i, std::size_t j) const;
  /// Updates of coordinates < n among the first i steps.
  int D_prefix(std::size_t i) const;
  /// Updates of coordinates < n among the last i steps.
  int D_suffix(std::size_t i) const;

 private:
  int count(std::size_t i, std::size_t j, std::size_t words,
            std::uint64_t last_mask) const;

  std::size_t length_ = 0;
  std::size_t words_ = 0;
  std::size_t primary_words_ = 0;
  std::uint64_t primary_tail_mask_ = 0;
  std::vector<std::uint64_t> parity_;  // (length_ + 1) x words_
  std::vector<int> primary_prefix_;
};

enum class GoodnessMode { antipodal, general };

struct GoodnessConfig {
  analytic::PhaseConstants constants;
  GoodnessMode mode = GoodnessMode::antipodal;
  int N = 0;
  int n = 0;  // odd-class size; must equal N in antipodal mode

  static GoodnessConfig make(int N, int n, double epsilon, GoodnessMode mode);
};

enum class Clause {
  none,
  length_window,       // L outside the admissible window
  step1,               // H = 1 at distance 1
  step2,               // H = 2 at distance 2
  step3,               // H = 3 at distance 3
  short_range,         // H in {d, d - 2} for 4 <= d <= N^(1/5)
  mid_range,           // antipodal: d/(alpha+eps3) <= H <= (1/2+eps1) N
  upper_mid_range,     // antipodal: H >= d/(alpha+eps3)
  long_range,          // antipodal: H >= (1/2+eps1) N
  occupancy_window,    // general (a)
  primary_upper,       // general (c): H' <= (1/2+eps1) beta N
  primary_lower,       // general (c): H' >= (1/2+eps1) beta N
  growth,              // general (c): H >= 2 g(1/2) d / (gamma+eps3)
  primary_prefix,      // general (d): D(v_0, v_i) <= delta i
  primary_suffix,      // general (d): D(v_{L-i}, v_L) <= delta i
};

std::string_view clause_name(Clause clause);

struct GoodnessVerdict {
  bool good = false;
  Clause first_violated = Clause::none;
  std::size_t i = 0;  // offending pair, when the clause is pairwise
  std::size_t j = 0;
};

/// Integer regime boundaries (floors of the real thresholds).
struct GoodnessThresholds {
  long short_range_max = 0;  // floor(N^(1/5))
  long mid_range_max = 0;    // floor(c (1/2 + eps) N), c = alpha or gamma
  long upper_mid_max = 0;    // floor(c (1/2 + eps2) N)
};

GoodnessThresholds thresholds(const GoodnessConfig& cfg);

/// Checks the good-path clauses in order and reports the first violation.
GoodnessVerdict is_good(const UpdateSequence& seq, const GoodnessConfig& cfg);

}  // namespace apl::sequence
