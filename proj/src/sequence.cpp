#include "apl/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace apl::sequence {

namespace {

constexpr double tail_cutoff = 1.0 - 1e-15;

double log_term(int k, double x) {
  return k * std::log(x) - std::lgamma(k + 1.0);
}

// Inverse-CDF draw over k = first, first + 2, ... with masses
// x^k / (k! norm); stops once the cumulative mass passes 1 - 1e-15.
int sample_parity_count(int first, double x, double norm, CounterRng& rng) {
  if (!(x > 0.0)) throw std::domain_error("flip-count sampler requires x > 0");
  const double u = rng.uniform();
  int k = first;
  double term = std::exp(log_term(k, x)) / norm;
  double cumulative = term;
  while (cumulative < u && cumulative < tail_cutoff) {
    term *= x * x / ((k + 1.0) * (k + 2.0));
    k += 2;
    cumulative += term;
    if (term == 0.0) break;
  }
  return k;
}

void check_class(int n, int N) {
  if (N < 1 || n < 0 || n > N)
    throw std::domain_error("need 0 <= n <= N and N >= 1");
}

}  // namespace

double pmf_F1(int k, double x) {
  if (!(x > 0.0)) throw std::domain_error("F1 requires x > 0");
  if (k < 1 || k % 2 == 0) return 0.0;
  return std::exp(log_term(k, x)) / std::sinh(x);
}

double pmf_F2(int k, double x) {
  if (!(x > 0.0)) throw std::domain_error("F2 requires x > 0");
  if (k < 0 || k % 2 != 0) return 0.0;
  return std::exp(log_term(k, x)) / std::cosh(x);
}

int sample_F1(double x, CounterRng& rng) {
  return sample_parity_count(1, x, std::sinh(x), rng);
}

int sample_F2(double x, CounterRng& rng) {
  return sample_parity_count(0, x, std::cosh(x), rng);
}

std::vector<int> UpdateSequence::occupancy() const {
  std::vector<int> counts(N, 0);
  for (int a : entries) ++counts.at(a);
  return counts;
}

UpdateSequence sample_mu_kn(int k, int n, int N, double x, CounterRng& rng) {
  check_class(n, N);
  if (k < 0 || k >= N) throw std::domain_error("k must be a coordinate");
  UpdateSequence seq{N, n, {}, {}};
  for (int i = 0; i < N; ++i) {
    bool odd_class = i < n;
    if (i == k) odd_class = !odd_class;
    const int copies = odd_class ? sample_F1(x, rng) : sample_F2(x, rng);
    seq.entries.insert(seq.entries.end(), copies, i);
  }
  apl::shuffle(seq.entries.begin(), seq.entries.end(), rng);
  seq.entries.push_back(k);
  return seq;
}

double pmf_mu_kn(std::span<const int> entries, int k, int n, int N, double x) {
  check_class(n, N);
  if (!(x > 0.0)) throw std::domain_error("pmf requires x > 0");
  if (k < 0 || k >= N) throw std::domain_error("k must be a coordinate");
  if (entries.empty() || entries.back() != k)
    throw std::invalid_argument("sequence must end with k");
  std::vector<int> counts(N, 0);
  for (int a : entries) {
    if (a < 0 || a >= N) throw std::invalid_argument("entry outside 0..N-1");
    ++counts[a];
  }
  for (int i = 0; i < N; ++i)
    if ((counts[i] % 2 == 1) != (i < n))
      throw std::invalid_argument("occupancy parity does not match the class of coordinate " +
                                  std::to_string(i));
  const int ell = static_cast<int>(entries.size());
  const int sinh_power = k < n ? n - 1 : n + 1;
  const int cosh_power = k < n ? N - n + 1 : N - n - 1;
  return std::exp(log_term(ell - 1, x) - sinh_power * std::log(std::sinh(x)) -
                  cosh_power * std::log(std::cosh(x)));
}

UpdateSequence sample_continuous(int N, int n, double x, CounterRng& rng) {
  check_class(n, N);
  if (n < 1) throw std::domain_error("continuous model requires n >= 1");
  std::vector<std::pair<double, int>> stamped;
  for (int i = 0; i < N; ++i) {
    const int copies = i < n ? sample_F1(x, rng) : sample_F2(x, rng);
    for (int c = 0; c < copies; ++c) stamped.emplace_back(rng.uniform(), i);
  }
  std::sort(stamped.begin(), stamped.end());
  UpdateSequence seq{N, n, {}, {}};
  seq.entries.reserve(stamped.size());
  seq.positions.reserve(stamped.size());
  for (const auto& [t, i] : stamped) {
    seq.positions.push_back(t);
    seq.entries.push_back(i);
  }
  return seq;
}

IntervalStats interval_stats(const UpdateSequence& seq, double a, double b) {
  if (seq.positions.size() != seq.entries.size() || (seq.positions.empty() && !seq.entries.empty()))
    throw std::invalid_argument("interval statistics need timestamped entries");
  IntervalStats stats;
  if (a > b) return stats;
  const auto lo = std::lower_bound(seq.positions.begin(), seq.positions.end(), a);
  const auto hi = std::upper_bound(seq.positions.begin(), seq.positions.end(), b);
  const auto first = static_cast<std::size_t>(lo - seq.positions.begin());
  const auto last = static_cast<std::size_t>(hi - seq.positions.begin());
  std::vector<char> odd(seq.N, 0);
  for (std::size_t p = first; p < last; ++p) {
    const int c = seq.entries[p];
    odd[c] ^= 1;
    const int step = odd[c] ? 1 : -1;
    stats.odd += step;
    if (c < seq.n) stats.odd_primary += step;
  }
  stats.total = static_cast<int>(last - first);
  return stats;
}

HammingProfile::HammingProfile(const UpdateSequence& seq)
    : length_(seq.entries.size()),
      words_((static_cast<std::size_t>(seq.N) + 63) / 64),
      primary_words_((static_cast<std::size_t>(seq.n) + 63) / 64),
      primary_tail_mask_(seq.n % 64 == 0 ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << (seq.n % 64)) - 1),
      parity_((length_ + 1) * words_, 0),
      primary_prefix_(length_ + 1, 0) {
  for (std::size_t step = 0; step < length_; ++step) {
    const int c = seq.entries[step];
    if (c < 0 || c >= seq.N) throw std::out_of_range("entry outside 0..N-1");
    std::copy_n(parity_.begin() + step * words_, words_,
                parity_.begin() + (step + 1) * words_);
    parity_[(step + 1) * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
    primary_prefix_[step + 1] = primary_prefix_[step] + (c < seq.n ? 1 : 0);
  }
}

int HammingProfile::count(std::size_t i, std::size_t j, std::size_t words,
                          std::uint64_t last_mask) const {
  if (i > length_ || j > length_) throw std::out_of_range("vertex index past the path");
  const std::uint64_t* a = parity_.data() + i * words_;
  const std::uint64_t* b = parity_.data() + j * words_;
  int total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t diff = a[w] ^ b[w];
    if (w + 1 == words) diff &= last_mask;
    total += std::popcount(diff);
  }
  return total;
}

int HammingProfile::H(std::size_t i, std::size_t j) const {
  return count(i, j, words_, ~std::uint64_t{0});
}

int HammingProfile::Hprime(std::size_t i, std::size_t j) const {
  return count(i, j, primary_words_, primary_tail_mask_);
}

int HammingProfile::D_prefix(std::size_t i) const {
  if (i > length_) throw std::out_of_range("step count past the path");
  return primary_prefix_[i];
}

int HammingProfile::D_suffix(std::size_t i) const {
  if (i > length_) throw std::out_of_range("step count past the path");
  return primary_prefix_[length_] - primary_prefix_[length_ - i];
}

GoodnessConfig GoodnessConfig::make(int N, int n, double epsilon, GoodnessMode mode) {
  if (N < 1 || n < 1 || n > N) throw std::domain_error("need 1 <= n <= N");
  if (mode == GoodnessMode::antipodal && n != N)
    throw std::domain_error("antipodal mode requires n = N");
  GoodnessConfig cfg;
  cfg.constants = analytic::make_constants(static_cast<double>(n) / N, epsilon);
  cfg.mode = mode;
  cfg.N = N;
  cfg.n = n;
  return cfg;
}

std::string_view clause_name(Clause clause) {
  switch (clause) {
    case Clause::none: return "none";
    case Clause::length_window: return "length window";
    case Clause::step1: return "|i-j|=1";
    case Clause::step2: return "|i-j|=2";
    case Clause::step3: return "|i-j|=3";
    case Clause::short_range: return "4<=|i-j|<=N^(1/5)";
    case Clause::mid_range: return "mid range";
    case Clause::upper_mid_range: return "upper mid range";
    case Clause::long_range: return "long range";
    case Clause::occupancy_window: return "occupancy window";
    case Clause::primary_upper: return "H' upper";
    case Clause::primary_lower: return "H' lower";
    case Clause::growth: return "growth";
    case Clause::primary_prefix: return "D prefix";
    case Clause::primary_suffix: return "D suffix";
  }
  return "unknown";
}

GoodnessThresholds thresholds(const GoodnessConfig& cfg) {
  const auto& c = cfg.constants;
  const double N = cfg.N;
  const double scale = cfg.mode == GoodnessMode::antipodal ? c.alpha : c.gamma;
  GoodnessThresholds t;
  t.short_range_max = static_cast<long>(std::floor(std::pow(N, 0.2)));
  t.mid_range_max = static_cast<long>(std::floor(scale * (0.5 + c.epsilon) * N));
  t.upper_mid_max = static_cast<long>(std::floor(scale * (0.5 + c.epsilon2) * N));
  return t;
}

GoodnessVerdict is_good(const UpdateSequence& seq, const GoodnessConfig& cfg) {
  if (seq.N != cfg.N || seq.n != cfg.n)
    throw std::invalid_argument("sequence dimensions do not match the config");
  const auto& c = cfg.constants;
  const std::size_t L = seq.entries.size();
  const double N = cfg.N;
  const bool antipodal = cfg.mode == GoodnessMode::antipodal;
  const auto th = thresholds(cfg);

  auto fail = [](Clause clause, std::size_t i = 0, std::size_t j = 0) {
    return GoodnessVerdict{false, clause, i, j};
  };

  // Local clauses first: a flip undone within three steps.
  for (std::size_t i = 0; i + 1 < L; ++i)
    if (seq.entries[i] == seq.entries[i + 1]) return fail(Clause::step2, i, i + 2);
  for (std::size_t i = 0; i + 2 < L; ++i)
    if (seq.entries[i] == seq.entries[i + 2]) return fail(Clause::step3, i, i + 3);

  if (antipodal) {
    if (L < c.alpha * (1.0 - c.epsilon) * N || L > c.alpha * (1.0 + c.epsilon) * N)
      return fail(Clause::length_window);
  } else {
    const auto occupancy = seq.occupancy();
    long primary = 0;
    for (int i = 0; i < cfg.n; ++i) primary += occupancy[i];
    const long secondary = static_cast<long>(L) - primary;
    const double coth = 1.0 / std::tanh(c.x0);
    const double tanh = std::tanh(c.x0);
    const double p_mean = c.beta * c.x0 * coth * N;
    const double s_mean = (1.0 - c.beta) * c.x0 * tanh * N;
    if (primary < p_mean * (1.0 - c.epsilon) || primary > p_mean * (1.0 + c.epsilon) ||
        secondary < s_mean * (1.0 - c.epsilon) || secondary > s_mean * (1.0 + c.epsilon))
      return fail(Clause::occupancy_window);
  }

  const double half_plus = 0.5 + c.epsilon1;
  const double ratio_scale = antipodal ? 1.0 / (c.alpha + c.epsilon3)
                                       : 2.0 * analytic::g_profile(0.5, c) / (c.gamma + c.epsilon3);
  const double primary_bar = half_plus * cfg.n;

  // Sweep every pair (i, j) keeping running parities of v_i -> v_j.
  std::vector<char> odd(cfg.N, 0);
  for (std::size_t i = 0; i < L; ++i) {
    std::fill(odd.begin(), odd.end(), 0);
    long h = 0;
    long hp = 0;
    for (std::size_t j = i + 1; j <= L; ++j) {
      const int a = seq.entries[j - 1];
      odd[a] ^= 1;
      const int step = odd[a] ? 1 : -1;
      h += step;
      if (a < cfg.n) hp += step;
      const long d = static_cast<long>(j - i);
      if (d <= 3) continue;  // covered above
      if (d <= th.short_range_max && h != d && h != d - 2)
        return fail(Clause::short_range, i, j);
      if (antipodal) {
        if (d <= th.short_range_max) continue;
        if (d <= th.mid_range_max) {
          if (h < d * ratio_scale || h > half_plus * N) return fail(Clause::mid_range, i, j);
        } else if (d <= th.upper_mid_max) {
          if (h < d * ratio_scale) return fail(Clause::upper_mid_range, i, j);
        } else if (h < half_plus * N) {
          return fail(Clause::long_range, i, j);
        }
      } else {
        if (d <= th.mid_range_max && hp > primary_bar) return fail(Clause::primary_upper, i, j);
        if (d > th.upper_mid_max && hp < primary_bar) return fail(Clause::primary_lower, i, j);
        if (d > th.short_range_max && d <= th.upper_mid_max && h < d * ratio_scale)
          return fail(Clause::growth, i, j);
      }
    }
  }

  if (!antipodal) {
    long prefix = 0;
    long suffix = 0;
    for (std::size_t i = 1; 2 * i <= L; ++i) {
      prefix += seq.entries[i - 1] < cfg.n ? 1 : 0;
      suffix += seq.entries[L - i] < cfg.n ? 1 : 0;
      if (prefix > c.delta * static_cast<double>(i)) return fail(Clause::primary_prefix, 0, i);
      if (suffix > c.delta * static_cast<double>(i)) return fail(Clause::primary_suffix, L - i, L);
    }
  }
  return GoodnessVerdict{true, Clause::none, 0, 0};
}

}  // namespace apl::sequence
