#include "apl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "apl/analytic.hpp"
#include "apl/hypercube.hpp"
#include "apl/nk.hpp"
#include "apl/reference.hpp"
#include "apl/sequence.hpp"

namespace apl::oracle {

namespace {

constexpr std::uint64_t oracle_seed = 0x0AC1E;

std::string triple(int n, int N, int ell) {
  return "(n=" + std::to_string(n) + ", N=" + std::to_string(N) + ", ell=" +
         std::to_string(ell) + ")";
}

Check enumeration_check(bool fault) {
  Check c{"enumeration vs m_coefficient", true, ""};
  std::uint64_t total = 0;
  for (int N = 0; N <= 4; ++N)
    for (int n = 0; n <= N; ++n)
      for (int ell = 0; ell <= 8; ++ell) {
        const int class_size = fault ? std::max(n - 1, 0) : n;
        const auto enumerated = hypercube::enumerate_sequences(class_size, N, ell).size();
        const auto expected = analytic::m_coefficient(n, N, ell);
        total += enumerated;
        if (enumerated != expected) {
          c.passed = false;
          c.detail = triple(n, N, ell) + ": enumerated " + std::to_string(enumerated) +
                     ", coefficient " + std::to_string(expected);
          return c;
        }
      }
  c.detail = std::to_string(total) + " sequences agree";
  return c;
}

Check accessibility_check() {
  Check c{"path count > 0 iff accessible", true, ""};
  CounterRng rng(derive_key(oracle_seed, 1));
  int accessible = 0;
  const int fields = 400;
  for (int f = 0; f < fields; ++f) {
    const int N = 1 + static_cast<int>(rng.below(8));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
    const double x = rng.uniform();
    const std::uint64_t seed = rng();
    const auto field = hypercube::sample_field(N, n, x, seed);
    const bool fast = hypercube::is_accessible(field).accessible;
    const auto count = hypercube::count_accessible_paths(field);
    const bool bfs = reference::bfs_accessible(field).accessible;
    const bool agree_enum =
        N > 6 || reference::enumerate_accessible_paths(field) == static_cast<std::uint64_t>(count);
    if (fast != (count > 0) || bfs != fast || !agree_enum) {
      c.passed = false;
      c.detail = "field N=" + std::to_string(N) + " n=" + std::to_string(n) + " x=" +
                 std::to_string(x) + " seed=" + std::to_string(seed);
      return c;
    }
    accessible += fast;
  }
  c.detail = std::to_string(fields) + " fields, " + std::to_string(accessible) + " accessible";
  return c;
}

Check normalization_check() {
  Check c{"pmf normalization", true, ""};
  for (double x : {0.05, 0.4, 0.88, 1.0}) {
    double f1 = 0.0;
    double f2 = 0.0;
    for (int k = 0; k <= 60; ++k) {
      f1 += sequence::pmf_F1(k, x);
      f2 += sequence::pmf_F2(k, x);
    }
    if (std::abs(f1 - 1.0) > 1e-12 || std::abs(f2 - 1.0) > 1e-12) {
      c.passed = false;
      c.detail = "F1/F2 at x=" + std::to_string(x);
      return c;
    }
  }
  // mu_{k,n} summed over every sequence of length <= 8 on N = 2 must equal
  // the mass of prefix lengths <= 7 under the product of F1/F2 laws.
  const int N = 2;
  const double x = 0.4;
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k < N; ++k) {
      double mass = 0.0;
      for (int ell = 1; ell <= 8; ++ell)
        for (const auto& seq : hypercube::enumerate_sequences(n, N, ell))
          if (seq.back() == k) mass += sequence::pmf_mu_kn(seq, k, n, N, x);
      const int odd = k < n ? n - 1 : n + 1;
      double expected = 0.0;
      double term = 1.0;  // x^j / j!
      for (int j = 0; j <= 7; ++j) {
        expected += static_cast<double>(analytic::m_coefficient(odd, N, j)) * term;
        term *= x / (j + 1);
      }
      expected /= std::pow(std::sinh(x), odd) * std::pow(std::cosh(x), N - odd);
      if (std::abs(mass - expected) > 1e-12 || expected < 1.0 - 1e-3) {
        c.passed = false;
        c.detail = "mu_{k,n} with k=" + std::to_string(k) + " n=" + std::to_string(n) +
                   " has mass " + std::to_string(mass) + ", expected " + std::to_string(expected);
        return c;
      }
    }
  c.detail = "F1, F2 and truncated mu_{k,n} masses agree";
  return c;
}

Check profile_check() {
  Check c{"Hamming profile vs XOR simulation", true, ""};
  CounterRng rng(derive_key(oracle_seed, 2));
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 1 + static_cast<int>(rng.below(20));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
    sequence::UpdateSequence seq{N, n, {}, {}};
    const int L = static_cast<int>(rng.below(40));
    for (int s = 0; s < L; ++s) seq.entries.push_back(static_cast<int>(rng.below(N)));
    const sequence::HammingProfile profile(seq);
    const auto path = hypercube::apply_sequence(seq.entries);
    const std::uint32_t primary = hypercube::first_bits(n).bits;
    for (std::size_t i = 0; i < path.size(); ++i)
      for (std::size_t j = i; j < path.size(); ++j) {
        const std::uint32_t diff = path[i].bits ^ path[j].bits;
        if (profile.H(i, j) != std::popcount(diff) ||
            profile.Hprime(i, j) != std::popcount(diff & primary)) {
          c.passed = false;
          c.detail = "sequence trial " + std::to_string(trial) + " pair (" +
                     std::to_string(i) + ", " + std::to_string(j) + ")";
          return c;
        }
      }
  }
  c.detail = "200 random sequences agree";
  return c;
}

Check nk_decomposition_check() {
  Check c{"K=1 NK decomposition", true, ""};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int N = 4 + static_cast<int>(s % 13);
    const nk::NKLandscape land(N, 1, derive_key(oracle_seed, 3, s));
    double expected = 0.0;
    for (int i = 0; i < N; ++i) expected += std::max(land.potential(i, 0), land.potential(i, 1));
    const auto best = nk::exhaustive_max(land);
    if (best.value != expected) {
      c.passed = false;
      c.detail = "landscape N=" + std::to_string(N) + " replica " + std::to_string(s);
      return c;
    }
  }
  c.detail = "20 landscapes agree exactly";
  return c;
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Report run_oracle_validation(const Options& options) {
  Report report;
  report.checks.push_back(enumeration_check(options.inject_parity_fault));
  report.checks.push_back(accessibility_check());
  report.checks.push_back(normalization_check());
  report.checks.push_back(profile_check());
  report.checks.push_back(nk_decomposition_check());
  return report;
}

}  // namespace apl::oracle
