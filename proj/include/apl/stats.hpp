#pragma once

// Small statistics toolkit for the Monte Carlo checks.

#include <cstdint>
#include <span>

namespace apl::stats {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion. Always contains
/// successes / trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct Summary {
  double mean = 0.0;
  double standard_error = 0.0;  // sample sd / sqrt(count)
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

/// Kolmogorov limiting survival function Q(lambda) = 2 sum (-1)^(k-1) e^(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value (Stephens'
/// small-sample correction of lambda).
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson goodness of fit. Cells with expected count below `min_expected`
/// are pooled into one extra cell (kept only if its expectation reaches the
/// same floor, otherwise merged into the smallest retained cell).
TestResult chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities, double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

/// Spearman rank correlation with average ranks for ties. The p-value is
/// two-sided from the t approximation with n - 2 degrees of freedom.
TestResult spearman(std::span<const double> x, std::span<const double> y);

}  // namespace apl::stats
