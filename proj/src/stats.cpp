#include "apl/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace apl::stats {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("Wilson interval needs trials >= 1");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  // Rounding can push an endpoint across p at the boundaries 0 and 1.
  return Interval{std::clamp(std::min(centre - half, p), 0.0, 1.0),
                  std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.standard_error = std::sqrt(ss / (s.count - 1) / s.count);
  }
  return s;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return TestResult{d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d), 0.0};
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) throw std::invalid_argument("chi-square needs positive degrees of freedom");
  if (statistic <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

TestResult chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities, double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty())
    throw std::invalid_argument("observed and probabilities must match");
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> obs;
  std::vector<double> expct;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t c = 0; c < observed.size(); ++c) {
    const double e = probabilities[c] * total;
    if (e >= min_expected) {
      obs.push_back(static_cast<double>(observed[c]));
      expct.push_back(e);
    } else {
      pooled_obs += static_cast<double>(observed[c]);
      pooled_exp += e;
    }
  }
  if (pooled_exp >= min_expected || expct.empty()) {
    obs.push_back(pooled_obs);
    expct.push_back(pooled_exp);
  } else if (pooled_exp > 0.0 || pooled_obs > 0.0) {
    const auto smallest = std::min_element(expct.begin(), expct.end()) - expct.begin();
    obs[smallest] += pooled_obs;
    expct[smallest] += pooled_exp;
  }
  if (expct.size() < 2) throw std::invalid_argument("chi-square needs at least two cells");
  double stat = 0.0;
  for (std::size_t c = 0; c < obs.size(); ++c)
    stat += (obs[c] - expct[c]) * (obs[c] - expct[c]) / expct[c];
  const double dof = static_cast<double>(obs.size() - 1);
  return TestResult{stat, chi_square_sf(stat, dof), dof};
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

TestResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("Spearman needs two equal samples of size >= 3");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1) / 2;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  TestResult r;
  r.dof = n - 2;
  if (sxx == 0.0 || syy == 0.0) return r;
  r.statistic = sxy / std::sqrt(sxx * syy);
  if (std::abs(r.statistic) >= 1.0) {
    r.p_value = 0.0;
    return r;
  }
  const double t = r.statistic * std::sqrt(r.dof / (1 - r.statistic * r.statistic));
  r.p_value = 2 * boost::math::cdf(boost::math::complement(
                      boost::math::students_t(r.dof), std::abs(t)));
  return r;
}

}  // namespace apl::stats
