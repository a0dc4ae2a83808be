#include "apl/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace apl::analytic {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("beta must lie in (0, 1], got " +
                            std::to_string(beta));
}

void check_counts(int n, int N) {
  if (n < 0 || N < n)
    throw std::domain_error("need 0 <= n <= N, got n=" + std::to_string(n) +
                            " N=" + std::to_string(N));
}

// log f(x), finite for every x > 0.
double log_f(double x, double beta) {
  return beta * std::log(std::sinh(x)) + (1.0 - beta) * std::log(std::cosh(x));
}

template <typename Count>
bool add_overflows(Count a, Count b, Count& out) {
  return __builtin_add_overflow(a, b, &out);
}

template <typename Count>
bool mul_overflows(Count a, Count b, Count& out) {
  return __builtin_mul_overflow(a, b, &out);
}

// Integer DP over coordinates. counts[len] holds the number of sequences of
// length len over the coordinates processed so far with the required parity
// pattern. Adding a coordinate with j occurrences interleaves them into a
// sequence of length len + j in C(len + j, j) ways.
template <typename Count>
Count m_coefficient_impl(int n, int N, int ell) {
  check_counts(n, N);
  if (ell < 0) throw std::domain_error("ell must be nonnegative");
  if (ell < n || (ell - n) % 2 != 0) return 0;

  std::vector<std::vector<Count>> binom(ell + 1, std::vector<Count>(ell + 1, 0));
  for (int a = 0; a <= ell; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) {
      if (add_overflows(binom[a - 1][b - 1], binom[a - 1][b], binom[a][b]))
        throw std::overflow_error("binomial overflow in m_coefficient");
    }
  }

  std::vector<Count> counts(ell + 1, 0), next(ell + 1, 0);
  counts[0] = 1;
  for (int coord = 0; coord < N; ++coord) {
    const int first = coord < n ? 1 : 0;
    std::fill(next.begin(), next.end(), Count{0});
    for (int len = 0; len <= ell; ++len) {
      if (counts[len] == 0) continue;
      for (int j = first; len + j <= ell; j += 2) {
        Count term;
        if (mul_overflows(counts[len], binom[len + j][j], term) ||
            add_overflows(next[len + j], term, next[len + j]))
          throw std::overflow_error(
              "M(n, l) exceeds the counter width for n=" + std::to_string(n) +
              " N=" + std::to_string(N) + " l=" + std::to_string(ell));
      }
    }
    counts.swap(next);
  }
  return counts[ell];
}

}  // namespace

double eval_f(double x, double beta) {
  check_beta(beta);
  if (!(x > 0.0)) throw std::domain_error("f requires x > 0");
  return std::pow(std::sinh(x), beta) * std::pow(std::cosh(x), 1.0 - beta);
}

double eval_f_prime(double x, double beta) {
  return (beta / std::tanh(x) + (1.0 - beta) * std::tanh(x)) * eval_f(x, beta);
}

double solve_x0(double beta, double tol) {
  check_beta(beta);
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");

  // f is strictly increasing with f(0+) = 0 and f(3) > 1.
  double lo = 1e-6;
  double hi = 3.0;
  constexpr int bisection_steps = 40;
  for (int i = 0; i < bisection_steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (log_f(mid, beta) < 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  constexpr int newton_cap = 50;
  for (int i = 0; i < newton_cap; ++i) {
    const double residual = eval_f(x, beta) - 1.0;
    if (std::abs(residual) <= tol) return x;
    double step = residual / eval_f_prime(x, beta);
    double candidate = x - step;
    if (!(candidate > lo && candidate < hi)) candidate = 0.5 * (lo + hi);
    (eval_f(candidate, beta) < 1.0 ? lo : hi) = candidate;
    if (candidate == x) break;
    x = candidate;
  }
  if (std::abs(eval_f(x, beta) - 1.0) <= tol) return x;
  throw std::runtime_error("solve_x0 did not reach tolerance " +
                           std::to_string(tol) + " for beta=" +
                           std::to_string(beta));
}

double critical_x(int N, double beta) {
  if (N < 2) throw std::domain_error("critical_x requires N >= 2");
  const double x0 = solve_x0(beta);
  const double slope = eval_f_prime(x0, beta);
  return x0 - std::log(static_cast<double>(N)) / (N * slope);
}

PhaseConstants make_constants(double beta, double epsilon) {
  check_beta(beta);
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  PhaseConstants c;
  c.beta = beta;
  c.x0 = solve_x0(beta);
  const double coth = 1.0 / std::tanh(c.x0);
  const double tanh = std::tanh(c.x0);
  c.f_prime_x0 = beta * coth + (1.0 - beta) * tanh;
  c.alpha = c.x0 * coth;
  c.gamma = c.x0 * c.f_prime_x0;
  c.epsilon = epsilon;
  c.epsilon1 = std::pow(epsilon, 0.5);
  c.epsilon2 = std::pow(epsilon, 0.25);
  c.epsilon3 = std::pow(epsilon, 0.125);
  c.epsilon4 = std::pow(epsilon, 0.125);
  c.delta = beta * coth / (beta * coth + (1.0 - beta) * tanh) + c.epsilon4;
  return c;
}

double m_series_sum(int n, int N, double x) {
  check_counts(n, N);
  if (!(x > 0.0)) throw std::domain_error("m_series_sum requires x > 0");
  return std::pow(std::sinh(x), n) * std::pow(std::cosh(x), N - n);
}

std::uint64_t m_coefficient(int n, int N, int ell) {
  return m_coefficient_impl<std::uint64_t>(n, N, ell);
}

BigCount m_coefficient_wide(int n, int N, int ell) {
  return m_coefficient_impl<BigCount>(n, N, ell);
}

double first_moment_upper(int n, int N, double x) {
  if (n < 1 || N < n)
    throw std::domain_error("first_moment_upper requires 1 <= n <= N");
  if (!(x > 0.0)) throw std::domain_error("first_moment_upper requires x > 0");
  const double s = std::sinh(x);
  const double c = std::cosh(x);
  return std::pow(s, n - 1) * std::pow(c, N - n - 1) *
         (n * c * c + (N - n) * s * s);
}

double path_open_probability(int ell, double x) {
  if (ell < 1) throw std::domain_error("path length must be >= 1");
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("gap must lie in (0, 1]");
  if (ell == 1) return 1.0;
  return std::exp((ell - 1) * std::log(x) - std::lgamma(static_cast<double>(ell)));
}

double p_odd(double t, double x, Parity parity) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0, 1]");
  if (!(x > 0.0)) throw std::domain_error("p_odd requires x > 0");
  if (parity == Parity::odd)
    return std::sinh(x * t) * std::cosh(x * (1.0 - t)) / std::sinh(x);
  return std::sinh(x * t) * std::sinh(x * (1.0 - t)) / std::cosh(x);
}

double g_profile(double t, const PhaseConstants& constants) {
  return constants.beta * p_odd(t, constants.x0, Parity::odd) +
         (1.0 - constants.beta) * p_odd(t, constants.x0, Parity::even);
}

double spacing_moment_exact(const SpacingQuery& q) {
  if (q.L < 2 || q.i1 < 1 || q.i1 >= q.L)
    throw std::domain_error("spacing moment requires 1 <= i1 < L");
  if (q.beta1 < 0) throw std::domain_error("moment order must be nonnegative");
  if (!(q.x > 0.0)) throw std::domain_error("gap must be positive");
  if (q.beta1 == 0) return 1.0;
  const double b = q.beta1;
  const double log_value = b * std::log(q.x) + std::lgamma(double(q.L)) -
                           std::lgamma(q.L + b) + std::lgamma(q.i1 + b) -
                           std::lgamma(double(q.i1));
  return std::exp(log_value);
}

double spacing_moment_bound(const SpacingQuery& q, double C) {
  if (q.i1 < 2 || q.i1 >= q.L)
    throw std::invalid_argument("spacing bound requires 2 <= i1 < L");
  if (!(q.t > 0.0)) throw std::invalid_argument("t must be positive");
  if (q.beta1 < 0 || q.beta1 > q.t * (q.i1 - 1))
    throw std::invalid_argument("spacing bound requires beta1 <= t (i1 - 1)");
  const double t = q.t;
  const double base = q.x * (q.i1 - 1) / double(q.L - 1) *
                      std::pow(1.0 + t, 1.0 + 1.0 / t) / std::numbers::e;
  return C * std::sqrt(1.0 + t) * std::pow(base, q.beta1);
}

double power_derivative(int N, double y, double s) {
  const double sh = std::sinh(y);
  const double ch = std::cosh(y);
  return std::pow(sh, s - 1.0) * std::pow(ch, N - s - 1.0) *
         (s * ch * ch + (N - s) * sh * sh);
}

bool monotone_derivative_check(int N, double y, std::span<const double> s_grid) {
  if (N < 7) throw std::domain_error("monotone check requires N >= 7");
  if (!(y > 0.0)) throw std::domain_error("monotone check requires y > 0");
  double previous = std::numeric_limits<double>::infinity();
  for (double s : s_grid) {
    if (!(s >= 1.0)) throw std::domain_error("grid points must be >= 1");
    const double value = power_derivative(N, y, s);
    // Relative slack absorbs rounding between nearly equal neighbours.
    if (value > previous * (1.0 + 1e-12)) return false;
    previous = value;
  }
  return true;
}

}  // namespace apl::analytic
