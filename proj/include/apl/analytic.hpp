#pragma once

// Closed-form quantities for accessibility percolation on the hypercube:
// the threshold function f, its root x0 and the critical gap x_c(N), the
// parity-constrained path counts M(n, l) and their exponential generating
// functions, odd-occurrence probabilities, and order-statistic moments.
//
// Everything here is a pure function of its arguments.

#include <cstdint>
#include <span>
#include <stdexcept>

namespace apl::analytic {

using BigCount = unsigned __int128;

/// Threshold and tolerance constants for a fixed odd fraction beta.
struct PhaseConstants {
  double beta = 1.0;
  double x0 = 0.0;          // root of f(x) = 1
  double f_prime_x0 = 0.0;  // beta coth x0 + (1 - beta) tanh x0
  double alpha = 0.0;       // x0 coth x0
  double gamma = 0.0;       // x0 f'(x0)
  double epsilon = 0.0;
  double epsilon1 = 0.0;  // eps^(1/2)
  double epsilon2 = 0.0;  // eps^(1/4)
  double epsilon3 = 0.0;  // eps^(1/8)
  double epsilon4 = 0.0;  // eps^(1/8)
  double delta = 0.0;     // first-block update fraction bound
};

/// Coordinate parity class of an update count.
enum class Parity { odd, even };

/// f(x) = (sinh x)^beta (cosh x)^(1 - beta). Throws std::domain_error for
/// x <= 0 or beta outside (0, 1].
double eval_f(double x, double beta);

/// f'(x) = (beta coth x + (1 - beta) tanh x) f(x).
double eval_f_prime(double x, double beta);

/// Root of f(x) = 1 on (1e-6, 3]: bisection down to a narrow bracket, then
/// Newton polish. Returns x with |f(x) - 1| <= tol. Throws
/// std::runtime_error if the iteration cap is hit first.
double solve_x0(double beta, double tol = 1e-12);

/// x_c(N) = x0 - ln(N) / (N f'(x0)).
double critical_x(int N, double beta);

PhaseConstants make_constants(double beta, double epsilon = 0.05);

/// Sum_l M(n, l) x^l / l! = (sinh x)^n (cosh x)^(N - n).
double m_series_sum(int n, int N, double x);

/// Exact M(n, l): number of sequences in {0..N-1}^l in which each of the
/// coordinates 0..n-1 occurs an odd number of times and every other
/// coordinate an even number of times. Throws std::overflow_error when the
/// count does not fit in 64 bits; use m_coefficient_wide then.
std::uint64_t m_coefficient(int n, int N, int ell);

/// 128-bit variant of m_coefficient; throws std::overflow_error past 2^128.
BigCount m_coefficient_wide(int n, int N, int ell);

/// Sum_l M(n, l) x^(l-1) / (l-1)!, i.e. the x-derivative of m_series_sum:
/// (sinh x)^(n-1) (cosh x)^(N-n-1) (n cosh^2 x + (N - n) sinh^2 x).
/// Upper bound on the expected number of accessible paths. Requires n >= 1.
double first_moment_upper(int n, int N, double x);

/// x^(l-1) / (l-1)!: probability that a fixed path of length l is open.
double path_open_probability(int ell, double x);

/// Probability that a coordinate is odd at time t in the continuous model.
/// Parity::odd: coordinate with odd total count, sinh(xt) cosh(x(1-t)) / sinh x.
/// Parity::even: coordinate with even total count, sinh(xt) sinh(x(1-t)) / cosh x.
double p_odd(double t, double x, Parity parity);

/// Expected fraction of coordinates that are odd at time t:
/// beta p_odd(t, x0, odd) + (1 - beta) p_odd(t, x0, even).
double g_profile(double t, const PhaseConstants& constants);

struct SpacingQuery {
  int L = 2;        // path length; L - 1 interior uniforms
  int i1 = 1;       // order statistic index, 1 <= i1 < L
  int beta1 = 0;    // moment order
  double x = 1.0;   // gap
  double t = 1.0;   // moment-to-index ratio bound (bound only)
};

/// E[(X_(i1))^beta1] for the i1-th order statistic of L - 1 uniforms on
/// [0, x]: x^b Gamma(L) Gamma(i1 + b) / (Gamma(L + b) Gamma(i1)), in log space.
double spacing_moment_exact(const SpacingQuery& q);

/// C sqrt(1+t) (x (i1-1)/(L-1) (1+t)^(1+1/t) / e)^beta1. Requires i1 >= 2
/// and beta1 <= t (i1 - 1); throws std::invalid_argument otherwise.
double spacing_moment_bound(const SpacingQuery& q, double C = 3.0);

/// d/dy [(sinh y)^s (cosh y)^(N-s)] at real s.
double power_derivative(int N, double y, double s);

/// True iff power_derivative(N, y, s) is nonincreasing along s_grid.
bool monotone_derivative_check(int N, double y, std::span<const double> s_grid);

}  // namespace apl::analytic
