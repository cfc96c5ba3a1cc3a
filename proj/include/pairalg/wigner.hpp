#ifndef PAIRALG_WIGNER_HPP
#define PAIRALG_WIGNER_HPP

// Angular-momentum coupling coefficients in the Condon-Shortley convention.
// All routines are pure; the log-factorial table is built once and never
// mutated afterwards.

#include <algorithm>
#include <array>
#include <cmath>

#include "pairalg/half_int.hpp"

namespace pairalg {

namespace detail {

inline constexpr int kLogFactorialCap = 512;

inline const std::array<double, kLogFactorialCap>& log_factorial_table() {
  static const std::array<double, kLogFactorialCap> table = [] {
    std::array<double, kLogFactorialCap> t{};
    t[0] = 0.0;
    for (int i = 1; i < kLogFactorialCap; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

inline double log_factorial(int n) {
  if (n < kLogFactorialCap) return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// Half of a twice-value sum; callers guarantee evenness.
inline constexpr int halve(int twice_sum) { return twice_sum / 2; }

// log of the triangle coefficient
//   (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
inline double log_delta(HalfInt a, HalfInt b, HalfInt c) {
  const int A = a.twice(), B = b.twice(), C = c.twice();
  return log_factorial(halve(A + B - C)) + log_factorial(halve(A - B + C)) +
         log_factorial(halve(-A + B + C)) - log_factorial(halve(A + B + C) + 1);
}

}  // namespace detail

/// |a-b| <= c <= a+b with a+b+c integral.
inline bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int A = a.twice(), B = b.twice(), C = c.twice();
  if (A < 0 || B < 0 || C < 0) return false;
  if ((A + B + C) % 2 != 0) return false;
  return C >= std::abs(A - B) && C <= A + B;
}

/// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> by the Racah sum.
/// Invalid couplings yield zero.
inline double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  if (!valid_projection(j1, m1) || !valid_projection(j2, m2) || !valid_projection(J, M)) return 0.0;
  if (m1.twice() + m2.twice() != M.twice()) return 0.0;
  if (!triangle(j1, j2, J)) return 0.0;

  using detail::halve;
  using detail::log_factorial;
  const int tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tM = M.twice();

  const double log_pre =
      0.5 * (std::log(static_cast<double>(tJ + 1)) + detail::log_delta(j1, j2, J) +
             log_factorial(halve(tJ + tM)) + log_factorial(halve(tJ - tM)) +
             log_factorial(halve(tj1 - tm1)) + log_factorial(halve(tj1 + tm1)) +
             log_factorial(halve(tj2 - tm2)) + log_factorial(halve(tj2 + tm2)));

  // Denominator arguments: k, j1+j2-J-k, j1-m1-k, j2+m2-k, J-j2+m1+k, J-j1-m2+k.
  const int c1 = halve(tj1 + tj2 - tJ);
  const int c2 = halve(tj1 - tm1);
  const int c3 = halve(tj2 + tm2);
  const int c4 = halve(tJ - tj2 + tm1);
  const int c5 = halve(tJ - tj1 - tm2);
  const int kmin = std::max({0, -c4, -c5});
  const int kmax = std::min({c1, c2, c3});

  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_term = log_factorial(k) + log_factorial(c1 - k) + log_factorial(c2 - k) +
                            log_factorial(c3 - k) + log_factorial(c4 + k) + log_factorial(c5 + k);
    sum += phase(k) * std::exp(log_pre - log_term);
  }
  return sum;
}

/// Wigner 6j symbol {a b c; d e f} by the Racah single sum. Zero unless all
/// four triads (abc), (aef), (dbf), (dec) are valid.
inline double sixj(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return 0.0;

  using detail::halve;
  using detail::log_factorial;
  const int A = a.twice(), B = b.twice(), C = c.twice();
  const int D = d.twice(), E = e.twice(), F = f.twice();

  const double log_pre = 0.5 * (detail::log_delta(a, b, c) + detail::log_delta(a, e, f) +
                                detail::log_delta(d, b, f) + detail::log_delta(d, e, c));

  const int s1 = halve(A + B + C), s2 = halve(A + E + F), s3 = halve(D + B + F), s4 = halve(D + E + C);
  const int p1 = halve(A + B + D + E), p2 = halve(A + C + D + F), p3 = halve(B + C + E + F);
  const int tmin = std::max({s1, s2, s3, s4});
  const int tmax = std::min({p1, p2, p3});

  double sum = 0.0;
  for (int t = tmin; t <= tmax; ++t) {
    const double log_term = log_factorial(t + 1) - log_factorial(t - s1) - log_factorial(t - s2) -
                            log_factorial(t - s3) - log_factorial(t - s4) - log_factorial(p1 - t) -
                            log_factorial(p2 - t) - log_factorial(p3 - t);
    sum += phase(t) * std::exp(log_pre + log_term);
  }
  return sum;
}

/// The hat symbol sqrt(2j+1).
inline double hat(HalfInt j) { return std::sqrt(static_cast<double>(j.twice() + 1)); }

}  // namespace pairalg

#endif
