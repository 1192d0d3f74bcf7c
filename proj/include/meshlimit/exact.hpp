#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshlimit {

// Exact arithmetic used for all counts and closed forms. Counts near the
// enumeration cap exceed 64 bits (12! fits, but formula values are evaluated
// far beyond that), so everything value-like is arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an argument is outside a documented range guard (enumeration
// cap, streaming-evaluation bounds). Distinct from ParseError so the CLI can
// map the two to different exit codes.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Int factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  Int r = 1;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

// Zero outside 0 <= k <= n, matching the summation conventions of the
// closed forms (empty binomials vanish rather than erroring).
inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (int t = 1; t <= k; ++t) {
    r *= n - k + t;
    r /= t;  // exact at every step: r is C(n-k+t, t) here
  }
  return r;
}

inline Int exact_div(const Int& num, const Int& den) {
  Int q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("exact_div: inexact division");
  return q;
}

inline Int catalan(int n) {
  return exact_div(binomial(2 * n, n), Int(n + 1));
}

inline constexpr int kHarmonicExactCap = 10000;

// H_n as an exact rational. Denominators grow like lcm(1..n), hence the cap.
inline Rat harmonic_exact(int n) {
  if (n < 0) throw std::invalid_argument("harmonic_exact: negative argument");
  if (n > kHarmonicExactCap)
    throw RangeError("harmonic_exact: n exceeds exact cap " +
                     std::to_string(kHarmonicExactCap));
  Rat h = 0;
  for (int t = 1; t <= n; ++t) h += Rat(1, t);
  return h;
}

// Asymptotic expansion, absolute error below 1e-15 for n >= 100.
inline double harmonic_approx(int n) {
  if (n <= 0) throw std::invalid_argument("harmonic_approx: n must be positive");
  constexpr double kEulerGamma = 0.5772156649015328606;
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  return std::log(x) + kEulerGamma + 1.0 / (2 * x) - 1.0 / (12 * x2) +
         1.0 / (120 * x2 * x2);
}

}  // namespace meshlimit
