#pragma once

// Number types shared by the closed-form algebra. Every formula that the
// construction produces is written once as a template over the scalar type
// and instantiated with `double` for numerics and `Rational` for exact
// checks.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "qes/error.hpp"

namespace qes {

using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>,
    boost::multiprecision::et_off>;

template <class T>
T ratio(long long num, long long den = 1) {
  return T(num) / T(den);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline double scalar_sqrt(double x) { return std::sqrt(x); }

/// Exact square root; throws IrrationalSqrt unless numerator and
/// denominator are both perfect squares.
inline Rational scalar_sqrt(const Rational& q) {
  if (q < 0) {
    throw Error(ErrorCode::InvalidParameter, "square root of a negative rational");
  }
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt rn = boost::multiprecision::sqrt(num);
  BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) {
    throw Error(ErrorCode::IrrationalSqrt,
                "square root of " + q.str() + " is not rational");
  }
  return Rational(rn) / Rational(rd);
}

inline double scalar_abs(double x) { return std::fabs(x); }
inline Rational scalar_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
inline bool is_zero(const Rational& q, double /*tol*/) { return q == 0; }

inline std::string to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
inline std::string to_string(const Rational& q) { return q.str(); }

/// Binomial coefficient C(n, k); n is limited to 61 so the value fits in
/// 64 bits (C(61, 30) < 2^58).
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 61) {
    throw Error(ErrorCode::InvalidOrder, "binomial order out of range: " + std::to_string(n));
  }
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

template <class T>
T binomial_as(int n, int k) {
  return T(binomial(n, k));
}

}  // namespace qes
