#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace cpda {

/// Exact rates and memory ratios. Values here stay far below 2^63.
using Rational = boost::rational<std::int64_t>;

/// Subpacketizations of exponential schemes.
using BigInt = boost::multiprecision::cpp_int;

/// "3/2", or "1" for integers.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace cpda
