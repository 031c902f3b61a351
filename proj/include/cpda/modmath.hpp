#pragma once

// 1-based cyclic arithmetic: <a>_q lives in [1:q], and [a:b]_q is the
// sequence <a>_q, <a+1>_q, ..., <b>_q.

#include <concepts>
#include <string>
#include <vector>

#include "cpda/errors.hpp"

namespace cpda {

/// <a>_q: q when q | a, otherwise the least positive residue of a mod q.
template <std::integral T>
constexpr T mod1(T a, T q) {
  if (q <= 0) {
    throw InvalidModulus("modulus must be positive, got " + std::to_string(q));
  }
  T r = a % q;
  if (r < 0) r += q;
  return r == 0 ? q : r;
}

/// [a:b]_q in order. Empty when b == a - 1.
template <std::integral T>
std::vector<T> cyclic_range(T a, T b, T q) {
  if (q <= 0) {
    throw InvalidModulus("modulus must be positive, got " + std::to_string(q));
  }
  if (b < a - 1) {
    throw InvalidRange("cyclic range [" + std::to_string(a) + ":" +
                       std::to_string(b) + "] has negative length");
  }
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(b - a + 1));
  for (T x = a; x <= b; ++x) out.push_back(mod1(x, q));
  return out;
}

/// A value of [1:q] together with its modulus.
template <std::integral T = int>
class CyclicIndex {
 public:
  constexpr CyclicIndex(T a, T q) : value_(mod1(a, q)), modulus_(q) {}

  constexpr T value() const noexcept { return value_; }
  constexpr T modulus() const noexcept { return modulus_; }

  constexpr CyclicIndex operator+(T delta) const {
    return CyclicIndex(value_ + delta, modulus_);
  }
  constexpr CyclicIndex operator-(T delta) const {
    return CyclicIndex(value_ - delta, modulus_);
  }

  friend constexpr bool operator==(const CyclicIndex&,
                                   const CyclicIndex&) = default;

 private:
  T value_;
  T modulus_;
};

}  // namespace cpda
