#pragma once

// Upper bound on the gain of any single symbol in a PDA whose star pattern
// is the consecutive cyclic one, and the matching rate lower bound.

#include <cstdint>
#include <string>
#include <string_view>

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"
#include "cpda/rational.hpp"

namespace cpda {

enum class GainBranch {
  Even,       ///< g* = 2 floor(K/(K-t+1))
  Odd,        ///< g* = 2 floor(K/(K-t+1)) + 1
  AllCached,  ///< t == K, no symbols at all
};

inline std::string_view to_string(GainBranch b) {
  switch (b) {
    case GainBranch::Even: return "even";
    case GainBranch::Odd: return "odd";
    case GainBranch::AllCached: return "all-cached";
  }
  return "?";
}

struct GainBound {
  int g_star = 0;  ///< 0 when t == K
  Rational r_star{0};
  GainBranch branch = GainBranch::AllCached;
};

inline GainBound g_star(int K, int t) {
  if (K < 1 || t < 0 || t > K) {
    throw ParameterError("gain bound needs 0 <= t <= K, got K=" + std::to_string(K) +
                         ", t=" + std::to_string(t));
  }
  if (t == K) return GainBound{0, Rational(0), GainBranch::AllCached};
  const int m = K - t + 1;
  const int n = K / m;
  const bool even = mod1(K, m) <= (K - t) / 2 || K % m == 0;
  const int g = even ? 2 * n : 2 * n + 1;
  return GainBound{g, Rational(K - t, g), even ? GainBranch::Even : GainBranch::Odd};
}

/// (g - 2) K <= g (t - 1): necessary for a symbol to occur g times.
inline bool proposition1_holds(int K, int t, int g) {
  return static_cast<std::int64_t>(g - 2) * K <= static_cast<std::int64_t>(g) * (t - 1);
}

}  // namespace cpda
