#pragma once

#include <string>
#include <string_view>

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"

namespace cpda {

/// (K, L, gamma) of the cyclic multi-access system. Cache nodes hold
/// M = gamma * N / K files each; user k reads nodes k, ..., k + L - 1.
struct SystemParams {
  int K = 1;
  int L = 1;
  int gamma = 0;
  int t = 0;  ///< gamma * L: number of users that can retrieve one subfile.
  int N = 1;  ///< number of files, simulation only.

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Which delivery array the parameters call for.
enum class CaseKind {
  AllCached,     ///< t == K
  Divisible,     ///< (K-t+1) | K or K-t == 1
  RemainderKmt,  ///< <K>_{K-t+1} == K-t and K-t > 1
  Other,
};

inline std::string_view to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::AllCached: return "AllCached";
    case CaseKind::Divisible: return "Divisible";
    case CaseKind::RemainderKmt: return "RemainderKmt";
    case CaseKind::Other: return "Other";
  }
  return "?";
}

/// N == 0 means "use N = K".
inline SystemParams validate(int K, int L, int gamma, int N = 0) {
  if (N == 0) N = K;
  if (K < 1) throw ParameterError("K=" + std::to_string(K) + " must be >= 1");
  if (L < 1) throw ParameterError("L=" + std::to_string(L) + " must be >= 1");
  if (L > K) {
    throw ParameterError("L=" + std::to_string(L) + " exceeds K=" +
                         std::to_string(K));
  }
  if (gamma < 0) {
    throw ParameterError("gamma=" + std::to_string(gamma) + " must be >= 0");
  }
  if (gamma > K / L) {
    throw ParameterError("gamma=" + std::to_string(gamma) +
                         " exceeds floor(K/L)=" + std::to_string(K / L));
  }
  if (N < 1) throw ParameterError("N=" + std::to_string(N) + " must be >= 1");
  return SystemParams{K, L, gamma, gamma * L, N};
}

/// Case split on (K, t) alone; the array depends on L only through t.
inline CaseKind classify(int K, int t) {
  if (t == K) return CaseKind::AllCached;
  const int m = K - t + 1;
  if (K % m == 0 || K - t == 1) return CaseKind::Divisible;
  if (mod1(K, m) == K - t) return CaseKind::RemainderKmt;
  return CaseKind::Other;
}

inline CaseKind classify(const SystemParams& p) { return classify(p.K, p.t); }

}  // namespace cpda
