#pragma once

// Delivery arrays under the consecutive cyclic placement.
//
// With m = K - t + 1 and d = <j - k>_K, cell (j, k) is a star iff d > K - t.
// Non-star cells lie on "tracks" of constant d. When m | K (or K - t == 1)
// one K x K array suffices; otherwise every subfile is split into g_new
// packets and the array has g_new * K rows indexed (i, j).

#include <cstdint>
#include <string>
#include <vector>

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"
#include "cpda/params.hpp"
#include "cpda/pda.hpp"
#include "cpda/rational.hpp"

namespace cpda {

/// Packets per subfile for the split construction.
inline int g_new(int K, int t) {
  const int m = K - t + 1;
  const int n = K / m;
  return mod1(K, m) == K - t ? 2 * n + 1 : 2 * n;
}

/// Achievable rate as a function of (K, t).
inline Rational rate_closed_form(int K, int t) {
  switch (classify(K, t)) {
    case CaseKind::AllCached: return Rational(0);
    case CaseKind::Divisible:
      return Rational(static_cast<std::int64_t>(K - t) * (K - t + 1), 2 * K);
    case CaseKind::RemainderKmt:
    case CaseKind::Other: return Rational(K - t, g_new(K, t));
  }
  throw InvariantError("unreachable case");
}

/// Subpacketization matching rate_closed_form.
inline std::int64_t subpacketization_closed_form(int K, int t) {
  switch (classify(K, t)) {
    case CaseKind::AllCached:
    case CaseKind::Divisible: return K;
    case CaseKind::RemainderKmt:
    case CaseKind::Other: return static_cast<std::int64_t>(g_new(K, t)) * K;
  }
  throw InvariantError("unreachable case");
}

/// Coded caching gain every symbol of the built array attains.
inline int claimed_gain(int K, int t) {
  switch (classify(K, t)) {
    case CaseKind::AllCached: return 0;
    case CaseKind::Divisible: return 2 * K / (K - t + 1);
    case CaseKind::RemainderKmt:
    case CaseKind::Other: return g_new(K, t);
  }
  throw InvariantError("unreachable case");
}

/// K x K array for the Divisible case. Symbol (d', s) names track class d'
/// and position s along it.
inline Pda construction1(const SystemParams& p) {
  if (classify(p) != CaseKind::Divisible) {
    throw WrongCaseError("construction 1 needs (K-t+1) | K or K-t = 1, got case " +
                         std::string(to_string(classify(p))));
  }
  const int K = p.K;
  const int m = K - p.t + 1;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(K) * K);
  std::vector<RowIndex> rows;
  for (int j = 1; j <= K; ++j) {
    rows.push_back({0, j});
    for (int k = 1; k <= K; ++k) {
      const int d = mod1(j - k, K);
      if (d > K - p.t) {
        cells.push_back(Cell::star());
      } else if (2 * d < m) {
        cells.push_back(Cell::pair(d, mod1(k, m)));
      } else if (2 * d > m) {
        cells.push_back(Cell::pair(m - d, mod1(j, m)));
      } else {
        // the middle track exists only for odd K - t
        if (m % 2 != 0) throw InvariantError("middle track reached with even K-t+1");
        cells.push_back(Cell::pair(d, mod1(k, m / 2)));
      }
    }
  }
  return Pda(K, K, RowKind::Subfile, std::move(rows), std::move(cells),
             "construction1 case=Divisible");
}

/// g_new * K x K array for the RemainderKmt and Other cases. Odd packet
/// units use track d, even units the mirrored track m - d.
inline Pda construction2(const SystemParams& p) {
  const auto kind = classify(p);
  if (kind != CaseKind::RemainderKmt && kind != CaseKind::Other) {
    throw WrongCaseError("construction 2 needs (K-t+1) does not divide K and K-t > 1, got case " +
                         std::string(to_string(kind)));
  }
  const int K = p.K;
  const int t = p.t;
  const int m = K - t + 1;
  const int g = g_new(K, t);
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(g) * K * K);
  std::vector<RowIndex> rows;
  rows.reserve(static_cast<std::size_t>(g) * K);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= K; ++j) {
      rows.push_back({i, j});
      for (int k = 1; k <= K; ++k) {
        const int d = mod1(j - k, K);
        if (d > K - t) {
          cells.push_back(Cell::star());
        } else if (i % 2 == 1) {
          cells.push_back(Cell::pair(d, mod1(k - (i - 1) / 2 * m, K)));
        } else {
          cells.push_back(Cell::pair(m - d, mod1(j - i / 2 * m, K)));
        }
      }
    }
  }
  std::string provenance = "construction2 case=" + std::string(to_string(kind));
  if (t == 0) provenance += " t=0-extension";
  return Pda(K, g * K, RowKind::PacketSubfile, std::move(rows), std::move(cells),
             std::move(provenance));
}

/// Every user can read every subfile; nothing is sent.
inline Pda all_star_array(const SystemParams& p) {
  std::vector<RowIndex> rows;
  for (int j = 1; j <= p.K; ++j) rows.push_back({0, j});
  return Pda(p.K, p.K, RowKind::Subfile, std::move(rows),
             std::vector<Cell>(static_cast<std::size_t>(p.K) * p.K, Cell::star()),
             "all-star case=AllCached");
}

struct SchemeResult {
  Pda pda;
  int g_claimed = 0;
  Rational rate{0};
  std::int64_t subpacketization = 0;
  CaseKind kind = CaseKind::AllCached;
  PdaStats stats;

  /// e.g. "4-(10,10,6,10) PDA, R=1, F=10, case=Divisible"
  std::string summary() const {
    return stats.tuple() + " PDA, R=" + to_string(rate) +
           ", F=" + std::to_string(subpacketization) +
           ", case=" + std::string(to_string(kind));
  }
};

/// Builds the array for `p` and checks it against the closed forms. Any
/// disagreement throws InvariantError.
inline SchemeResult build_scheme(const SystemParams& p) {
  const auto kind = classify(p);
  Pda pda;
  switch (kind) {
    case CaseKind::AllCached: pda = all_star_array(p); break;
    case CaseKind::Divisible: pda = construction1(p); break;
    case CaseKind::RemainderKmt:
    case CaseKind::Other: pda = construction2(p); break;
  }
  SchemeResult result{std::move(pda), claimed_gain(p.K, p.t),
                      rate_closed_form(p.K, p.t),
                      subpacketization_closed_form(p.K, p.t), kind, {}};

  const auto checked = verify(result.pda);
  if (!checked) {
    throw InvariantError("constructed array is not a PDA: " + checked.violation().str());
  }
  result.stats = checked.stats();
  const auto& st = result.stats;
  if (!verify_against_placement(result.pda, p)) {
    throw InvariantError("constructed array breaks the cyclic star pattern");
  }
  if (st.rate != result.rate || st.F != result.subpacketization) {
    throw InvariantError("constructed array has R=" + to_string(st.rate) +
                         ", F=" + std::to_string(st.F) + "; closed form gives R=" +
                         to_string(result.rate) + ", F=" +
                         std::to_string(result.subpacketization));
  }
  if (st.S > 0 && (!st.regular || st.g_max != result.g_claimed)) {
    throw InvariantError("constructed array is not " +
                         std::to_string(result.g_claimed) + "-regular");
  }
  return result;
}

}  // namespace cpda
