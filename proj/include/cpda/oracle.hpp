#pragma once

// Independent checks that share no code path with the constructions or the
// grouped verifier.
//
// max_single_symbol_gain searches the K x K cyclic star pattern for the
// largest set of cells one symbol could occupy: distinct rows and columns,
// all non-star, every cross cell a star. Rows of split arrays that share a
// subfile share a star pattern and can never carry the same symbol, so
// this bounds every PDA under the placement.

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"
#include "cpda/pda.hpp"

namespace cpda {

struct SearchLimits {
  int max_K = 16;
  std::uint64_t max_nodes = 4'000'000'000ULL;
};

/// Environment variable that raises SearchLimits::max_K for the CLI.
inline constexpr const char* kOracleMaxKEnv = "CPDA_ORACLE_MAX_K";

struct GainSearchResult {
  int K = 0;
  int t = 0;
  int g_max = 0;
  /// (row j, column k), 1-based.
  std::vector<std::pair<int, int>> witness;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool any_and(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & o.words_[w]) return true;
    }
    return false;
  }

  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }

  /// Lowest set index >= from, or npos.
  std::size_t next(std::size_t from) const {
    std::size_t w = from / 64;
    if (w >= words_.size()) return npos;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (word) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      if (++w == words_.size()) return npos;
      word = words_[w];
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

class GainSearch {
 public:
  GainSearch(int K, int t, std::uint64_t max_nodes)
      : K_(K), t_(t), max_nodes_(max_nodes) {
    // non-star cells ordered by column, then row
    for (int k = 1; k <= K; ++k) {
      for (int j = 1; j <= K; ++j) {
        if (mod1(j - k, K) <= K - t) cells_.emplace_back(j, k);
      }
    }
    const std::size_t n = cells_.size();
    compat_.assign(n, Bits(n));
    after_.assign(n, Bits(n));
    column_mask_.assign(static_cast<std::size_t>(K) + 1, Bits(n));
    for (std::size_t a = 0; a < n; ++a) {
      column_mask_[cells_[a].second].set(a);
      for (std::size_t b = a + 1; b < n; ++b) after_[a].set(b);
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && compatible(cells_[a], cells_[b])) compat_[a].set(b);
      }
    }
  }

  GainSearchResult run() {
    GainSearchResult result{K_, t_, 0, {}, 0};
    // Cyclic shifts of (j, k) preserve the pattern, so some cell of an
    // optimal set can be moved to column 1.
    for (std::size_t a = 0; a < cells_.size() && cells_[a].second == 1; ++a) {
      chosen_ = {a};
      if (best_.empty()) best_ = chosen_;
      expand(compat_[a] & after_[a]);
    }
    result.g_max = static_cast<int>(best_.size());
    for (auto idx : best_) result.witness.push_back(cells_[idx]);
    result.nodes_explored = nodes_;
    return result;
  }

 private:
  bool compatible(std::pair<int, int> u, std::pair<int, int> v) const {
    return u.first != v.first && u.second != v.second &&
           mod1(v.first - u.second, K_) > K_ - t_ &&
           mod1(u.first - v.second, K_) > K_ - t_;
  }

  int columns_left(const Bits& cand, std::size_t from) const {
    int count = 0;
    const int first_col = cells_[from].second;
    for (int k = first_col; k <= K_; ++k) {
      if (cand.any_and(column_mask_[k])) ++count;
    }
    return count;
  }

  void expand(const Bits& cand) {
    if (++nodes_ > max_nodes_) {
      throw ResourceGuardError("gain search exceeded " + std::to_string(max_nodes_) +
                               " nodes");
    }
    for (std::size_t c = cand.next(0); c != Bits::npos; c = cand.next(c + 1)) {
      if (chosen_.size() + static_cast<std::size_t>(columns_left(cand, c)) <=
          best_.size()) {
        return;
      }
      chosen_.push_back(c);
      if (chosen_.size() > best_.size()) best_ = chosen_;
      expand(cand & compat_[c] & after_[c]);
      chosen_.pop_back();
    }
  }

  int K_;
  int t_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::pair<int, int>> cells_;
  std::vector<Bits> compat_;
  std::vector<Bits> after_;
  std::vector<Bits> column_mask_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

/// Exact maximum multiplicity of one symbol under the cyclic star pattern.
inline GainSearchResult max_single_symbol_gain(int K, int t, SearchLimits limits = {}) {
  if (K < 1 || t < 0 || t >= K) {
    throw ParameterError("gain search needs 0 <= t < K, got K=" + std::to_string(K) +
                         ", t=" + std::to_string(t));
  }
  if (K > limits.max_K) {
    throw ResourceGuardError("K=" + std::to_string(K) + " exceeds the search cap " +
                             std::to_string(limits.max_K) + "; raise it with " +
                             kOracleMaxKEnv + " or an explicit override");
  }
  return detail::GainSearch(K, t, limits.max_nodes).run();
}

/// Direct check of a witness: distinct rows and columns, non-star cells,
/// star at every cross position.
inline bool witness_is_valid(int K, int t, const std::vector<std::pair<int, int>>& cells) {
  for (std::size_t u = 0; u < cells.size(); ++u) {
    const auto [ju, ku] = cells[u];
    if (mod1(ju - ku, K) > K - t) return false;
    for (std::size_t v = 0; v < cells.size(); ++v) {
      if (u == v) continue;
      const auto [jv, kv] = cells[v];
      if (ju == jv || ku == kv) return false;
      if (mod1(jv - ku, K) <= K - t) return false;
    }
  }
  return true;
}

/// Each column k_u lies in the retrieval window [j_v : j_v + t - 1]_K of
/// every other row j_v.
inline bool witness_in_intersection_form(int K, int t,
                                         const std::vector<std::pair<int, int>>& cells) {
  for (std::size_t u = 0; u < cells.size(); ++u) {
    const int ku = cells[u].second;
    for (std::size_t v = 0; v < cells.size(); ++v) {
      if (u == v) continue;
      const int jv = cells[v].first;
      const auto window = cyclic_range(jv, jv + t - 1, K);
      bool inside = false;
      for (int x : window) inside = inside || x == ku;
      if (!inside) return false;
    }
  }
  return true;
}

/// C1-C3 by brute force over all cell pairs.
inline bool naive_pda_check(const Pda& pda) {
  const int F = pda.F();
  const int K = pda.K();
  int first_column_stars = -1;
  for (int k = 1; k <= K; ++k) {
    int stars = 0;
    for (int r = 1; r <= F; ++r) stars += pda(r, k).is_star() ? 1 : 0;
    if (first_column_stars < 0) first_column_stars = stars;
    if (stars != first_column_stars) return false;
  }

  int integers = 0;
  int pairs = 0;
  int max_integer = 0;
  for (const auto& c : pda.cells()) {
    if (c.kind() == Cell::Kind::Integer) {
      ++integers;
      if (c.first() < 1) return false;
      max_integer = std::max(max_integer, c.first());
    } else if (c.kind() == Cell::Kind::Pair) {
      ++pairs;
    }
  }
  if (integers > 0 && pairs > 0) return false;
  for (int s = 1; s <= max_integer; ++s) {
    bool found = false;
    for (const auto& c : pda.cells()) {
      if (c.kind() == Cell::Kind::Integer && c.first() == s) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }

  // every unordered pair of cells, flat row-major indices a < b
  const auto& cells = pda.cells();
  const std::size_t n = cells.size();
  const auto at = [&](int r, int k) -> const Cell& {
    return cells[static_cast<std::size_t>(r) * K + k];
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (cells[a].is_star()) continue;
    const int r1 = static_cast<int>(a) / K;
    const int k1 = static_cast<int>(a) % K;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (cells[b] != cells[a]) continue;
      const int r2 = static_cast<int>(b) / K;
      const int k2 = static_cast<int>(b) % K;
      if (r1 == r2 || k1 == k2) return false;
      if (!at(r1, k2).is_star() || !at(r2, k1).is_star()) return false;
    }
  }
  return true;
}

}  // namespace cpda
