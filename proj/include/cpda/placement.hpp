#pragma once

// Consecutive cyclic placement. Subfile j of every file is stored at nodes
// <j + iL - 1>_K for i in [1:gamma], so users j, ..., j + t - 1 can read it.

#include <string>
#include <vector>

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"
#include "cpda/params.hpp"

namespace cpda {

/// True iff user k can retrieve subfile j: <j - k>_K > K - t.
inline bool is_retrievable(int K, int t, int j, int k) {
  return mod1(j - k, K) > K - t;
}

/// Square boolean grid with 1-based (row, column) access.
class BoolGrid {
 public:
  explicit BoolGrid(int n = 0) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const noexcept { return n_; }
  bool at(int row, int col) const { return cells_[index(row, col)] != 0; }
  void set(int row, int col, bool v) { cells_[index(row, col)] = v ? 1 : 0; }

  int column_count(int col) const {
    int c = 0;
    for (int r = 1; r <= n_; ++r) c += at(r, col) ? 1 : 0;
    return c;
  }
  int row_count(int row) const {
    int c = 0;
    for (int k = 1; k <= n_; ++k) c += at(row, k) ? 1 : 0;
    return c;
  }

  friend bool operator==(const BoolGrid&, const BoolGrid&) = default;

 private:
  std::size_t index(int row, int col) const {
    if (row < 1 || row > n_ || col < 1 || col > n_) {
      throw ShapeError("grid index (" + std::to_string(row) + "," +
                       std::to_string(col) + ") outside [1:" +
                       std::to_string(n_) + "]");
    }
    return static_cast<std::size_t>(row - 1) * n_ + (col - 1);
  }

  int n_;
  std::vector<char> cells_;
};

/// Rows are subfiles, columns are nodes (C) or users (U).
struct PlacementArrays {
  int K = 0;
  int t = 0;
  BoolGrid node_array;
  BoolGrid user_array;
};

/// Subfile indices cached at node k, in order i = 1..gamma.
inline std::vector<int> node_cache_contents(const SystemParams& p, int k) {
  if (k < 1 || k > p.K) {
    throw ParameterError("node index k=" + std::to_string(k) +
                         " outside [1:" + std::to_string(p.K) + "]");
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p.gamma));
  for (int i = 1; i <= p.gamma; ++i) out.push_back(mod1(k - i * p.L + 1, p.K));
  return out;
}

/// Nodes user k is connected to.
inline std::vector<int> accessible_nodes(const SystemParams& p, int k) {
  if (k < 1 || k > p.K) {
    throw ParameterError("user index k=" + std::to_string(k) +
                         " outside [1:" + std::to_string(p.K) + "]");
  }
  return cyclic_range(k, k + p.L - 1, p.K);
}

/// Builds C from node contents and U by OR-ing each user's accessible
/// columns of C. U is cross-checked against the closed-form star rule.
inline PlacementArrays build_placement_arrays(const SystemParams& p) {
  PlacementArrays arrays{p.K, p.t, BoolGrid(p.K), BoolGrid(p.K)};
  for (int k = 1; k <= p.K; ++k) {
    for (int j : node_cache_contents(p, k)) arrays.node_array.set(j, k, true);
  }
  for (int k = 1; k <= p.K; ++k) {
    const auto nodes = accessible_nodes(p, k);
    for (int j = 1; j <= p.K; ++j) {
      bool any = false;
      for (int node : nodes) any = any || arrays.node_array.at(j, node);
      arrays.user_array.set(j, k, any);
    }
  }
  for (int j = 1; j <= p.K; ++j) {
    for (int k = 1; k <= p.K; ++k) {
      if (arrays.user_array.at(j, k) != is_retrievable(p.K, p.t, j, k)) {
        throw InvariantError("user-retrieve array disagrees with star rule at (" +
                             std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
  }
  return arrays;
}

/// Every window of L consecutive nodes holds pairwise disjoint subfiles,
/// so each user reaches gamma * L distinct subfiles.
inline bool check_local_gain(const SystemParams& p) {
  for (int k = 1; k <= p.K; ++k) {
    std::vector<char> seen(static_cast<std::size_t>(p.K) + 1, 0);
    int distinct = 0;
    for (int node : accessible_nodes(p, k)) {
      for (int j : node_cache_contents(p, node)) {
        if (seen[j]) return false;
        seen[j] = 1;
        ++distinct;
      }
    }
    if (distinct != p.t) return false;
  }
  return true;
}

/// '*' for true, '.' for false; rows top to bottom, one line per row.
inline std::string render_grid(const BoolGrid& grid) {
  std::string out;
  for (int r = 1; r <= grid.size(); ++r) {
    for (int c = 1; c <= grid.size(); ++c) {
      if (c > 1) out += ' ';
      out += grid.at(r, c) ? '*' : '.';
    }
    out += '\n';
  }
  return out;
}

}  // namespace cpda
