#pragma once

// Byte-level run of a PDA-based scheme on the cyclic multi-access network:
// files are split into F subpackets, cache nodes are filled by the cyclic
// placement, the server sends one XOR per symbol, and each user decodes
// using only the nodes it is connected to.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpda/constructions.hpp"
#include "cpda/errors.hpp"
#include "cpda/params.hpp"
#include "cpda/pda.hpp"
#include "cpda/placement.hpp"
#include "cpda/rational.hpp"

namespace cpda {

using Bytes = std::vector<std::uint8_t>;

inline void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// N files of F subpackets, B bytes each. Subpacket (n, r) is bytes
/// [(r-1)B, rB) of file n; r follows the PDA's row order.
class FileStore {
 public:
  FileStore(int F, std::size_t B, std::vector<Bytes> files)
      : F_(F), B_(B), files_(std::move(files)) {
    if (F_ < 1 || B_ == 0 || files_.empty()) {
      throw ParameterError("file store needs F >= 1, B >= 1 and at least one file");
    }
    for (const auto& f : files_) {
      if (f.size() != file_size()) {
        throw ParameterError("every file must hold exactly F*B = " +
                             std::to_string(file_size()) + " bytes");
      }
    }
  }

  /// Deterministic pseudo-random contents.
  static FileStore random(int N, int F, std::size_t B, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Bytes> files(static_cast<std::size_t>(N),
                             Bytes(static_cast<std::size_t>(F) * B));
    for (auto& f : files) {
      for (std::size_t i = 0; i < f.size(); i += 8) {
        std::uint64_t word = rng();
        for (std::size_t b = 0; b < 8 && i + b < f.size(); ++b) {
          f[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
        }
      }
    }
    return FileStore(F, B, std::move(files));
  }

  int N() const noexcept { return static_cast<int>(files_.size()); }
  int F() const noexcept { return F_; }
  std::size_t subpacket_size() const noexcept { return B_; }
  std::size_t file_size() const noexcept { return static_cast<std::size_t>(F_) * B_; }

  const Bytes& file(int n) const { return files_.at(static_cast<std::size_t>(n - 1)); }

  std::span<const std::uint8_t> subpacket(int n, int r) const {
    if (r < 1 || r > F_) throw ParameterError("subpacket row out of range");
    return std::span<const std::uint8_t>(file(n)).subspan(
        static_cast<std::size_t>(r - 1) * B_, B_);
  }

 private:
  int F_;
  std::size_t B_;
  std::vector<Bytes> files_;
};

/// Contents of every cache node, keyed by (file, row).
class NodeCaches {
 public:
  NodeCaches(int K, int N, int F, std::size_t B)
      : K_(K), N_(N), F_(F), B_(B),
        slots_(static_cast<std::size_t>(K) * N * F) {}

  bool holds(int node, int n, int r) const { return !slot(node, n, r).empty(); }

  std::span<const std::uint8_t> get(int node, int n, int r) const {
    return slot(node, n, r);
  }

  void put(int node, int n, int r, std::span<const std::uint8_t> data) {
    slot(node, n, r).assign(data.begin(), data.end());
  }

  std::size_t bytes_stored(int node) const {
    std::size_t total = 0;
    for (int n = 1; n <= N_; ++n) {
      for (int r = 1; r <= F_; ++r) total += slot(node, n, r).size();
    }
    return total;
  }

  std::size_t subpacket_size() const noexcept { return B_; }
  int N() const noexcept { return N_; }

 private:
  std::size_t index(int node, int n, int r) const {
    if (node < 1 || node > K_ || n < 1 || n > N_ || r < 1 || r > F_) {
      throw ParameterError("cache slot (node " + std::to_string(node) + ", file " +
                           std::to_string(n) + ", row " + std::to_string(r) +
                           ") out of range");
    }
    return (static_cast<std::size_t>(node - 1) * N_ + (n - 1)) * F_ + (r - 1);
  }
  const Bytes& slot(int node, int n, int r) const { return slots_[index(node, n, r)]; }
  Bytes& slot(int node, int n, int r) { return slots_[index(node, n, r)]; }

  int K_;
  int N_;
  int F_;
  std::size_t B_;
  std::vector<Bytes> slots_;
};

/// Symbols numbered 1..S in first-occurrence row-major order, with their
/// cells. symbol_at is 0 on stars.
struct SymbolIndex {
  int F = 0;
  int K = 0;
  std::vector<std::vector<std::pair<int, int>>> cells;  ///< (row, user)
  std::vector<int> symbol_at;

  int at(int r, int k) const {
    return symbol_at[static_cast<std::size_t>(r - 1) * K + (k - 1)];
  }
};

inline SymbolIndex index_symbols(const Pda& pda) {
  const Pda canon = canonicalize_symbols(pda);
  SymbolIndex idx{pda.F(), pda.K(), {}, std::vector<int>(canon.cells().size(), 0)};
  for (int r = 1; r <= canon.F(); ++r) {
    for (int k = 1; k <= canon.K(); ++k) {
      const Cell& c = canon(r, k);
      if (c.is_star()) continue;
      const int s = c.first();
      if (static_cast<std::size_t>(s) > idx.cells.size()) idx.cells.resize(s);
      idx.cells[s - 1].emplace_back(r, k);
      idx.symbol_at[static_cast<std::size_t>(r - 1) * idx.K + (k - 1)] = s;
    }
  }
  return idx;
}

/// Fills node k with every row whose subfile is in node_cache_contents(k).
inline NodeCaches place(const SystemParams& p, const Pda& pda, const FileStore& store) {
  if (pda.K() != p.K || store.F() != pda.F()) {
    throw ShapeError("array is " + std::to_string(pda.F()) + "x" + std::to_string(pda.K()) +
                     " but K=" + std::to_string(p.K) + ", store F=" +
                     std::to_string(store.F()));
  }
  NodeCaches caches(p.K, store.N(), store.F(), store.subpacket_size());
  for (int k = 1; k <= p.K; ++k) {
    std::vector<char> cached(static_cast<std::size_t>(p.K) + 1, 0);
    for (int j : node_cache_contents(p, k)) cached[j] = 1;
    for (int r = 1; r <= pda.F(); ++r) {
      if (!cached[pda.subfile_of(r)]) continue;
      for (int n = 1; n <= store.N(); ++n) caches.put(k, n, r, store.subpacket(n, r));
    }
  }
  return caches;
}

struct Message {
  int symbol = 0;
  Bytes payload;
  std::vector<std::pair<int, int>> served;  ///< (user, row)
};

struct DeliveryTranscript {
  std::vector<Message> messages;
  std::size_t bytes_sent = 0;
  std::size_t file_size = 0;

  /// Transmitted volume in units of one file.
  Rational load() const {
    return Rational(static_cast<std::int64_t>(bytes_sent),
                    static_cast<std::int64_t>(file_size));
  }

  /// JSON: one record per message, then totals.
  std::string dump() const {
    using nlohmann::json;
    std::ostringstream out;
    out << "{\n  \"messages\": [\n";
    for (std::size_t i = 0; i < messages.size(); ++i) {
      const auto& m = messages[i];
      json served = json::array();
      for (const auto& [user, row] : m.served) served.push_back({user, row});
      json rec = {{"symbol", m.symbol}, {"bytes", m.payload.size()}, {"served", served}};
      out << "    " << rec.dump() << (i + 1 < messages.size() ? ",\n" : "\n");
    }
    const auto l = load();
    json totals = {{"messages", messages.size()},
                   {"bytes_sent", bytes_sent},
                   {"file_size", file_size},
                   {"load_num", l.numerator()},
                   {"load_den", l.denominator()}};
    out << "  ],\n  \"totals\": " << totals.dump() << "\n}\n";
    return out.str();
  }
};

inline void check_demand(const std::vector<int>& demand, int K, int N) {
  if (demand.size() != static_cast<std::size_t>(K)) {
    throw ParameterError("demand has " + std::to_string(demand.size()) +
                         " entries, expected K=" + std::to_string(K));
  }
  for (int d : demand) {
    if (d < 1 || d > N) {
      throw ParameterError("demanded file " + std::to_string(d) + " outside [1:" +
                           std::to_string(N) + "]");
    }
  }
}

/// One message per symbol: XOR of W_{d_k, r} over the symbol's cells.
inline DeliveryTranscript deliver(const SystemParams& p, const SymbolIndex& idx,
                                  const FileStore& store, const std::vector<int>& demand) {
  check_demand(demand, p.K, store.N());
  DeliveryTranscript tr;
  tr.file_size = store.file_size();
  tr.messages.reserve(idx.cells.size());
  for (std::size_t s = 0; s < idx.cells.size(); ++s) {
    Message m{static_cast<int>(s) + 1, Bytes(store.subpacket_size(), 0), {}};
    for (const auto& [r, k] : idx.cells[s]) {
      xor_into(m.payload, store.subpacket(demand[k - 1], r));
      m.served.emplace_back(k, r);
    }
    tr.bytes_sent += m.payload.size();
    tr.messages.push_back(std::move(m));
  }
  return tr;
}

inline DeliveryTranscript deliver(const SystemParams& p, const Pda& pda,
                                  const FileStore& store, const std::vector<int>& demand) {
  return deliver(p, index_symbols(pda), store, demand);
}

namespace detail {

inline std::span<const std::uint8_t> fetch(const SystemParams& p, const NodeCaches& caches,
                                           int user, int n, int r) {
  for (int node : accessible_nodes(p, user)) {
    if (caches.holds(node, n, r)) return caches.get(node, n, r);
  }
  return {};
}

}  // namespace detail

/// Rebuilds file d_k for user k from its nodes and the broadcast. Throws
/// DecodeError naming the row (and symbol) it could not resolve.
inline Bytes decode(const SystemParams& p, const Pda& pda, const SymbolIndex& idx,
                    const NodeCaches& caches, const DeliveryTranscript& tr, int user,
                    const std::vector<int>& demand) {
  check_demand(demand, p.K, caches.N());
  const std::size_t B = caches.subpacket_size();
  Bytes out(static_cast<std::size_t>(pda.F()) * B);
  const int want = demand[user - 1];
  for (int r = 1; r <= pda.F(); ++r) {
    auto dst = std::span<std::uint8_t>(out).subspan(static_cast<std::size_t>(r - 1) * B, B);
    const int s = idx.at(r, user);
    if (s == 0) {
      const auto local = detail::fetch(p, caches, user, want, r);
      if (local.empty()) {
        throw DecodeError("user " + std::to_string(user) + " row " + std::to_string(r) +
                              ": star cell but no connected node holds the subpacket",
                          r, 0);
      }
      std::copy(local.begin(), local.end(), dst.begin());
      continue;
    }
    if (static_cast<std::size_t>(s) > tr.messages.size() ||
        tr.messages[s - 1].symbol != s) {
      throw DecodeError("user " + std::to_string(user) + " row " + std::to_string(r) +
                            ": no message for symbol " + std::to_string(s),
                        r, s);
    }
    const auto& payload = tr.messages[s - 1].payload;
    std::copy(payload.begin(), payload.end(), dst.begin());
    for (const auto& [r2, k2] : idx.cells[s - 1]) {
      if (r2 == r && k2 == user) continue;
      const auto side = detail::fetch(p, caches, user, demand[k2 - 1], r2);
      if (side.empty()) {
        throw DecodeError("user " + std::to_string(user) + " row " + std::to_string(r) +
                              ": symbol " + std::to_string(s) + " needs row " +
                              std::to_string(r2) + " of file " +
                              std::to_string(demand[k2 - 1]) + ", not on a connected node",
                          r, s);
      }
      xor_into(dst, side);
    }
  }
  return out;
}

inline Bytes decode(const SystemParams& p, const Pda& pda, const NodeCaches& caches,
                    const DeliveryTranscript& tr, int user, const std::vector<int>& demand) {
  return decode(p, pda, index_symbols(pda), caches, tr, user, demand);
}

// --- demand presets -------------------------------------------------------

/// All distinct when N >= K, otherwise files 1..N round-robin.
inline std::vector<int> worst_case_demand(int K, int N) {
  std::vector<int> d(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) d[k - 1] = mod1(k, N);
  return d;
}

inline std::vector<int> equal_demand(int K, int file = 1) {
  return std::vector<int>(static_cast<std::size_t>(K), file);
}

inline std::vector<int> random_demand(int K, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> d(static_cast<std::size_t>(K));
  for (auto& x : d) x = static_cast<int>(rng() % static_cast<std::uint64_t>(N)) + 1;
  return d;
}

// --- end-to-end -----------------------------------------------------------

struct SimulationReport {
  int users_decoded = 0;
  std::vector<std::string> failures;
  std::size_t messages = 0;
  std::size_t bytes_sent = 0;
  std::size_t file_size = 0;
  Rational load{0};
  std::size_t max_node_bytes = 0;
  std::size_t library_bytes = 0;

  bool all_decoded() const noexcept { return failures.empty(); }
};

/// Places, delivers and decodes at every user; compares each decoded file
/// with the original.
inline SimulationReport run_delivery(const SystemParams& p, const Pda& pda,
                                     const SymbolIndex& idx, const FileStore& store,
                                     const NodeCaches& caches, const std::vector<int>& demand) {
  const auto tr = deliver(p, idx, store, demand);
  SimulationReport rep;
  rep.messages = tr.messages.size();
  rep.bytes_sent = tr.bytes_sent;
  rep.file_size = tr.file_size;
  rep.load = tr.load();
  rep.library_bytes = store.file_size() * static_cast<std::size_t>(store.N());
  for (int k = 1; k <= p.K; ++k) {
    rep.max_node_bytes = std::max(rep.max_node_bytes, caches.bytes_stored(k));
  }
  for (int k = 1; k <= p.K; ++k) {
    try {
      if (decode(p, pda, idx, caches, tr, k, demand) == store.file(demand[k - 1])) {
        ++rep.users_decoded;
      } else {
        rep.failures.push_back("user " + std::to_string(k) + ": decoded bytes differ");
      }
    } catch (const DecodeError& e) {
      rep.failures.push_back(e.what());
    }
  }
  return rep;
}

inline SimulationReport simulate(const SystemParams& p, std::size_t B,
                                 const std::vector<int>& demand, std::uint64_t seed) {
  const auto scheme = build_scheme(p);
  const auto idx = index_symbols(scheme.pda);
  const auto store = FileStore::random(p.N, scheme.pda.F(), B, seed);
  const auto caches = place(p, scheme.pda, store);
  return run_delivery(p, scheme.pda, idx, store, caches, demand);
}

}  // namespace cpda
