#pragma once

// Placement delivery arrays: an F x K grid of stars and symbols. Column k is
// user k, row r is packet r. A star means user k can read packet r from its
// caches; equal symbols are served by one XOR multicast.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cpda/errors.hpp"
#include "cpda/params.hpp"
#include "cpda/placement.hpp"
#include "cpda/rational.hpp"

namespace cpda {

/// A star, a plain integer symbol, or a two-component vector symbol.
class Cell {
 public:
  enum class Kind : std::uint8_t { Star, Integer, Pair };

  constexpr Cell() = default;

  static constexpr Cell star() { return Cell(); }
  static constexpr Cell integer(int s) { return Cell(Kind::Integer, s, 0); }
  static constexpr Cell pair(int a, int b) { return Cell(Kind::Pair, a, b); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_star() const noexcept { return kind_ == Kind::Star; }
  constexpr int first() const noexcept { return first_; }
  constexpr int second() const noexcept { return second_; }

  std::string str() const {
    switch (kind_) {
      case Kind::Star: return "*";
      case Kind::Integer: return std::to_string(first_);
      case Kind::Pair:
        return std::to_string(first_) + "," + std::to_string(second_);
    }
    return "?";
  }

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

 private:
  constexpr Cell(Kind kind, int a, int b) : kind_(kind), first_(a), second_(b) {}

  Kind kind_ = Kind::Star;
  int first_ = 0;
  int second_ = 0;
};

/// How rows are labelled. Constructions label rows by subfile j or by
/// packet-of-subfile (i, j); arrays read from a bare grid carry no labels.
enum class RowKind { None, Subfile, PacketSubfile };

struct RowIndex {
  int packet = 0;  ///< i, unused for RowKind::Subfile
  int subfile = 0;  ///< j

  friend constexpr auto operator<=>(const RowIndex&, const RowIndex&) = default;
};

class Pda {
 public:
  Pda() = default;

  /// `cells` is row-major, F * K entries. `rows` is empty for RowKind::None.
  Pda(int K, int F, RowKind row_kind, std::vector<RowIndex> rows,
      std::vector<Cell> cells, std::string provenance = {})
      : K_(K),
        F_(F),
        row_kind_(row_kind),
        rows_(std::move(rows)),
        cells_(std::move(cells)),
        provenance_(std::move(provenance)) {
    if (K_ < 1 || F_ < 1) throw ShapeError("array must have at least one row and column");
    if (cells_.size() != static_cast<std::size_t>(K_) * F_) {
      throw ShapeError("expected " + std::to_string(K_ * F_) + " cells, got " +
                       std::to_string(cells_.size()));
    }
    if (row_kind_ == RowKind::None) {
      if (!rows_.empty()) throw ShapeError("unlabelled array carries row indices");
    } else {
      if (rows_.size() != static_cast<std::size_t>(F_)) {
        throw ShapeError("expected " + std::to_string(F_) + " row indices, got " +
                         std::to_string(rows_.size()));
      }
      std::set<RowIndex> seen;
      for (const auto& idx : rows_) {
        if (row_kind_ == RowKind::Subfile && idx.packet != 0) {
          throw ShapeError("subfile-labelled row carries a packet index");
        }
        if (!seen.insert(idx).second) {
          throw ShapeError("duplicate row index (" + std::to_string(idx.packet) +
                           "," + std::to_string(idx.subfile) + ")");
        }
      }
    }
  }

  int K() const noexcept { return K_; }
  int F() const noexcept { return F_; }
  RowKind row_kind() const noexcept { return row_kind_; }
  const std::vector<RowIndex>& row_indices() const noexcept { return rows_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// Cell at row position r in [1:F], column k in [1:K].
  const Cell& operator()(int r, int k) const { return cells_[offset(r, k)]; }

  /// Row position of a labelled row, if present.
  std::optional<int> find_row(RowIndex idx) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r] == idx) return static_cast<int>(r) + 1;
    }
    return std::nullopt;
  }

  /// Cell addressed by row label, e.g. P((2,2),1).
  const Cell& at(RowIndex idx, int k) const {
    const auto r = find_row(idx);
    if (!r) {
      throw ShapeError("no row (" + std::to_string(idx.packet) + "," +
                       std::to_string(idx.subfile) + ")");
    }
    return (*this)(*r, k);
  }

  /// Subfile index of row position r. Throws for unlabelled arrays.
  int subfile_of(int r) const {
    if (row_kind_ == RowKind::None) {
      throw ShapeError("array rows carry no subfile index");
    }
    return rows_.at(static_cast<std::size_t>(r - 1)).subfile;
  }

  Pda with_cell(int r, int k, Cell c) const {
    Pda copy = *this;
    copy.cells_[offset(r, k)] = c;
    return copy;
  }

  Pda with_cells(std::vector<Cell> cells, std::string provenance) const {
    return Pda(K_, F_, row_kind_, rows_, std::move(cells), std::move(provenance));
  }

  /// Same grid, relabelled rows.
  Pda with_rows(RowKind kind, std::vector<RowIndex> rows) const {
    return Pda(K_, F_, kind, std::move(rows), cells_, provenance_);
  }

  friend bool operator==(const Pda&, const Pda&) = default;

 private:
  std::size_t offset(int r, int k) const {
    if (r < 1 || r > F_ || k < 1 || k > K_) {
      throw ShapeError("cell (" + std::to_string(r) + "," + std::to_string(k) +
                       ") outside " + std::to_string(F_) + "x" + std::to_string(K_));
    }
    return static_cast<std::size_t>(r - 1) * K_ + (k - 1);
  }

  int K_ = 0;
  int F_ = 0;
  RowKind row_kind_ = RowKind::None;
  std::vector<RowIndex> rows_;
  std::vector<Cell> cells_;
  std::string provenance_;
};

struct PdaStats {
  int K = 0;
  int F = 0;
  int Z = 0;
  int S = 0;
  /// g_s per symbol, symbols in first-occurrence row-major order.
  std::vector<int> multiplicities;
  /// The symbols themselves, same order.
  std::vector<Cell> labels;
  int g_min = 0;
  int g_max = 0;
  bool regular = true;
  Rational rate{0};
  Rational memory_ratio{0};

  /// "g-(K,F,Z,S)" for regular arrays, "(K,F,Z,S)" otherwise.
  std::string tuple() const {
    std::string body = "(" + std::to_string(K) + "," + std::to_string(F) + "," +
                       std::to_string(Z) + "," + std::to_string(S) + ")";
    if (regular && S > 0) return std::to_string(g_max) + "-" + body;
    return body;
  }
};

enum class Condition { C1, C2, C3 };

inline std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3: return "C3";
  }
  return "?";
}

/// Witness cells are 1-based (row position, column); 0 where not applicable.
struct Violation {
  Condition condition = Condition::C1;
  std::string message;
  int row1 = 0;
  int col1 = 0;
  int row2 = 0;
  int col2 = 0;

  std::string str() const {
    return std::string(to_string(condition)) + " violated: " + message;
  }
};

/// Either statistics of a valid PDA, or the first violation found for each
/// failed condition, in order C1, C2, C3.
class VerifyResult {
 public:
  VerifyResult(PdaStats stats) : stats_(std::move(stats)) {}  // NOLINT
  VerifyResult(std::vector<Violation> v) : violations_(std::move(v)) {}  // NOLINT

  bool ok() const noexcept { return violations_.empty(); }
  explicit operator bool() const noexcept { return ok(); }

  const PdaStats& stats() const {
    if (!ok()) throw Error("array is not a PDA: " + violation().str());
    return stats_;
  }
  const Violation& violation() const { return violations_.at(0); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

  bool violates(Condition c) const {
    for (const auto& v : violations_) {
      if (v.condition == c) return true;
    }
    return false;
  }

 private:
  PdaStats stats_;
  std::vector<Violation> violations_;
};

namespace detail {

inline std::string cell_name(int r, int k) {
  return "(" + std::to_string(r) + "," + std::to_string(k) + ")";
}

}  // namespace detail

/// Checks C1-C3. Cells are grouped by symbol first, so the cost is
/// O(F*K + sum of g_s^2).
inline VerifyResult verify(const Pda& pda) {
  const int K = pda.K();
  const int F = pda.F();

  std::vector<int> stars(static_cast<std::size_t>(K) + 1, 0);
  std::map<Cell, int> group_of;
  std::vector<Cell> labels;
  std::vector<std::vector<std::pair<int, int>>> groups;
  for (int r = 1; r <= F; ++r) {
    for (int k = 1; k <= K; ++k) {
      const Cell& c = pda(r, k);
      if (c.is_star()) {
        ++stars[k];
        continue;
      }
      auto [it, inserted] = group_of.try_emplace(c, static_cast<int>(groups.size()));
      if (inserted) {
        labels.push_back(c);
        groups.emplace_back();
      }
      groups[it->second].emplace_back(r, k);
    }
  }

  std::vector<Violation> violations;
  for (int k = 2; k <= K; ++k) {
    if (stars[k] != stars[1]) {
      violations.push_back(Violation{Condition::C1,
                       "column 1 has " + std::to_string(stars[1]) +
                           " stars but column " + std::to_string(k) + " has " +
                           std::to_string(stars[k]),
                       0, 1, 0, k});
      break;
    }
  }

  const int S = static_cast<int>(labels.size());
  auto c2 = [&]() -> std::optional<Violation> {
    if (S == 0) return std::nullopt;
    const auto kind = labels.front().kind();
    for (const auto& label : labels) {
      if (label.kind() != kind) {
        return Violation{Condition::C2,
                         "integer and vector symbols are mixed (" +
                             labels.front().str() + " and " + label.str() + ")"};
      }
    }
    if (kind != Cell::Kind::Integer) return std::nullopt;
    std::vector<char> present(static_cast<std::size_t>(S) + 1, 0);
    for (const auto& label : labels) {
      if (label.first() < 1 || label.first() > S) {
        return Violation{Condition::C2, "symbol " + label.str() +
                                            " outside [1:" + std::to_string(S) + "]"};
      }
      present[label.first()] = 1;
    }
    for (int s = 1; s <= S; ++s) {
      if (!present[s]) {
        return Violation{Condition::C2, "symbol " + std::to_string(s) + " never occurs"};
      }
    }
    return std::nullopt;
  }();
  if (c2) violations.push_back(std::move(*c2));

  bool c3_found = false;
  for (std::size_t g = 0; g < groups.size() && !c3_found; ++g) {
    const auto& cells = groups[g];
    for (std::size_t a = 0; a < cells.size() && !c3_found; ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        const auto [r1, k1] = cells[a];
        const auto [r2, k2] = cells[b];
        std::string why;
        if (r1 == r2) {
          why = "share row " + std::to_string(r1);
        } else if (k1 == k2) {
          why = "share column " + std::to_string(k1);
        } else if (!pda(r1, k2).is_star()) {
          why = "cell " + detail::cell_name(r1, k2) + " is not a star";
        } else if (!pda(r2, k1).is_star()) {
          why = "cell " + detail::cell_name(r2, k1) + " is not a star";
        }
        if (!why.empty()) {
          violations.push_back(Violation{Condition::C3,
                                         "symbol " + labels[g].str() + " at " +
                                             detail::cell_name(r1, k1) + " and " +
                                             detail::cell_name(r2, k2) + ": " + why,
                                         r1, k1, r2, k2});
          c3_found = true;
          break;
        }
      }
    }
  }
  if (!violations.empty()) return violations;

  PdaStats stats;
  stats.K = K;
  stats.F = F;
  stats.Z = stars[1];
  stats.S = S;
  stats.labels = std::move(labels);
  stats.multiplicities.reserve(groups.size());
  for (const auto& cells : groups) {
    stats.multiplicities.push_back(static_cast<int>(cells.size()));
  }
  if (S > 0) {
    const auto [lo, hi] = std::minmax_element(stats.multiplicities.begin(),
                                              stats.multiplicities.end());
    stats.g_min = *lo;
    stats.g_max = *hi;
  }
  stats.regular = stats.g_min == stats.g_max;
  stats.rate = Rational(S, F);
  stats.memory_ratio = Rational(stats.Z, F);
  return stats;
}

/// Star at (r, k) exactly when user k can retrieve subfile j(r) under the
/// consecutive cyclic placement of `p`.
inline bool verify_against_placement(const Pda& pda, const SystemParams& p) {
  if (pda.row_kind() == RowKind::None) {
    throw ShapeError("array rows carry no subfile index");
  }
  if (pda.K() != p.K) {
    throw ShapeError("array has " + std::to_string(pda.K()) +
                     " columns but K=" + std::to_string(p.K));
  }
  for (int r = 1; r <= pda.F(); ++r) {
    const int j = pda.subfile_of(r);
    if (j < 1 || j > p.K) return false;
    for (int k = 1; k <= p.K; ++k) {
      if (pda(r, k).is_star() != is_retrievable(p.K, p.t, j, k)) return false;
    }
  }
  return true;
}

/// Relabels symbols as integers 1..S in row-major order of first occurrence.
inline Pda canonicalize_symbols(const Pda& pda) {
  std::map<Cell, int> id;
  std::vector<Cell> cells;
  cells.reserve(pda.cells().size());
  for (const auto& c : pda.cells()) {
    if (c.is_star()) {
      cells.push_back(c);
      continue;
    }
    auto [it, inserted] = id.try_emplace(c, static_cast<int>(id.size()) + 1);
    cells.push_back(Cell::integer(it->second));
  }
  return pda.with_cells(std::move(cells), pda.provenance());
}

// --- text formats ----------------------------------------------------------

/// One row per line, cells separated by single spaces.
inline std::string to_grid(const Pda& pda) {
  std::string out;
  for (int r = 1; r <= pda.F(); ++r) {
    for (int k = 1; k <= pda.K(); ++k) {
      if (k > 1) out += ' ';
      out += pda(r, k).str();
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline std::optional<Cell> parse_cell(std::string_view token) {
  if (token == "*") return Cell::star();
  const auto comma = token.find(',');
  int a = 0;
  int b = 0;
  if (comma == std::string_view::npos) {
    if (parse_int(token, a)) return Cell::integer(a);
    return std::nullopt;
  }
  if (parse_int(token.substr(0, comma), a) && parse_int(token.substr(comma + 1), b)) {
    return Cell::pair(a, b);
  }
  return std::nullopt;
}

inline std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Reads the grid format. Blank lines and lines starting with '#' are
/// skipped. The result has unlabelled rows.
inline Pda parse_grid(std::string_view text) {
  std::vector<Cell> cells;
  int K = -1;
  int F = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      int count = 0;
      std::size_t i = 0;
      while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        const auto token = line.substr(i, j - i);
        const auto cell = detail::parse_cell(token);
        if (!cell) {
          throw ParseError("bad cell '" + std::string(token) + "'", line_no,
                           static_cast<int>(i) + 1);
        }
        cells.push_back(*cell);
        ++count;
        i = j;
      }
      if (K < 0) {
        K = count;
      } else if (count != K) {
        throw ParseError("row has " + std::to_string(count) + " cells, expected " +
                             std::to_string(K),
                         line_no, 1);
      }
      ++F;
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (F == 0) throw ParseError("no rows", line_no, 1);
  return Pda(K, F, RowKind::None, {}, std::move(cells), "grid");
}

namespace detail {

inline nlohmann::json cell_json(const Cell& c) {
  switch (c.kind()) {
    case Cell::Kind::Star: return "*";
    case Cell::Kind::Integer: return c.first();
    case Cell::Kind::Pair: return nlohmann::json::array({c.first(), c.second()});
  }
  return nullptr;
}

inline std::string_view row_kind_name(RowKind kind) {
  switch (kind) {
    case RowKind::None: return "none";
    case RowKind::Subfile: return "subfile";
    case RowKind::PacketSubfile: return "packet_subfile";
  }
  return "none";
}

}  // namespace detail

/// JSON record carrying K, F, row labels, grid and provenance. Grid rows
/// are newline-delimited.
inline std::string to_record(const Pda& pda) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& idx : pda.row_indices()) {
    if (pda.row_kind() == RowKind::PacketSubfile) {
      rows.push_back(json::array({idx.packet, idx.subfile}));
    } else {
      rows.push_back(idx.subfile);
    }
  }
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": \"cyclic-pda-record\",\n";
  out << "  \"version\": 1,\n";
  out << "  \"K\": " << pda.K() << ",\n";
  out << "  \"F\": " << pda.F() << ",\n";
  out << "  \"row_index\": " << json(detail::row_kind_name(pda.row_kind())).dump() << ",\n";
  out << "  \"provenance\": " << json(pda.provenance()).dump() << ",\n";
  out << "  \"rows\": " << rows.dump() << ",\n";
  out << "  \"grid\": [\n";
  for (int r = 1; r <= pda.F(); ++r) {
    json row = json::array();
    for (int k = 1; k <= pda.K(); ++k) row.push_back(detail::cell_json(pda(r, k)));
    out << "    " << row.dump() << (r < pda.F() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

inline Pda parse_record(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] =
        detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, column);
  }
  auto fail = [](const std::string& what) -> ParseError {
    return ParseError("record: " + what, 0, 0);
  };
  try {
    if (!doc.is_object() || doc.value("format", "") != "cyclic-pda-record") {
      throw fail("missing format tag \"cyclic-pda-record\"");
    }
    const int K = doc.at("K").get<int>();
    const int F = doc.at("F").get<int>();
    const auto kind_name = doc.at("row_index").get<std::string>();
    RowKind kind = RowKind::None;
    if (kind_name == "subfile") {
      kind = RowKind::Subfile;
    } else if (kind_name == "packet_subfile") {
      kind = RowKind::PacketSubfile;
    } else if (kind_name != "none") {
      throw fail("unknown row_index kind '" + kind_name + "'");
    }
    std::vector<RowIndex> rows;
    for (const auto& r : doc.at("rows")) {
      if (kind == RowKind::PacketSubfile) {
        rows.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
      } else {
        rows.push_back({0, r.get<int>()});
      }
    }
    const auto& grid = doc.at("grid");
    if (!grid.is_array() || grid.size() != static_cast<std::size_t>(F)) {
      throw fail("grid must have F=" + std::to_string(F) + " rows");
    }
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(F) * (K > 0 ? K : 0));
    for (std::size_t r = 0; r < grid.size(); ++r) {
      const auto& row = grid[r];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(K)) {
        throw fail("grid row " + std::to_string(r + 1) + " must have K=" +
                   std::to_string(K) + " cells");
      }
      for (const auto& c : row) {
        if (c.is_string() && c.get<std::string>() == "*") {
          cells.push_back(Cell::star());
        } else if (c.is_number_integer()) {
          cells.push_back(Cell::integer(c.get<int>()));
        } else if (c.is_array() && c.size() == 2) {
          cells.push_back(Cell::pair(c[0].get<int>(), c[1].get<int>()));
        } else {
          throw fail("bad cell " + c.dump() + " in grid row " + std::to_string(r + 1));
        }
      }
    }
    return Pda(K, F, kind, std::move(rows), std::move(cells),
               doc.value("provenance", std::string{}));
  } catch (const json::exception& e) {
    throw fail(e.what());
  } catch (const ShapeError& e) {
    throw fail(e.what());
  }
}

/// Records start with '{'; anything else is read as a grid.
inline Pda parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_record(text);
  return parse_grid(text);
}

/// Labels the rows of an unlabelled array by the layout build_scheme uses
/// for `p`: subfile rows 1..K for the K x K arrays, (i, j) rows, i-major,
/// for the split ones.
inline Pda assume_construction_rows(const Pda& pda, const SystemParams& p) {
  if (pda.row_kind() != RowKind::None) return pda;
  const int K = p.K;
  if (pda.F() % K != 0) {
    throw ShapeError("F=" + std::to_string(pda.F()) + " is not a multiple of K=" +
                     std::to_string(K));
  }
  const auto kind = classify(p);
  const bool square = kind == CaseKind::AllCached || kind == CaseKind::Divisible;
  std::vector<RowIndex> rows;
  rows.reserve(static_cast<std::size_t>(pda.F()));
  if (square) {
    if (pda.F() != K) {
      throw ShapeError("case " + std::string(to_string(kind)) + " needs F=K=" +
                       std::to_string(K) + ", got F=" + std::to_string(pda.F()));
    }
    for (int j = 1; j <= K; ++j) rows.push_back({0, j});
    return pda.with_rows(RowKind::Subfile, std::move(rows));
  }
  for (int i = 1; i <= pda.F() / K; ++i) {
    for (int j = 1; j <= K; ++j) rows.push_back({i, j});
  }
  return pda.with_rows(RowKind::PacketSubfile, std::move(rows));
}

}  // namespace cpda
