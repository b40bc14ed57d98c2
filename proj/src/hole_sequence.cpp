#include "altitude/hole_sequence.hpp"

#include <algorithm>
#include <unordered_map>

#include "altitude/bounds.hpp"
#include "altitude/error.hpp"

namespace altitude {

int HoleArray::row_count() const {
  int rows = 0;
  for (const auto& col : columns_) {
    for (int r = static_cast<int>(col.size()); r > rows; --r) {
      if (!col[r - 1].is_empty()) {
        rows = r;
        break;
      }
    }
  }
  return rows;
}

HoleCell HoleArray::at(CellIndex c) const {
  if (c.column < 0 || c.column >= column_count() || c.row < 1) return {};
  const auto& col = columns_[c.column];
  return c.row <= static_cast<int>(col.size()) ? col[c.row - 1] : HoleCell{};
}

void HoleArray::set(CellIndex c, HoleCell value) {
  ALTITUDE_CHECK(c.column >= 0 && c.column < column_count() && c.row >= 1, "cell index out of range");
  auto& col = columns_[c.column];
  if (c.row > static_cast<int>(col.size())) {
    if (value.is_empty()) return;
    col.resize(c.row);
  }
  col[c.row - 1] = value;
}

void HoleArray::swap_cells(CellIndex a, CellIndex b) {
  const HoleCell x = at(a);
  const HoleCell y = at(b);
  set(a, y);
  set(b, x);
}

int HoleArray::hole_count(int column) const {
  int count = 0;
  for (const auto& c : columns_.at(column)) count += c.is_hole() ? 1 : 0;
  return count;
}

std::optional<CellIndex> HoleArray::find_edge(EdgeRank e) const {
  for (int c = 0; c < column_count(); ++c) {
    const auto& col = columns_[c];
    for (int r = 0; r < static_cast<int>(col.size()); ++r) {
      if (col[r].is_edge() && col[r].edge == e) return CellIndex{r + 1, c};
    }
  }
  return std::nullopt;
}

bool operator==(const HoleArray& a, const HoleArray& b) {
  if (a.column_count() != b.column_count()) return false;
  const int rows = std::max(a.row_count(), b.row_count());
  for (int c = 0; c < a.column_count(); ++c)
    for (int r = 1; r <= rows; ++r)
      if (a.at({r, c}) != b.at({r, c})) return false;
  return true;
}

HoleArray HoleArraySequence::array_at(int k) const {
  if (k < 0 || k > static_cast<int>(steps.size())) throw InvalidInput("array index out of range");
  HoleArray a = initial;
  for (int i = 0; i < k; ++i) a.swap_cells(steps[i].beta, steps[i].delta);
  return a;
}

CellIndex HoleArraySequence::index_of(int k) const {
  const int w = column_count();
  return w == 0 ? CellIndex{k + 1, 0} : CellIndex{k / w + 1, k % w};
}

namespace {

struct Tables {
  std::vector<Vertex> vertices;
  std::vector<bool> mask;
  HoleArray reference;
  HoleArray reduced;
  HoleArray initial;
};

Tables build_tables(const Graph& g, std::span<const Vertex> removed) {
  const int n = g.vertex_count();
  Tables t;
  t.mask.assign(n, false);
  for (Vertex v : removed) {
    if (v < 0 || v >= n) throw InvalidInput("deleted vertex " + std::to_string(v) + " out of range");
    if (t.mask[v]) throw InvalidInput("deleted vertex " + std::to_string(v) + " listed twice");
    t.mask[v] = true;
  }
  if (static_cast<int>(removed.size()) > n - 2) throw InvalidInput("need |S| <= n - 2");
  for (Vertex v = 0; v < n; ++v)
    if (!t.mask[v]) t.vertices.push_back(v);

  const int w = static_cast<int>(t.vertices.size());
  const HeightTable full(g);
  const HeightTable reduced(g, t.mask);
  t.reference = HoleArray(w);
  t.reduced = HoleArray(w);
  t.initial = HoleArray(w);
  for (int c = 0; c < w; ++c) {
    const Vertex v = t.vertices[c];
    const auto col = full.column(v);
    for (int r = 1; r <= static_cast<int>(col.size()); ++r) {
      const EdgeRank e = col[r - 1];
      t.reference.set({r, c}, HoleCell::make_edge(e));
      const bool into_s = t.mask[g.edge(e).other(v)];
      t.initial.set({r, c}, into_s ? HoleCell::make_hole() : HoleCell::make_edge(e));
    }
    const auto rcol = reduced.column(v);
    for (int r = 1; r <= static_cast<int>(rcol.size()); ++r) t.reduced.set({r, c}, HoleCell::make_edge(rcol[r - 1]));
  }
  return t;
}

// Holes of every column sit in rows row..row+c-1.
bool holes_settled(const HoleArray& a, int row) {
  for (int c = 0; c < a.column_count(); ++c) {
    const int count = a.hole_count(c);
    for (int r = row; r < row + count; ++r)
      if (!a.at({r, c}).is_hole()) return false;
  }
  return true;
}

int critical_top(const HoleArray& a, CellIndex beta) {
  int j = beta.row;
  while (a.at({j, beta.column}).is_hole()) ++j;
  return j;
}

int board_height(CellIndex cell, CellIndex beta) {
  return cell.column < beta.column ? cell.row - beta.row : cell.row - beta.row + 1;
}

TokenBoard board_of(const HoleArray& a, CellIndex beta) {
  const int w = a.column_count();
  std::vector<std::vector<int>> heights(w);
  const int rows = a.row_count();
  for (int c = 0; c < w; ++c) {
    for (int r = 1; r <= rows; ++r) {
      if (!a.at({r, c}).is_hole()) continue;
      const int h = board_height({r, c}, beta);
      ALTITUDE_CHECK(h >= 1, "hole below the current index");
      heights[c].push_back(h);
    }
  }
  TokenBoard b = TokenBoard::from_heights(heights);
  b.set_active_column(beta.column);
  return b;
}

}  // namespace

HoleArraySequence hole_sequence(const Graph& g, std::span<const Vertex> removed) {
  Tables t = build_tables(g, removed);
  HoleArraySequence seq;
  seq.vertices = t.vertices;
  seq.removed.assign(removed.begin(), removed.end());
  seq.reference = t.reference;
  seq.reduced = t.reduced;
  seq.initial = t.initial;

  const int w = seq.column_count();
  const int last_row = std::max(t.reference.row_count(), t.reduced.row_count());

  std::unordered_map<EdgeRank, CellIndex> where;
  for (int c = 0; c < w; ++c)
    for (int r = 1; r <= t.initial.row_count(); ++r)
      if (const auto cell = t.initial.at({r, c}); cell.is_edge()) where[cell.edge] = {r, c};

  HoleArray cur = t.initial;
  int stop_row = 0;
  for (int i = 1;; ++i) {
    if (stop_row == 0 && i > last_row && holes_settled(cur, i)) stop_row = i;
    if (stop_row != 0 && i > stop_row) break;
    for (int u = 0; u < w; ++u) {
      const CellIndex beta{i, u};
      const int j = critical_top(cur, beta);
      HoleStep st{beta, {j, u}, j, false};
      const HoleCell target = t.reduced.at(beta);
      if (target.is_edge()) {
        st.from_reduced_table = true;
        st.delta = where.at(target.edge);
        ALTITUDE_CHECK(beta <= st.delta && st.delta <= (CellIndex{j, u}), "reduced-table edge outside the critical interval");
      } else {
        ALTITUDE_CHECK(cur.at(st.delta).is_empty(), "top of the critical interval is not empty");
      }
      const HoleCell moved = cur.at(st.delta);
      cur.swap_cells(beta, st.delta);
      if (moved.is_edge()) where[moved.edge] = beta;
      if (const auto back = cur.at(st.delta); back.is_edge()) where[back.edge] = st.delta;
      seq.steps.push_back(st);
    }
  }
  return seq;
}

std::string validate_hole_sequence(const Graph& g, const HoleArraySequence& seq) {
  Tables t;
  try {
    t = build_tables(g, seq.removed);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  if (t.vertices != seq.vertices) return "surviving vertex list differs";
  if (!(t.reference == seq.reference)) return "reference array is not the column-deleted height table";
  if (!(t.reduced == seq.reduced)) return "reduced array is not the height table of G - S";
  if (!(t.initial == seq.initial)) return "initial array is not the reference with S-edges as holes";
  const int s = static_cast<int>(seq.removed.size());
  const int w = seq.column_count();
  for (int c = 0; c < w; ++c) {
    if (seq.initial.hole_count(c) > s) return "column " + std::to_string(c) + " starts with more than s holes";
  }

  std::vector<char> expected(g.edge_count() + 1, 0);
  for (EdgeRank e = 1; e <= g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    expected[e] = !t.mask[ed.u] && !t.mask[ed.v];
  }

  HoleArray cur = seq.initial;
  const int total = static_cast<int>(seq.steps.size());
  for (int k = 0; k <= total; ++k) {
    const CellIndex beta = seq.index_of(k);
    const std::string at = "array " + std::to_string(k) + ": ";
    const int rows = std::max({cur.row_count(), t.reference.row_count(), t.reduced.row_count()}) + 1;
    std::vector<int> seen(g.edge_count() + 1, 0);
    for (int r = 1; r <= rows; ++r) {
      for (int c = 0; c < w; ++c) {
        const CellIndex d{r, c};
        const HoleCell cell = cur.at(d);
        if (cell.is_edge()) {
          if (cell.edge < 1 || cell.edge > g.edge_count() || !expected[cell.edge]) return at + "holds an edge not in G - S";
          ++seen[cell.edge];
        }
        if (d < beta) {
          if (cell != t.reduced.at(d)) return at + "lower part differs from the reduced table";
        } else if (!cell.is_hole() && cell != t.reference.at(d)) {
          return at + "upper part differs from the reference table";
        }
      }
    }
    for (EdgeRank e = 1; e <= g.edge_count(); ++e) {
      if (seen[e] != (expected[e] ? 1 : 0)) return at + "edge " + std::to_string(e) + " not present exactly once";
    }
    if (k == total) break;

    const HoleStep& st = seq.steps[k];
    if (st.beta != beta) return at + "step index out of order";
    const int j = critical_top(cur, beta);
    if (st.critical_top != j) return at + "recorded critical interval is wrong";
    if (!(beta <= st.delta && st.delta <= (CellIndex{j, beta.column}))) return at + "swap partner outside the critical interval";
    if (st.delta.column != beta.column) {
      const HoleCell partner = cur.at(st.delta);
      const auto uv = g.find_edge(seq.vertices[beta.column], seq.vertices[st.delta.column]);
      if (!partner.is_edge() || !uv || partner.edge != *uv) return at + "cross-column swap partner is not the joining edge";
    }
    cur.swap_cells(st.beta, st.delta);
  }
  const int reduced_rows = t.reduced.row_count();
  if (seq.index_of(total).row <= reduced_rows) return "sequence ends before the reduced table is reached";
  return "";
}

TokenBoard board_from_holes(const HoleArraySequence& seq, int k) { return board_of(seq.array_at(k), seq.index_of(k)); }

GameTranscript transcript_from_holes(const HoleArraySequence& seq) {
  GameTranscript t;
  HoleArray cur = seq.initial;
  t.initial = board_of(cur, seq.index_of(0));
  TokenBoard board = t.initial;
  for (int k = 0; k < static_cast<int>(seq.steps.size()); ++k) {
    const HoleStep& st = seq.steps[k];
    GameMove move = Pass{};
    if (st.delta.column != st.beta.column) move = Transfer{st.delta.column, board_height(st.delta, st.beta)};
    try {
      t.steps.push_back(step(board, move));
    } catch (const RuleViolation& e) {
      detail::fail_internal("induced game step " + std::to_string(k) + " is illegal: " + e.what());
    }
    cur.swap_cells(st.beta, st.delta);
    const TokenBoard expected = board_of(cur, seq.index_of(k + 1));
    ALTITUDE_CHECK(board.occupancy() == expected.occupancy(),
                   "induced game diverges from the hole arrays at step " + std::to_string(k));
    ALTITUDE_CHECK(board.active_column() == expected.active_column(), "active column out of step");
  }
  t.final_board = board;
  return t;
}

std::vector<DropReport> measure_drops(const Graph& g, std::span<const Vertex> removed) {
  const HoleArraySequence seq = hole_sequence(g, removed);
  const HeightTable full(g);
  const int w = seq.column_count();
  const int s = static_cast<int>(removed.size());

  std::vector<DropReport> out;
  HoleArray cur = seq.initial;
  for (int k = 0; k < static_cast<int>(seq.steps.size()); ++k) {
    const HoleStep& st = seq.steps[k];
    if (const HoleCell cell = seq.reduced.at(st.beta); cell.is_edge()) {
      DropReport d;
      d.edge = cell.edge;
      d.height_full = full.height(cell.edge);
      d.height_reduced = st.beta.row;
      d.drop = d.height_full - d.height_reduced;
      d.critical_height = st.critical_top - st.beta.row;
      d.column_tokens = board_of(cur, st.beta).grounded_count(st.beta.column);
      ALTITUDE_CHECK(d.height_full == st.delta.row, "edge of the reduced table was not found at its full height");
      ALTITUDE_CHECK(d.drop <= d.critical_height, "drop exceeds the critical interval height");
      ALTITUDE_CHECK(d.critical_height <= d.column_tokens, "critical interval taller than the grounded tokens");
      if (w >= std::max(2, s)) {
        ALTITUDE_CHECK(d.drop <= token_game_upper(w, s), "drop exceeds the token-game bound");
      }
      out.push_back(d);
    }
    cur.swap_cells(st.beta, st.delta);
  }
  std::sort(out.begin(), out.end(), [](const DropReport& a, const DropReport& b) { return a.edge < b.edge; });
  return out;
}

DropReport measure_drop(const Graph& g, std::span<const Vertex> removed, EdgeRank e) {
  if (e < 1 || e > g.edge_count()) throw InvalidInput("edge rank out of range");
  const Edge& ed = g.edge(e);
  for (Vertex v : removed) {
    if (ed.touches(v)) throw InvalidInput("edge " + std::to_string(e) + " touches a deleted vertex");
  }
  for (const auto& d : measure_drops(g, removed))
    if (d.edge == e) return d;
  detail::fail_internal("edge of G - S missing from the reduced table");
}

DropScan scan_drops(const Graph& g, int s) {
  const int n = g.vertex_count();
  if (s < 0 || s > n - 2) throw InvalidInput("need 0 <= s <= n - 2");
  DropScan scan;
  std::vector<Vertex> set(s);
  for (int i = 0; i < s; ++i) set[i] = i;
  while (true) {
    ++scan.subsets;
    for (const auto& d : measure_drops(g, set)) {
      if (d.drop > scan.max_drop || scan.worst_edge == 0) {
        scan.max_drop = d.drop;
        scan.worst_set = set;
        scan.worst_edge = d.edge;
      }
    }
    int i = s - 1;
    while (i >= 0 && set[i] == n - s + i) --i;
    if (i < 0) break;
    ++set[i];
    for (int j = i + 1; j < s; ++j) set[j] = set[j - 1] + 1;
  }
  return scan;
}

}  // namespace altitude
