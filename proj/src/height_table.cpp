#include "altitude/height_table.hpp"

#include "altitude/error.hpp"

namespace altitude {

HeightTable::HeightTable(const Graph& g) { fill(g, std::vector<bool>(g.vertex_count(), false)); }

HeightTable::HeightTable(const Graph& g, const std::vector<bool>& removed) {
  if (static_cast<int>(removed.size()) != g.vertex_count()) throw InvalidInput("vertex mask size mismatch");
  fill(g, removed);
}

void HeightTable::fill(const Graph& g, const std::vector<bool>& removed) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  columns_.assign(n, {});
  height_.assign(m, 0);
  owner_.assign(m, -1);
  row_count_ = 0;

  std::vector<bool> placed(m, false);
  for (EdgeRank e = 1; e <= m; ++e) {
    if (removed[g.edge(e).u] || removed[g.edge(e).v]) placed[e - 1] = true;
  }
  // Incidence lists are sorted by increasing rank; cursor[u] walks each one
  // from the top down, skipping edges another column already took.
  std::vector<int> cursor(n);
  std::vector<Vertex> live;
  for (Vertex u = 0; u < n; ++u) {
    cursor[u] = g.degree(u) - 1;
    if (!removed[u]) live.push_back(u);
  }
  for (int row = 1; !live.empty(); ++row) {
    std::vector<Vertex> still_live;
    for (Vertex u : live) {
      auto inc = g.incident(u);
      int& c = cursor[u];
      while (c >= 0 && placed[inc[c].rank - 1]) --c;
      if (c < 0) continue;  // column finished; stays empty from here up
      const EdgeRank e = inc[c].rank;
      placed[e - 1] = true;
      columns_[u].push_back(e);
      height_[e - 1] = row;
      owner_[e - 1] = u;
      row_count_ = row;
      still_live.push_back(u);
    }
    live = std::move(still_live);
  }
}

std::optional<EdgeRank> HeightTable::cell(int row, Vertex u) const {
  if (u < 0 || u >= vertex_count() || row < 1) return std::nullopt;
  const auto& col = columns_[u];
  if (row > static_cast<int>(col.size())) return std::nullopt;
  return col[row - 1];
}

bool HeightTable::contains(EdgeRank e) const {
  return e >= 1 && e <= static_cast<int>(height_.size()) && height_[e - 1] > 0;
}

int HeightTable::height(EdgeRank e) const {
  if (!contains(e)) throw InvalidInput("edge " + std::to_string(e) + " is not in the height table");
  return height_[e - 1];
}

Vertex HeightTable::column_of(EdgeRank e) const {
  if (!contains(e)) throw InvalidInput("edge " + std::to_string(e) + " is not in the height table");
  return owner_[e - 1];
}

std::pair<EdgeRank, int> HeightTable::max_height_edge() const {
  EdgeRank best = 0;
  int best_height = 0;
  for (EdgeRank e = 1; e <= static_cast<int>(height_.size()); ++e) {
    if (height_[e - 1] > best_height) {
      best = e;
      best_height = height_[e - 1];
    }
  }
  if (best == 0) throw InvalidInput("height table has no edges");
  return {best, best_height};
}

std::vector<std::vector<std::optional<EdgeRank>>> HeightTable::rows() const {
  std::vector<std::vector<std::optional<EdgeRank>>> out(row_count_);
  for (int row = 1; row <= row_count_; ++row) {
    auto& r = out[row - 1];
    r.reserve(columns_.size());
    for (Vertex u = 0; u < vertex_count(); ++u) r.push_back(cell(row, u));
  }
  return out;
}

}  // namespace altitude
