#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "altitude/graph.hpp"

namespace altitude {

// Height table of a totally ordered graph.
//
// Cells (row, u) are filled in row-major order, rows from 1 upward and
// vertices in index order within a row. Each cell receives the largest-rank
// edge incident to its column vertex that no earlier cell holds, or stays
// empty. A column is therefore a gap-free prefix of rows, stored here
// column-major. The height of an edge is the row of the cell holding it.
class HeightTable {
 public:
  explicit HeightTable(const Graph& g);
  // Table of G - S, with S given as a vertex mask. Removed vertices keep
  // their (empty) columns and edges keep their ranks in G; edges touching S
  // have no cell.
  HeightTable(const Graph& g, const std::vector<bool>& removed);

  int vertex_count() const { return static_cast<int>(columns_.size()); }
  int row_count() const { return row_count_; }

  // Edge in cell (row, u), nullopt when empty or out of range.
  std::optional<EdgeRank> cell(int row, Vertex u) const;
  std::span<const EdgeRank> column(Vertex u) const { return columns_.at(u); }

  bool contains(EdgeRank e) const;
  // Row holding e. Throws InvalidInput for ranks outside 1..m or edges that
  // have no cell (deleted).
  int height(EdgeRank e) const;
  // Column vertex of the cell holding e.
  Vertex column_of(EdgeRank e) const;

  // Edge of maximum height, ties to the smaller rank. Throws InvalidInput on
  // a table with no edges.
  std::pair<EdgeRank, int> max_height_edge() const;

  // Row-major view, row_count rows of vertex_count cells.
  std::vector<std::vector<std::optional<EdgeRank>>> rows() const;

 private:
  void fill(const Graph& g, const std::vector<bool>& removed);

  std::vector<std::vector<EdgeRank>> columns_;
  std::vector<int> height_;   // by rank - 1; 0 = no cell
  std::vector<Vertex> owner_;  // by rank - 1
  int row_count_ = 0;
};

}  // namespace altitude
