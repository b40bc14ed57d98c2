#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "altitude/graph.hpp"
#include "altitude/height_table.hpp"
#include "altitude/token_game.hpp"

namespace altitude {

// Cell of an intermediate array: empty, an edge of G - S, or a hole.
struct HoleCell {
  enum class Kind { empty, edge, hole };
  Kind kind = Kind::empty;
  EdgeRank edge = 0;

  static HoleCell make_edge(EdgeRank e) { return {Kind::edge, e}; }
  static HoleCell make_hole() { return {Kind::hole, 0}; }
  bool is_empty() const { return kind == Kind::empty; }
  bool is_edge() const { return kind == Kind::edge; }
  bool is_hole() const { return kind == Kind::hole; }
  friend bool operator==(const HoleCell&, const HoleCell&) = default;
};

// Index (row, column) with rows from 1 and columns numbering the surviving
// vertices 0..n'-1 in vertex order. Ordered row-major.
struct CellIndex {
  int row = 1;
  int column = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Column-major array that grows on demand; cells past the stored range are
// empty.
class HoleArray {
 public:
  HoleArray() = default;
  explicit HoleArray(int columns) : columns_(columns) {}

  int column_count() const { return static_cast<int>(columns_.size()); }
  int row_count() const;  // last row holding an edge or a hole
  HoleCell at(CellIndex c) const;
  void set(CellIndex c, HoleCell value);
  void swap_cells(CellIndex a, CellIndex b);
  int hole_count(int column) const;
  std::optional<CellIndex> find_edge(EdgeRank e) const;
  friend bool operator==(const HoleArray& a, const HoleArray& b);

 private:
  std::vector<std::vector<HoleCell>> columns_;
};

// Successor step A_beta -> A_gamma: swap cells beta and delta. j is the top
// of the critical interval [(i,u),(j,u)] of A_beta.
struct HoleStep {
  CellIndex beta;
  CellIndex delta;
  int critical_top = 0;
  bool from_reduced_table = false;  // A'(beta) held an edge (Case 1)
};

struct HoleArraySequence {
  std::vector<Vertex> vertices;  // surviving vertex of each column
  std::vector<Vertex> removed;   // S
  HoleArray reference;           // A: table of G with the S-columns deleted
  HoleArray reduced;             // A': table of G - S
  HoleArray initial;             // A_alpha
  std::vector<HoleStep> steps;   // steps[k] leads from the k-th array

  int column_count() const { return static_cast<int>(vertices.size()); }
  // Array number k (k = 0 is A_alpha), by replay.
  HoleArray array_at(int k) const;
  CellIndex index_of(int k) const;  // beta for array k
  int critical_height(int k) const { return steps.at(k).critical_top - steps.at(k).beta.row; }
};

// Builds the sequence for G and S, one step per cell index, through every
// row holding an edge or a hole of either table, then until no hole floats
// above another's gap, then one more full row. Throws InvalidInput when
// |S| > n-2 or S repeats or names an unknown vertex.
HoleArraySequence hole_sequence(const Graph& g, std::span<const Vertex> removed);

// Independent check of the three sequence properties and of edge
// conservation, replaying from scratch. Empty string when valid.
std::string validate_hole_sequence(const Graph& g, const HoleArraySequence& seq);

// Token board for array k: a hole at A_beta(row, v) becomes a token at height
// row - i when v < u and row - i + 1 otherwise, where beta = (i, u).
TokenBoard board_from_holes(const HoleArraySequence& seq, int k);

// Plays the induced (n - s, s) game. Each step's move is read off the swap;
// the resulting board is compared with board_from_holes. A mismatch or an
// illegal move throws InternalError.
GameTranscript transcript_from_holes(const HoleArraySequence& seq);

struct DropReport {
  EdgeRank edge = 0;
  int height_full = 0;     // h_G(e)
  int height_reduced = 0;  // h_{G-S}(e)
  int drop = 0;            // signed difference
  int critical_height = 0; // j - i at the beta with A'(beta) = e
  int column_tokens = 0;   // tokens in the active column of the induced board
};

// Drop of every edge of G - S, in rank order.
std::vector<DropReport> measure_drops(const Graph& g, std::span<const Vertex> removed);
// Throws InvalidInput when e touches S or is out of range.
DropReport measure_drop(const Graph& g, std::span<const Vertex> removed, EdgeRank e);

struct DropScan {
  int max_drop = 0;
  std::vector<Vertex> worst_set;
  EdgeRank worst_edge = 0;
  long long subsets = 0;
};

// Largest drop over every s-subset S of V(G) and every edge of G - S.
DropScan scan_drops(const Graph& g, int s);

}  // namespace altitude
