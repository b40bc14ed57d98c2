#pragma once

#include <optional>

namespace altitude {

// Closed-form altitude bounds for an n-vertex graph of average degree d.
struct BoundReport {
  int n = 0;
  double d = 0.0;
  int rodl_floor = 0;  // floor(1/2 + sqrt(d))
  double s = 0.0;      // n^(1/3) (11 lg n)^(2/3)
  bool s_in_range = false;  // s <= n - 2, needed by the dense-graph bound
  // d/(4s) (1 - 2/d) (1 - 1/s) (1 - 4s^2/(d-2)); nullopt unless d > 2.
  std::optional<double> dense_bound;
  bool dense_positive = false;  // false whenever 4s^2 >= d - 2
  double clique_bound = 0.0;    // (1/20) (n / lg n)^(2/3), leading term only
  double ghat_upper = 0.0;      // 11 sqrt(n s) lg n
};

// Requires n >= 2 (lg n > 0); throws InvalidInput otherwise. Values are
// reported as evaluated, including non-positive dense bounds.
BoundReport guaranteed_bounds(int n, double d);

// 11 sqrt(n s) lg n, the column-height bound for an (n, s)-token game.
double token_game_upper(double n, double s);

}  // namespace altitude
