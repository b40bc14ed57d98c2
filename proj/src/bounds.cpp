#include "altitude/bounds.hpp"

#include <cmath>

#include "altitude/error.hpp"

namespace altitude {

double token_game_upper(double n, double s) { return 11.0 * std::sqrt(n * s) * std::log2(n); }

BoundReport guaranteed_bounds(int n, double d) {
  if (n < 2) throw InvalidInput("bounds need n >= 2");
  if (!(d >= 0.0)) throw InvalidInput("average degree must be non-negative");
  BoundReport b;
  b.n = n;
  b.d = d;
  b.rodl_floor = static_cast<int>(std::floor(0.5 + std::sqrt(d)));
  const double lg = std::log2(static_cast<double>(n));
  b.s = std::cbrt(static_cast<double>(n)) * std::pow(11.0 * lg, 2.0 / 3.0);
  b.s_in_range = b.s <= n - 2;
  if (d > 2.0) {
    const double s = b.s;
    b.dense_bound = d / (4.0 * s) * (1.0 - 2.0 / d) * (1.0 - 1.0 / s) * (1.0 - 4.0 * s * s / (d - 2.0));
    b.dense_positive = 4.0 * s * s < d - 2.0;
  }
  b.clique_bound = std::pow(n / lg, 2.0 / 3.0) / 20.0;
  b.ghat_upper = token_game_upper(n, b.s);
  return b;
}

}  // namespace altitude
