#pragma once

#include <vector>

#include "graphpoly/graph.hpp"
#include "graphpoly/numeric.hpp"

namespace gp {

/// Number of spanning trees by the matrix-tree theorem: determinant of the reduced
/// Laplacian, computed with fraction-free (Bareiss) elimination so every intermediate
/// value is an exact integer. Disconnected graphs give 0; K_1 gives 1.
inline BigInt spanning_tree_count(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  if (n == 1) return 1;
  const std::size_t k = n - 1;
  std::vector<std::vector<BigInt>> a(k, std::vector<BigInt>(k, 0));
  for (std::size_t u = 1; u < n; ++u) {
    a[u - 1][u - 1] = static_cast<long>(g.degree(static_cast<Vertex>(u)));
    for (Vertex w : g.neighbors(static_cast<Vertex>(u)))
      if (w != 0) a[u - 1][static_cast<std::size_t>(w) - 1] = -1;
  }
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      a[i][p] = 0;
    }
    prev = a[p][p];
  }
  return sign * a[k - 1][k - 1];
}

}  // namespace gp
