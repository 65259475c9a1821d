#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "landau/core.hpp"
#include "landau/neighbor.hpp"

namespace landau {

/// Cell centers of the n_o^d congruent cells tiling [-L, L]^d, enumerated
/// row-major with the last axis fastest.
struct VelocityGrid {
  int d = 2;
  double L = 1.0;
  int n_o = 2;
  double h = 1.0;
  std::vector<Vec> centers;

  std::size_t size() const { return centers.size(); }
  double cell_volume() const;
  /// Coordinate of the k-th center along any axis.
  double axis_coord(int k) const { return -L + (k + 0.5) * h; }
  std::size_t flat_index(int i, int j, int k = 0) const;
};

VelocityGrid build_grid(double L, int n_o, int d);

/// For every point, the grid centers within sigma, ascending. Same sets as
/// a cell list over the centers, found by walking the lattice directly.
PairList lattice_pairs(const VelocityGrid& grid, std::span<const Vec> points, double sigma);

}  // namespace landau
