#pragma once

// Uniform cell list for fixed-radius neighbor queries. Cells have side at
// least sigma, so every point within sigma of a query lies in the 3^d block
// of cells around it; candidates are always post-filtered by exact distance.

#include <cstdint>
#include <span>
#include <vector>

#include "landau/core.hpp"

namespace landau {

using Index = std::uint32_t;

class CellList {
 public:
  CellList() = default;

  int dimension() const { return d_; }
  double sigma() const { return sigma_; }
  double cell_size() const { return cell_size_; }
  const Vec& box_min() const { return box_min_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t cell_count() const { return cell_start_.empty() ? 0 : cell_start_.size() - 1; }
  const std::vector<Vec>& points() const { return points_; }

  /// Integer coordinates of the bucket holding x (may be out of range).
  std::array<std::int64_t, 3> cell_of(const Vec& x) const;
  /// Indices stored in bucket c, ascending.
  std::span<const Index> bucket(const std::array<std::int64_t, 3>& c) const;

  /// Appends every index within sigma of x to out (unsorted across buckets).
  void collect_within(const Vec& x, std::vector<Index>& out) const;

  friend CellList build_cell_list(std::span<const Vec> points, int d, double sigma);

 private:
  std::int64_t linear(const std::array<std::int64_t, 3>& c) const;

  int d_ = 2;
  double sigma_ = 0.0;
  double sigma2_ = 0.0;
  double cell_size_ = 0.0;
  Vec box_min_{};
  std::array<std::int64_t, 3> ncell_{1, 1, 1};
  std::vector<Vec> points_;
  std::vector<std::size_t> cell_start_;
  std::vector<Index> sorted_;
  std::vector<Vec> sorted_points_;  // points_ in bucket order
};

/// O(N) build. The cell side is sigma, enlarged only when needed to keep the
/// bucket array within O(N) memory.
CellList build_cell_list(std::span<const Vec> points, int d, double sigma);

/// Exactly { i : |x - p_i| <= sigma }, ascending.
std::vector<Index> query_within(const CellList& cl, const Vec& x, double sigma);

/// Compressed adjacency: neighbors of target t are
/// indices[offsets[t] .. offsets[t+1]), ascending.
struct PairList {
  std::vector<std::size_t> offsets{0};
  std::vector<Index> indices;

  std::size_t target_count() const { return offsets.size() - 1; }
  std::span<const Index> neighbors(std::size_t t) const {
    return {indices.data() + offsets[t], indices.data() + offsets[t + 1]};
  }
};

/// For each target, the sources (points of cl) within sigma, ascending.
PairList build_pair_list(std::span<const Vec> targets, const CellList& cl, double sigma);

/// Same relation by exhaustive distance checks. Test and benchmark oracle.
PairList build_pair_list_brute(std::span<const Vec> targets, std::span<const Vec> sources,
                               int d, double sigma);

/// Reverse relation; lists come out ascending because targets are visited in order.
PairList transpose(const PairList& pl, std::size_t source_count);

}  // namespace landau
