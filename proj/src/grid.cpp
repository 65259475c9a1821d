#include "landau/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace landau {

double VelocityGrid::cell_volume() const { return std::pow(h, d); }

std::size_t VelocityGrid::flat_index(int i, int j, int k) const {
  const auto n = static_cast<std::size_t>(n_o);
  if (d == 2) return static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
  return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
         static_cast<std::size_t>(k);
}

VelocityGrid build_grid(double L, int n_o, int d) {
  if (d != 2 && d != 3) throw ConfigError("grid dimension must be 2 or 3");
  if (!(L > 0.0)) throw ConfigError("grid half-extent L must be positive");
  if (n_o < 2) throw ConfigError("grid needs n_o >= 2");
  std::size_t count = 1;
  for (int a = 0; a < d; ++a) {
    if (count > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()) /
                    static_cast<std::size_t>(n_o))
      throw ConfigError("grid size n_o^d overflows the index type");
    count *= static_cast<std::size_t>(n_o);
  }

  VelocityGrid g;
  g.d = d;
  g.L = L;
  g.n_o = n_o;
  g.h = 2.0 * L / n_o;
  g.centers.reserve(count);
  if (d == 2) {
    for (int i = 0; i < n_o; ++i)
      for (int j = 0; j < n_o; ++j) g.centers.push_back({g.axis_coord(i), g.axis_coord(j), 0.0});
  } else {
    for (int i = 0; i < n_o; ++i)
      for (int j = 0; j < n_o; ++j)
        for (int k = 0; k < n_o; ++k)
          g.centers.push_back({g.axis_coord(i), g.axis_coord(j), g.axis_coord(k)});
  }
  return g;
}

namespace {

struct AxisRange {
  int lo, hi;  // inclusive
};

AxisRange axis_range(const VelocityGrid& g, double x, double sigma) {
  // one extra index each side; the exact distance test decides membership
  const double a = (x - sigma + g.L) / g.h - 0.5;
  const double b = (x + sigma + g.L) / g.h - 0.5;
  if (!(b >= -1.0) || !(a <= g.n_o)) return {0, -1};
  const int lo = std::max(0, static_cast<int>(std::ceil(a)) - 1);
  const int hi = std::min(g.n_o - 1, static_cast<int>(std::floor(b)) + 1);
  return {lo, hi};
}

template <typename Emit>
void visit_lattice(const VelocityGrid& g, const Vec& x, double sigma, Emit emit) {
  const double s2 = sigma * sigma;
  std::array<AxisRange, 3> r{};
  for (int a = 0; a < g.d; ++a) {
    r[a] = axis_range(g, x[a], sigma);
    if (r[a].lo > r[a].hi) return;
  }
  // partial sums only prune; the full sum below is the membership test
  if (g.d == 2) {
    for (int i = r[0].lo; i <= r[0].hi; ++i) {
      const double t0 = g.axis_coord(i) - x[0];
      if (t0 * t0 > s2) continue;
      for (int j = r[1].lo; j <= r[1].hi; ++j) {
        const std::size_t l = g.flat_index(i, j);
        const Vec& c = g.centers[l];
        const double u0 = c[0] - x[0], u1 = c[1] - x[1];
        if (u0 * u0 + u1 * u1 <= s2) emit(static_cast<Index>(l));
      }
    }
  } else {
    for (int i = r[0].lo; i <= r[0].hi; ++i) {
      const double t0 = g.axis_coord(i) - x[0];
      if (t0 * t0 > s2) continue;
      for (int j = r[1].lo; j <= r[1].hi; ++j) {
        const double t1 = g.axis_coord(j) - x[1];
        if (t0 * t0 + t1 * t1 > s2) continue;
        for (int k = r[2].lo; k <= r[2].hi; ++k) {
          const std::size_t l = g.flat_index(i, j, k);
          const Vec& c = g.centers[l];
          const double u0 = c[0] - x[0], u1 = c[1] - x[1], u2 = c[2] - x[2];
          if (u0 * u0 + u1 * u1 + u2 * u2 <= s2) emit(static_cast<Index>(l));
        }
      }
    }
  }
}

}  // namespace

PairList lattice_pairs(const VelocityGrid& grid, std::span<const Vec> points, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConfigError("lattice pair radius must be positive and finite");
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  PairList pl;
  pl.offsets.assign(points.size() + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    std::size_t c = 0;
    visit_lattice(grid, points[p], sigma, [&](Index) { ++c; });
    pl.offsets[p + 1] = c;
  }
  for (std::size_t p = 0; p < points.size(); ++p) pl.offsets[p + 1] += pl.offsets[p];
  pl.indices.resize(pl.offsets.back());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    std::size_t at = pl.offsets[p];
    visit_lattice(grid, points[p], sigma, [&](Index l) { pl.indices[at++] = l; });
  }
  return pl;
}

}  // namespace landau
