#include "landau/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "landau/kernels.hpp"

namespace landau {

namespace {

template <int D>
inline double dist2(const Vec& a, const Vec& b) {
  double r2 = 0.0;
  for (int k = 0; k < D; ++k) {
    const double t = a[k] - b[k];
    r2 += t * t;
  }
  return r2;
}

void check_cell_list(const CellList* cl, double sigma, std::size_t n_points) {
  if (!cl) return;
  if (cl->sigma() != sigma)
    throw ConfigError("cell list radius differs from the truncation radius");
  if (cl->point_count() != n_points)
    throw ConfigError("cell list does not index the expected point set");
}

// Sources for one target: everything (sigma infinite), a brute-force filter,
// or the cell list. visit(k) sees sources in ascending order.
template <int D, typename Visit>
void for_each_source(const Vec& x, std::span<const Vec> sources, double sigma2,
                     const CellList* cl, std::vector<Index>& scratch, Visit&& visit) {
  if (cl) {
    scratch.clear();
    cl->collect_within(x, scratch);
    std::sort(scratch.begin(), scratch.end());
    for (Index k : scratch) visit(static_cast<std::size_t>(k));
    return;
  }
  const bool all = std::isinf(sigma2);
  for (std::size_t k = 0; k < sources.size(); ++k)
    if (all || dist2<D>(x, sources[k]) <= sigma2) visit(k);
}

template <int D, typename Sources>
DensityField blob_impl(const ParticleEnsemble& ens, std::span<const Vec> targets,
                       double epsilon, DensityTarget kind, Sources&& sources) {
  DensityField out;
  out.target = kind;
  out.values.assign(targets.size(), 0.0);
  const double norm = mollifier_norm(epsilon, D);
  const double inv2e = 1.0 / (2.0 * epsilon);
  const auto& v = ens.velocities;
  const auto& w = ens.weights;
  const auto nt = static_cast<std::ptrdiff_t>(targets.size());

#pragma omp parallel
  {
    std::vector<Index> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < nt; ++t) {
      const Vec& x = targets[t];
      double acc = 0.0;
      sources(x, static_cast<std::size_t>(t), scratch, [&](std::size_t k) {
        acc += w[k] * std::exp(-dist2<D>(x, v[k]) * inv2e);
      });
      out.values[t] = norm * acc;
    }
  }
  return out;
}

template <int D, typename Sources>
VariationField type1_impl(const ParticleEnsemble& ens, const VelocityGrid& grid,
                          std::span<const double> log_f, double epsilon, Sources&& sources) {
  const auto& v = ens.velocities;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const double inv2e = 1.0 / (2.0 * epsilon);
  const double scale = -grid.cell_volume() * mollifier_norm(epsilon, D) / epsilon;
  VariationField out;
  out.values.assign(v.size(), Vec{0.0, 0.0, 0.0});
  bool bad = false;

#pragma omp parallel
  {
    std::vector<Index> scratch;
#pragma omp for schedule(static) reduction(|| : bad)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Vec& x = v[i];
      Vec g{0.0, 0.0, 0.0};
      sources(x, static_cast<std::size_t>(i), scratch, [&](std::size_t l) {
        const double lf = log_f[l];
        if (!std::isfinite(lf)) bad = true;
        const Vec& c = grid.centers[l];
        const double e = std::exp(-dist2<D>(x, c) * inv2e) * lf;
        for (int a = 0; a < D; ++a) g[a] += (x[a] - c[a]) * e;
      });
      for (int a = 0; a < D; ++a) out.values[i][a] = scale * g[a];
    }
  }
  if (bad) throw NumericalError("type-I gradient needs log f at a grid center where it is not finite");
  return out;
}

template <int D, typename Sources>
VariationField type2_impl(const ParticleEnsemble& ens, const DensityField& f, double epsilon,
                          Sources&& sources) {
  const auto& v = ens.velocities;
  const auto& w = ens.weights;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (f.values.size() != v.size())
    throw ConfigError("type-II gradient needs one density value per particle");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (w[i] > 0.0 && !(f.values[i] > 0.0))
      throw NumericalError("zero blob density at weighted particle " + std::to_string(i));

  std::vector<double> inv_f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    inv_f[i] = f.values[i] > 0.0 ? 1.0 / f.values[i] : 0.0;

  const double inv2e = 1.0 / (2.0 * epsilon);
  const double scale = -mollifier_norm(epsilon, D) / epsilon;
  VariationField out;
  out.values.assign(v.size(), Vec{0.0, 0.0, 0.0});

#pragma omp parallel
  {
    std::vector<Index> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Vec& x = v[i];
      const double inv_fi = inv_f[i];
      Vec g{0.0, 0.0, 0.0};
      sources(x, static_cast<std::size_t>(i), scratch, [&](std::size_t k) {
        if (w[k] == 0.0) return;
        const double e = w[k] * std::exp(-dist2<D>(x, v[k]) * inv2e) * (inv_fi + inv_f[k]);
        for (int a = 0; a < D; ++a) g[a] += (x[a] - v[k][a]) * e;
      });
      for (int a = 0; a < D; ++a) out.values[i][a] = scale * g[a];
    }
  }
  return out;
}

// Source selectors handed to the *_impl templates.
template <int D>
auto radius_sources(std::span<const Vec> src, double sigma, const CellList* cl) {
  const double s2 = std::isinf(sigma) ? kInf : sigma * sigma;
  return [src, s2, cl](const Vec& x, std::size_t, std::vector<Index>& scratch, auto&& visit) {
    for_each_source<D>(x, src, s2, cl, scratch, visit);
  };
}

inline auto pair_sources(const PairList& pairs) {
  return [&pairs](const Vec&, std::size_t t, std::vector<Index>&, auto&& visit) {
    for (Index k : pairs.neighbors(t)) visit(static_cast<std::size_t>(k));
  };
}

// Per-axis Gaussian factors exp(-(x - c_a)^2 / (2 eps)) for every grid
// coordinate c_a. Factors below exp(-46) are set to 0; they sit far below
// double rounding of any sum they enter. Returns the nonzero window [lo, hi).
struct Window {
  int lo, hi;
};

constexpr double kTailExponent = 46.0;

Window axis_factors(double x, const VelocityGrid& grid, double inv2e, double* out) {
  const double reach = std::sqrt(kTailExponent / inv2e);
  int lo = static_cast<int>(std::floor((x - reach + grid.L) / grid.h)) - 1;
  int hi = static_cast<int>(std::ceil((x + reach + grid.L) / grid.h)) + 1;
  lo = std::clamp(lo, 0, grid.n_o);
  hi = std::clamp(hi, lo, grid.n_o);
  std::fill(out, out + grid.n_o, 0.0);
  int wlo = hi, whi = lo;
  for (int a = lo; a < hi; ++a) {
    const double t = x - grid.axis_coord(a);
    const double e = t * t * inv2e;
    if (e > kTailExponent) continue;
    out[a] = std::exp(-e);
    wlo = std::min(wlo, a);
    whi = a + 1;
  }
  if (wlo >= whi) return {0, 0};
  return {wlo, whi};
}

DensityField blob_grid_2d(const ParticleEnsemble& ens, const VelocityGrid& grid, double eps) {
  const int n = grid.n_o;
  const std::size_t np = ens.size();
  const double inv2e = 1.0 / (2.0 * eps);
  std::vector<double> gx(np * n), gy(np * n);
  std::vector<Window> wx(np), wy(np);
  const auto npi = static_cast<std::ptrdiff_t>(np);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < npi; ++k) {
    wx[k] = axis_factors(ens.velocities[k][0], grid, inv2e, &gx[k * n]);
    wy[k] = axis_factors(ens.velocities[k][1], grid, inv2e, &gy[k * n]);
  }
  DensityField out;
  out.target = DensityTarget::GridCenters;
  out.values.assign(grid.size(), 0.0);
  const double norm = mollifier_norm(eps, 2);
#pragma omp parallel for schedule(static)
  for (int a = 0; a < n; ++a) {
    double* row = &out.values[static_cast<std::size_t>(a) * n];
    for (std::size_t k = 0; k < np; ++k) {
      if (a < wx[k].lo || a >= wx[k].hi) continue;
      const double t = ens.weights[k] * gx[k * n + a];
      if (t == 0.0) continue;
      const double* gyk = &gy[k * n];
      const int lo = wy[k].lo, hi = wy[k].hi;
#pragma omp simd
      for (int b = lo; b < hi; ++b) row[b] += t * gyk[b];
    }
    for (int b = 0; b < n; ++b) row[b] *= norm;
  }
  return out;
}

DensityField blob_grid_3d(const ParticleEnsemble& ens, const VelocityGrid& grid, double eps) {
  const int n = grid.n_o;
  const std::size_t np = ens.size();
  const double inv2e = 1.0 / (2.0 * eps);
  std::vector<double> gx(np * n), gy(np * n), gz(np * n);
  std::vector<Window> wx(np), wy(np), wz(np);
  const auto npi = static_cast<std::ptrdiff_t>(np);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < npi; ++k) {
    wx[k] = axis_factors(ens.velocities[k][0], grid, inv2e, &gx[k * n]);
    wy[k] = axis_factors(ens.velocities[k][1], grid, inv2e, &gy[k * n]);
    wz[k] = axis_factors(ens.velocities[k][2], grid, inv2e, &gz[k * n]);
  }
  DensityField out;
  out.target = DensityTarget::GridCenters;
  out.values.assign(grid.size(), 0.0);
  const double norm = mollifier_norm(eps, 3);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static)
  for (int a = 0; a < n; ++a) {
    double* slab = &out.values[a * nn];
    for (std::size_t k = 0; k < np; ++k) {
      if (a < wx[k].lo || a >= wx[k].hi) continue;
      const double t = ens.weights[k] * gx[k * n + a];
      if (t == 0.0) continue;
      const double* gzk = &gz[k * n];
      const int clo = wz[k].lo, chi = wz[k].hi;
      for (int b = wy[k].lo; b < wy[k].hi; ++b) {
        const double t2 = t * gy[k * n + b];
        if (t2 == 0.0) continue;
        double* row = slab + static_cast<std::size_t>(b) * n;
#pragma omp simd
        for (int c = clo; c < chi; ++c) row[c] += t2 * gzk[c];
      }
    }
    for (std::size_t m = 0; m < nn; ++m) slab[m] *= norm;
  }
  return out;
}

VariationField type1_dense_2d(const ParticleEnsemble& ens, const VelocityGrid& grid,
                              std::span<const double> log_f, double eps) {
  const int n = grid.n_o;
  const auto np = static_cast<std::ptrdiff_t>(ens.size());
  const double inv2e = 1.0 / (2.0 * eps);
  const double scale = grid.cell_volume() * mollifier_norm(eps, 2);
  VariationField out;
  out.values.assign(ens.size(), Vec{0.0, 0.0, 0.0});
  for (double lf : log_f)
    if (!std::isfinite(lf)) throw NumericalError("type-I gradient got a non-finite log density");

#pragma omp parallel
  {
    std::vector<double> gx(n), gy(n), dx(n), dy(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < np; ++i) {
      const Vec& x = ens.velocities[i];
      const Window wx = axis_factors(x[0], grid, inv2e, gx.data());
      const Window wy = axis_factors(x[1], grid, inv2e, gy.data());
      for (int a = 0; a < n; ++a) {
        dx[a] = -(x[0] - grid.axis_coord(a)) / eps * gx[a];
        dy[a] = -(x[1] - grid.axis_coord(a)) / eps * gy[a];
      }
      double fx = 0.0, fy = 0.0;
      for (int a = wx.lo; a < wx.hi; ++a) {
        if (gx[a] == 0.0) continue;
        const double* row = &log_f[static_cast<std::size_t>(a) * n];
        double r_g = 0.0, r_d = 0.0;
#pragma omp simd reduction(+ : r_g, r_d)
        for (int b = wy.lo; b < wy.hi; ++b) {
          r_g += gy[b] * row[b];
          r_d += dy[b] * row[b];
        }
        fx += dx[a] * r_g;
        fy += gx[a] * r_d;
      }
      out.values[i] = {scale * fx, scale * fy, 0.0};
    }
  }
  return out;
}

VariationField type1_dense_3d(const ParticleEnsemble& ens, const VelocityGrid& grid,
                              std::span<const double> log_f, double eps) {
  const int n = grid.n_o;
  const auto np = static_cast<std::ptrdiff_t>(ens.size());
  const double inv2e = 1.0 / (2.0 * eps);
  const double scale = grid.cell_volume() * mollifier_norm(eps, 3);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  VariationField out;
  out.values.assign(ens.size(), Vec{0.0, 0.0, 0.0});
  for (double lf : log_f)
    if (!std::isfinite(lf)) throw NumericalError("type-I gradient got a non-finite log density");

#pragma omp parallel
  {
    std::vector<double> gx(n), gy(n), gz(n), dx(n), dy(n), dz(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < np; ++i) {
      const Vec& x = ens.velocities[i];
      const Window wx = axis_factors(x[0], grid, inv2e, gx.data());
      const Window wy = axis_factors(x[1], grid, inv2e, gy.data());
      const Window wz = axis_factors(x[2], grid, inv2e, gz.data());
      for (int a = 0; a < n; ++a) {
        const double c = grid.axis_coord(a);
        dx[a] = -(x[0] - c) / eps * gx[a];
        dy[a] = -(x[1] - c) / eps * gy[a];
        dz[a] = -(x[2] - c) / eps * gz[a];
      }
      double fx = 0.0, fy = 0.0, fz = 0.0;
      for (int a = wx.lo; a < wx.hi; ++a) {
        if (gx[a] == 0.0) continue;
        double s_gg = 0.0, s_gd = 0.0, s_dg = 0.0;  // (y factor, z factor)
        for (int b = wy.lo; b < wy.hi; ++b) {
          if (gy[b] == 0.0) continue;
          const double* row = &log_f[a * nn + static_cast<std::size_t>(b) * n];
          double r_g = 0.0, r_d = 0.0;
#pragma omp simd reduction(+ : r_g, r_d)
          for (int c = wz.lo; c < wz.hi; ++c) {
            r_g += gz[c] * row[c];
            r_d += dz[c] * row[c];
          }
          s_gg += gy[b] * r_g;
          s_dg += dy[b] * r_g;
          s_gd += gy[b] * r_d;
        }
        fx += dx[a] * s_gg;
        fy += gx[a] * s_dg;
        fz += gx[a] * s_gd;
      }
      out.values[i] = {scale * fx, scale * fy, scale * fz};
    }
  }
  return out;
}

}  // namespace

DensityField blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                          double epsilon, double sigma, const CellList* cl, DensityTarget kind) {
  check_cell_list(cl, sigma, ens.size());
  if (ens.d == 2)
    return blob_impl<2>(ens, targets, epsilon, kind, radius_sources<2>(ens.velocities, sigma, cl));
  return blob_impl<3>(ens, targets, epsilon, kind, radius_sources<3>(ens.velocities, sigma, cl));
}

DensityField blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                          double epsilon, const PairList& pairs, DensityTarget kind) {
  if (pairs.target_count() != targets.size())
    throw ConfigError("pair list does not match the target count");
  if (ens.d == 2) return blob_impl<2>(ens, targets, epsilon, kind, pair_sources(pairs));
  return blob_impl<3>(ens, targets, epsilon, kind, pair_sources(pairs));
}

DensityField blob_density_on_grid(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                  double epsilon) {
  if (grid.d != ens.d) throw ConfigError("grid and ensemble dimensions differ");
  return ens.d == 2 ? blob_grid_2d(ens, grid, epsilon) : blob_grid_3d(ens, grid, epsilon);
}

std::vector<double> log_density(const DensityField& f, double floor) {
  std::vector<double> out(f.values.size());
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] = f.values[l] > floor ? std::log(f.values[l]) : 0.0;
  return out;
}

VariationField variation_gradient_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                        std::span<const double> log_f, double epsilon,
                                        double sigma, const CellList* cl_grid) {
  if (grid.d != ens.d) throw ConfigError("grid and ensemble dimensions differ");
  if (log_f.size() != grid.size()) throw ConfigError("log density must have one value per cell");
  check_cell_list(cl_grid, sigma, grid.size());
  if (ens.d == 2)
    return type1_impl<2>(ens, grid, log_f, epsilon, radius_sources<2>(grid.centers, sigma, cl_grid));
  return type1_impl<3>(ens, grid, log_f, epsilon, radius_sources<3>(grid.centers, sigma, cl_grid));
}

VariationField variation_gradient_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                        std::span<const double> log_f, double epsilon,
                                        const PairList& particle_to_grid) {
  if (grid.d != ens.d) throw ConfigError("grid and ensemble dimensions differ");
  if (log_f.size() != grid.size()) throw ConfigError("log density must have one value per cell");
  if (particle_to_grid.target_count() != ens.size())
    throw ConfigError("pair list does not match the particle count");
  if (ens.d == 2) return type1_impl<2>(ens, grid, log_f, epsilon, pair_sources(particle_to_grid));
  return type1_impl<3>(ens, grid, log_f, epsilon, pair_sources(particle_to_grid));
}

VariationField variation_gradient_type1_dense(const ParticleEnsemble& ens,
                                              const VelocityGrid& grid,
                                              std::span<const double> log_f, double epsilon) {
  if (grid.d != ens.d) throw ConfigError("grid and ensemble dimensions differ");
  if (log_f.size() != grid.size()) throw ConfigError("log density must have one value per cell");
  return ens.d == 2 ? type1_dense_2d(ens, grid, log_f, epsilon)
                    : type1_dense_3d(ens, grid, log_f, epsilon);
}

VariationField variation_gradient_type2(const ParticleEnsemble& ens, const DensityField& f,
                                        double epsilon, double sigma, const CellList* cl) {
  check_cell_list(cl, sigma, ens.size());
  if (ens.d == 2) return type2_impl<2>(ens, f, epsilon, radius_sources<2>(ens.velocities, sigma, cl));
  return type2_impl<3>(ens, f, epsilon, radius_sources<3>(ens.velocities, sigma, cl));
}

VariationField variation_gradient_type2(const ParticleEnsemble& ens, const DensityField& f,
                                        double epsilon, const PairList& pairs) {
  if (pairs.target_count() != ens.size())
    throw ConfigError("pair list does not match the particle count");
  if (ens.d == 2) return type2_impl<2>(ens, f, epsilon, pair_sources(pairs));
  return type2_impl<3>(ens, f, epsilon, pair_sources(pairs));
}

double entropy_type1(const VelocityGrid& grid, const DensityField& f, double floor) {
  if (f.values.size() != grid.size()) throw ConfigError("density must have one value per cell");
  double s = 0.0;
  for (double v : f.values) {
    if (v < 0.0) throw NumericalError("negative blob density");
    if (v > floor) s += v * std::log(v);
  }
  return grid.cell_volume() * s;
}

double entropy_type2(const ParticleEnsemble& ens, const DensityField& f) {
  if (f.values.size() != ens.size())
    throw ConfigError("type-II entropy needs one density value per particle");
  double s = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.weights[i] == 0.0) continue;
    if (!(f.values[i] > 0.0))
      throw NumericalError("non-positive blob density at weighted particle " + std::to_string(i));
    s += ens.weights[i] * std::log(f.values[i]);
  }
  return s;
}

}  // namespace landau
