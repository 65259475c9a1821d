#pragma once

// Pointwise Landau collision kernel and Gaussian mollifier.

#include <array>
#include <cmath>
#include <numbers>

#include "landau/core.hpp"

namespace landau {

/// Symmetric d x d matrix; only the leading d x d block is meaningful.
struct KernelMatrix {
  int d = 2;
  std::array<std::array<double, 3>, 3> m{};

  double operator()(int a, int b) const { return m[a][b]; }
  double max_abs() const;
};

/// |z|^gamma from the squared norm, with the optional delta_min floor for
/// gamma < 0. Callers must handle r2 == 0 themselves (A(0) := 0).
inline double radial_power(double r2, const KernelSpec& spec) {
  if (spec.gamma < 0.0 && spec.delta_min > 0.0) {
    const double floor2 = spec.delta_min * spec.delta_min;
    if (r2 < floor2) r2 = floor2;
  }
  if (spec.gamma == 0.0) return 1.0;
  if (spec.gamma == -3.0) return 1.0 / (r2 * std::sqrt(r2));
  if (spec.gamma == -2.0) return 1.0 / r2;
  if (spec.gamma == -1.0) return 1.0 / std::sqrt(r2);
  if (spec.gamma == 1.0) return std::sqrt(r2);
  return std::pow(r2, 0.5 * spec.gamma);
}

/// A(z) = lambda |z|^gamma (|z|^2 I - z z^T); the zero matrix at z = 0.
KernelMatrix collision_kernel(const Vec& z, const KernelSpec& spec);

/// A(z) b without forming the matrix.
Vec apply_collision_kernel(const Vec& z, const Vec& b, const KernelSpec& spec);

/// (2 pi eps)^{-d/2}
inline double mollifier_norm(double epsilon, int d) {
  return std::pow(2.0 * std::numbers::pi * epsilon, -0.5 * d);
}

/// Gaussian psi_eps(v) = (2 pi eps)^{-d/2} exp(-|v|^2 / (2 eps)).
double mollifier(const Vec& v, double epsilon, int d);

/// grad psi_eps(v) = -(v / eps) psi_eps(v).
Vec mollifier_gradient(const Vec& v, double epsilon, int d);

}  // namespace landau
