#include "landau/kernels.hpp"

#include <algorithm>

namespace landau {

double KernelMatrix::max_abs() const {
  double r = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) r = std::max(r, std::abs(m[a][b]));
  return r;
}

KernelMatrix collision_kernel(const Vec& z, const KernelSpec& spec) {
  KernelMatrix out;
  out.d = spec.d;
  double r2 = 0.0;
  for (int a = 0; a < spec.d; ++a) r2 += z[a] * z[a];
  if (r2 == 0.0) return out;
  const double s = spec.lambda * radial_power(r2, spec);
  for (int a = 0; a < spec.d; ++a) {
    for (int b = 0; b < spec.d; ++b) {
      const double delta = (a == b) ? r2 : 0.0;
      out.m[a][b] = s * (delta - z[a] * z[b]);
    }
  }
  return out;
}

Vec apply_collision_kernel(const Vec& z, const Vec& b, const KernelSpec& spec) {
  Vec out{0.0, 0.0, 0.0};
  double r2 = 0.0, zb = 0.0;
  for (int a = 0; a < spec.d; ++a) {
    r2 += z[a] * z[a];
    zb += z[a] * b[a];
  }
  if (r2 == 0.0) return out;
  const double s = spec.lambda * radial_power(r2, spec);
  for (int a = 0; a < spec.d; ++a) out[a] = s * (r2 * b[a] - z[a] * zb);
  return out;
}

double mollifier(const Vec& v, double epsilon, int d) {
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) r2 += v[a] * v[a];
  return mollifier_norm(epsilon, d) * std::exp(-r2 / (2.0 * epsilon));
}

Vec mollifier_gradient(const Vec& v, double epsilon, int d) {
  const double psi = mollifier(v, epsilon, d);
  Vec g{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) g[a] = -(v[a] / epsilon) * psi;
  return g;
}

}  // namespace landau
