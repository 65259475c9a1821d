#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "landau/kernels.hpp"

using namespace landau;
using std::numbers::pi;

namespace {

KernelSpec spec(int d, double gamma, double lambda) {
  KernelSpec k;
  k.d = d;
  k.gamma = gamma;
  k.lambda = lambda;
  return k;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("projection orthogonal to z") {
    const KernelMatrix A = collision_kernel({1.0, 0.0, 0.0}, spec(2, 0.0, 1.0 / 16.0));
    CHECK(A(0, 0) == 0.0);
    CHECK(A(0, 1) == 0.0);
    CHECK(A(1, 0) == 0.0);
    CHECK(A(1, 1) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  }

  TEST_CASE("zero matrix at the origin for any gamma") {
    for (double g : {0.0, -3.0, -2.5, 1.0}) {
      const KernelMatrix A = collision_kernel({0.0, 0.0, 0.0}, spec(3, g, 1.0));
      CHECK(A.max_abs() == 0.0);
    }
  }

  TEST_CASE("z spans the kernel of A(z)") {
    const Vec z{1.0, 2.0, 0.0};
    const KernelSpec k = spec(2, 0.0, 1.0 / 16.0);
    const Vec Az = apply_collision_kernel(z, z, k);
    CHECK(std::abs(Az[0]) < 1e-15);
    CHECK(std::abs(Az[1]) < 1e-15);
    const KernelMatrix A = collision_kernel(z, k);
    CHECK(std::abs(A(0, 0) * z[0] + A(0, 1) * z[1]) < 1e-15);
    CHECK(std::abs(A(1, 0) * z[0] + A(1, 1) * z[1]) < 1e-15);
  }

  TEST_CASE("Coulomb kernel hand evaluation") {
    // lambda 2^-3 (4 I - z z^T) with z = (2,0,0)
    const KernelMatrix A = collision_kernel({2.0, 0.0, 0.0}, spec(3, -3.0, 1.0 / (4.0 * pi)));
    CHECK(std::abs(A(0, 0)) < 1e-16);
    CHECK(A(1, 1) == doctest::Approx(1.0 / (8.0 * pi)).epsilon(1e-14));
    CHECK(A(2, 2) == doctest::Approx(1.0 / (8.0 * pi)).epsilon(1e-14));
    CHECK(A(0, 1) == 0.0);
    CHECK(A(1, 2) == 0.0);
  }

  TEST_CASE("symmetry, null space and continuity on random vectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int d : {2, 3})
      for (double g : {0.0, -3.0, -1.5, 1.0, 0.5}) {
        const KernelSpec k = spec(d, g, 0.7);
        for (int trial = 0; trial < 200; ++trial) {
          Vec z{u(rng), u(rng), d == 3 ? u(rng) : 0.0};
          Vec mz{-z[0], -z[1], -z[2]};
          const KernelMatrix A = collision_kernel(z, k);
          const KernelMatrix B = collision_kernel(mz, k);
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              CHECK(A(a, b) == B(a, b));
              CHECK(A(a, b) == A(b, a));
            }
          const double zn = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
          for (int a = 0; a < d; ++a) {
            double s = 0.0;
            for (int b = 0; b < d; ++b) s += A(a, b) * z[b];
            CHECK(std::abs(s) <= 1e-12 * A.max_abs() * zn);
          }
          const Vec b{u(rng), u(rng), d == 3 ? u(rng) : 0.0};
          const Vec Ab = apply_collision_kernel(z, b, k);
          for (int a = 0; a < d; ++a) {
            double s = 0.0;
            for (int c = 0; c < d; ++c) s += A(a, c) * b[c];
            CHECK(Ab[a] == doctest::Approx(s).epsilon(1e-12).scale(A.max_abs()));
          }
        }
        if (g >= 0.0)
          for (double r : {1e-1, 1e-3, 1e-6}) {
            const KernelMatrix A = collision_kernel({r, -r, 0.0}, k);
            CHECK(A.max_abs() <= k.lambda * std::pow(std::sqrt(2.0) * r, g + 2.0) * (1 + 1e-12));
          }
      }
  }

  TEST_CASE("delta_min floors the radial power") {
    KernelSpec k = spec(3, -3.0, 1.0);
    k.delta_min = 0.5;
    CHECK(radial_power(1e-6, k) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(radial_power(4.0, k) == doctest::Approx(0.125).epsilon(1e-14));
    k.gamma = -2.2;
    CHECK(radial_power(9.0, k) == doctest::Approx(std::pow(3.0, -2.2)).epsilon(1e-14));
  }

  TEST_CASE("mollifier peak values") {
    CHECK(mollifier({0, 0, 0}, 1.0, 2) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
    CHECK(mollifier({0, 0, 0}, 0.5, 3) == doctest::Approx(std::pow(pi, -1.5)).epsilon(1e-15));
  }

  TEST_CASE("mollifier has unit mass under midpoint quadrature") {
    const double eps = 0.1, h = 0.05, L = 8.0;
    const int n = static_cast<int>(2 * L / h);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += mollifier({-L + (i + 0.5) * h, -L + (j + 0.5) * h, 0.0}, eps, 2);
    CHECK(std::abs(s * h * h - 1.0) < 1e-8);
  }

  TEST_CASE("mollifier gradient values") {
    const Vec g0 = mollifier_gradient({0, 0, 0}, 0.3, 3);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);
    CHECK(g0[2] == 0.0);
    const Vec g = mollifier_gradient({1.0, 0.0, 0.0}, 1.0, 2);
    CHECK(g[0] == doctest::Approx(-std::exp(-0.5) / (2.0 * pi)).epsilon(1e-15));
    CHECK(g[1] == 0.0);
  }

  TEST_CASE("mollifier gradient matches central differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double step = 1e-5;
    for (int d : {2, 3})
      for (double eps : {0.25, 1.0, 2.0})
        for (int trial = 0; trial < 100; ++trial) {
          Vec v{u(rng), u(rng), d == 3 ? u(rng) : 0.0};
          const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
          // scale into 0.1 sqrt(eps) .. 5 sqrt(eps)
          const double target = std::sqrt(eps) * (0.1 + 4.9 * (trial + 0.5) / 100.0);
          for (double& x : v) x *= target / r;
          const Vec g = mollifier_gradient(v, eps, d);
          double gn = 0.0, en = 0.0;
          for (int a = 0; a < d; ++a) {
            Vec p = v, m = v;
            p[a] += step;
            m[a] -= step;
            const double fd = (mollifier(p, eps, d) - mollifier(m, eps, d)) / (2.0 * step);
            en = std::max(en, std::abs(fd - g[a]));
            gn = std::max(gn, std::abs(g[a]));
          }
          CHECK(en <= 1e-7 * gn);
        }
  }
}
