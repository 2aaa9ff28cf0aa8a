#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "imexssp/errors.hpp"
#include "imexssp/problems.hpp"

using namespace imexssp;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

Vector fourier_mode(int n, int m, double shift = 0.0) {
  Vector u(n);
  for (int j = 0; j < n; ++j) u[j] = std::cos(2.0 * kPi * m * j / n + shift);
  return u;
}

// Classical RK4 on u' = (F + G) u.
Vector rk4(const LinearSplitOperator& op, Vector u, double t, int n) {
  const Matrix m = op.explicit_op.to_dense() + op.implicit_op.to_dense();
  const double h = t / n;
  for (int i = 0; i < n; ++i) {
    const Vector k1 = m * u;
    const Vector k2 = m * (u + 0.5 * h * k1);
    const Vector k3 = m * (u + 0.5 * h * k2);
    const Vector k4 = m * (u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace

TEST_SUITE("problems") {
  TEST_CASE("constant fields are steady") {
    GridSpec grid;
    AdvectionDiffusionConfig cfg;
    cfg.diffusion_number = 0.5;
    const auto op = advection_diffusion_1d(grid, cfg);
    const Vector one = Vector::Ones(grid.n_cells);
    CHECK(op.explicit_op.apply(one).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(op.implicit_op.apply(one).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("advection stencil eigenvalues match the Fourier symbol") {
    GridSpec grid;
    grid.n_cells = 64;
    AdvectionDiffusionConfig cfg;
    cfg.courant = 0.4;
    cfg.diffusion_number = 0.3;
    const auto op = advection_diffusion_1d(grid, cfg);
    const double dt = advection_dt(grid, cfg);
    const int n = grid.n_cells;
    for (int m : {1, 5, 17, 32}) {
      CAPTURE(m);
      const double phi = 2.0 * kPi * m / n;
      // The complex mode e^{i j phi} is an eigenvector; use its real and imaginary parts.
      const Vector re = fourier_mode(n, m), im = fourier_mode(n, m, -kPi / 2.0);
      const C sym = fourier_symbol_kappa(cfg, phi) / dt;
      const Vector fre = op.explicit_op.apply(re);
      CHECK((fre - (sym.real() * re - sym.imag() * im)).cwiseAbs().maxCoeff() < 1e-10 * std::abs(sym) + 1e-10);
      const double g = -(2.0 * cfg.diffusion_number / dt) * (1.0 - std::cos(phi));
      CHECK((op.implicit_op.apply(re) - g * re).cwiseAbs().maxCoeff() < 1e-10 * std::abs(g) + 1e-10);
      CHECK(std::abs(op.explicit_op.stencil()->symbol(phi) - sym) < 1e-10 * std::abs(sym) + 1e-12);
    }
  }

  TEST_CASE("kappa = 1/3 stencil is third order") {
    // Truncation error on a smooth periodic function decays like dx^3.
    std::vector<double> err;
    for (int n : {40, 80, 160}) {
      GridSpec grid;
      grid.n_cells = n;
      const auto op = advection_diffusion_1d(grid, AdvectionDiffusionConfig{});
      Vector u(n), du(n);
      for (int j = 0; j < n; ++j) {
        const double x = (j + 0.5) / n;
        u[j] = std::sin(2.0 * kPi * x);
        du[j] = -2.0 * kPi * std::cos(2.0 * kPi * x);
      }
      err.push_back((op.explicit_op.apply(u) - du).cwiseAbs().maxCoeff());
    }
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(std::log2(err[1] / err[2]) == doctest::Approx(3.0).epsilon(0.05));
  }

  TEST_CASE("fourier symbol behaviour near phi = 0") {
    AdvectionDiffusionConfig cfg;
    cfg.courant = 1.0;
    CHECK(std::abs(fourier_symbol_kappa(cfg, 0.0)) < 1e-15);
    for (double phi : {1e-2, 5e-3}) {
      const C s = fourier_symbol_kappa(cfg, phi);
      CHECK(s.imag() == doctest::Approx(-phi).epsilon(1e-3));
      CHECK(s.real() == doctest::Approx(-std::pow(phi, 4) / 12.0).epsilon(1e-2));
    }
  }

  TEST_CASE("forward Euler upwind at sigma = 1 is an exact shift") {
    GridSpec grid;
    grid.n_cells = 40;
    const auto op = upwind_advection(grid, 1.0);
    const Vector u = random_monotone_data(grid, 7);
    const double dt = grid.dx();
    const Vector v = u + dt * op.explicit_op.apply(u);
    for (int j = 0; j < grid.n_cells; ++j) CHECK(v[j] == doctest::Approx(u[(j + grid.n_cells - 1) % grid.n_cells]));
  }

  TEST_CASE("forward Euler upwind above sigma = 1 increases TV") {
    GridSpec grid;
    grid.n_cells = 40;
    const auto op = upwind_advection(grid, 1.2);
    const Vector u = step_data(grid);
    const Vector v = u + 1.2 * grid.dx() * op.explicit_op.apply(u);
    CHECK(total_variation(v) > total_variation(u) + 0.1);
  }

  TEST_CASE("total variation") {
    GridSpec grid;
    grid.n_cells = 20;
    CHECK(total_variation(Vector::Constant(20, 3.0)) == 0.0);
    CHECK(total_variation(step_data(grid)) == doctest::Approx(2.0));
    const Vector u = random_monotone_data(grid, 11);
    CHECK(total_variation(u.reverse()) == doctest::Approx(total_variation(u)));
    CHECK(total_variation(Vector::Constant(1, 1.0)) == 0.0);
  }

  TEST_CASE("random data is seeded and in range") {
    GridSpec grid;
    grid.n_cells = 50;
    const Vector a = random_monotone_data(grid, 99), b = random_monotone_data(grid, 99);
    CHECK(a == b);
    CHECK(a != random_monotone_data(grid, 100));
    CHECK(a.minCoeff() >= 0.0);
    CHECK(a.maxCoeff() < 1.0);
    for (int j = 1; j < 25; ++j) CHECK(a[j] >= a[j - 1]);
    for (int j = 26; j < 50; ++j) CHECK(a[j] <= a[j - 1]);
  }

  TEST_CASE("dahlquist problems") {
    const auto real = dahlquist(-1.0, -2.0);
    CHECK(real.y0.size() == 1);
    CHECK(real.exact(1.0)[0] == doctest::Approx(std::exp(-3.0)));
    const auto cplx = dahlquist(C(0.0, 1.0), 0.0);
    REQUIRE(cplx.y0.size() == 2);
    const C y = as_complex(cplx.exact(kPi / 2.0));
    CHECK(y.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(y.imag() == doctest::Approx(1.0));
    const Vector dy = cplx.op.explicit_op.apply(cplx.y0);
    CHECK(as_complex(dy) == C(0.0, 1.0));
  }

  TEST_CASE("periodic exact solution agrees with RK4") {
    GridSpec grid;
    grid.n_cells = 24;
    AdvectionDiffusionConfig cfg;
    cfg.diffusion_number = 0.4;
    const auto op = advection_diffusion_1d(grid, cfg);
    const Vector u0 = step_data(grid);
    const double t = 0.05;
    const Vector exact = periodic_exact_solution(op, u0, t);
    const Vector ref = rk4(op, u0, t, 4000);
    CHECK((exact - ref).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((periodic_exact_solution(op, u0, 0.0) - u0).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("invalid configurations") {
    GridSpec small;
    small.n_cells = 4;
    CHECK_THROWS_AS(advection_diffusion_1d(small, AdvectionDiffusionConfig{}), ParameterError);
    AdvectionDiffusionConfig bad;
    bad.speed = 0.0;
    CHECK_THROWS_AS(advection_diffusion_1d(GridSpec{}, bad), ParameterError);
    CHECK_THROWS_AS(upwind_advection(GridSpec{}, 0.0), ParameterError);
    CHECK_THROWS_AS(as_complex(Vector::Zero(3)), ParameterError);
  }
}
