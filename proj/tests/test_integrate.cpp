#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "imexssp/errors.hpp"
#include "imexssp/integrate.hpp"
#include "imexssp/problems.hpp"

using namespace imexssp;
using C = std::complex<double>;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

LinearSplitOperator scalar_op(double f, double g) {
  return LinearSplitOperator(LinearOperator::dense(Matrix::Constant(1, 1, f)),
                             LinearOperator::dense(Matrix::Constant(1, 1, g)));
}

}  // namespace

TEST_SUITE("integrate") {
  TEST_CASE("ssp3 preserves constants") {
    const auto s = ssp_explicit(3);
    const auto op = scalar_op(0.0, 0.0);
    History h(3, 0.1);
    for (int i = 0; i < 3; ++i) h.push(0.1 * i, scalar(1.0), scalar(0.0), scalar(0.0));
    const Vector y = step(s, h, op);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.time() == doctest::Approx(0.3));
    CHECK(h.y(0)[0] == y[0]);
  }

  TEST_CASE("mcnab(0) reproduces the Crank-Nicolson amplification factor") {
    const double mu = -3.0, dt = 0.1;
    const auto s = mcnab(0.0);
    const auto op = scalar_op(0.0, mu);
    History h(2, dt);
    Stepper st(s, op, dt);
    st.push_level(h, 0.0, scalar(1.0));
    st.push_level(h, dt, scalar(0.7));
    const double y = st.step(h)[0];
    const double amp = (1.0 + dt * mu / 2.0) / (1.0 - dt * mu / 2.0);
    CHECK(y == doctest::Approx(amp * 0.7).epsilon(1e-14));
  }

  TEST_CASE("imex-biased-k3 local error is third order") {
    // One step from exact history on y' = mu y; the defect halves by about 8.
    const double mu = -2.0;
    const auto s = make_scheme("imex-biased-k3");
    const auto op = scalar_op(0.0, mu);
    std::vector<double> err;
    for (double dt : {0.02, 0.01, 0.005}) {
      History h(3, dt);
      Stepper st(s, op, dt);
      for (int i = 0; i < 3; ++i) st.push_level(h, i * dt, scalar(std::exp(mu * i * dt)));
      err.push_back(std::abs(st.step(h)[0] - std::exp(mu * 3 * dt)));
    }
    const double rate = std::log2(err[1] / err[2]);
    CHECK(rate == doctest::Approx(3.0).epsilon(0.05));
  }

  TEST_CASE("exact start samples the true solution") {
    const auto p = dahlquist(-1.0, 0.0);
    const auto h = start(p, ssp_explicit(3), 0.1, StartMode::exact);
    CHECK(h.y(2)[0] == doctest::Approx(1.0));
    CHECK(h.y(1)[0] == doctest::Approx(std::exp(-0.1)));
    CHECK(h.y(0)[0] == doctest::Approx(std::exp(-0.2)));
    CHECK(h.full());
    const auto h2 = start(p, mcnab(0.0), 0.1, StartMode::exact);
    CHECK(h2.steps() == 2);
    CHECK(h2.filled() == 2);
  }

  TEST_CASE("exact start without an exact solution fails") {
    SplitProblem p{scalar_op(0.0, -1.0), scalar(1.0), 0.0, {}};
    CHECK_THROWS_AS(start(p, mcnab(0.0), 0.1, StartMode::exact), ParameterError);
    CHECK_NOTHROW(start(p, mcnab(0.0), 0.1, StartMode::euler_bootstrap));
  }

  TEST_CASE("bootstrap start keeps second order") {
    const auto p = dahlquist(-0.4, -0.6);
    const auto s = make_scheme("imex-biased-k4");
    std::vector<double> err;
    // The start error is O(dt^2.5) so the rate approaches 2 from below.
    for (double dt : {1.0 / 320, 1.0 / 640, 1.0 / 1280}) {
      const auto traj = integrate(p, s, 1.0, dt, StartMode::euler_bootstrap);
      err.push_back(std::abs(traj.states.back()[0] - std::exp(-1.0)));
    }
    CHECK(std::log2(err[0] / err[1]) > 1.85);
    CHECK(std::log2(err[1] / err[2]) > 1.9);
  }

  TEST_CASE("dahlquist error is O(dt^2) at t = 1") {
    const auto p = dahlquist(-0.4, -0.6);
    const auto traj = integrate(p, make_scheme("imex-biased-k3"), 1.0, 1e-3);
    CHECK(traj.times.size() == 1001);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    const double e = std::abs(traj.states.back()[0] - std::exp(-1.0));
    CHECK(e < 1e-6);
    CHECK(e > 1e-9);
  }

  TEST_CASE("zero operators give a constant trajectory") {
    SplitProblem p{LinearSplitOperator(LinearOperator::zero(3), LinearOperator::zero(3)), Vector::Constant(3, 2.5), 0.0,
                   [](double) { return Vector::Constant(3, 2.5); }};
    for (const auto& id : builtin_scheme_ids()) {
      const auto traj = integrate(p, make_scheme(id), 1.0, 0.05);
      for (const auto& y : traj.states) CHECK((y.array() - 2.5).abs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("blow-up is detected") {
    const auto p = dahlquist(-1.5, 0.0);
    try {
      integrate(p, ssp_explicit(3), 400.0, 1.0);
      FAIL("expected blow-up");
    } catch (const BlowUp& e) {
      CHECK(e.step() > 3);
      CHECK(e.norm() > 1e12);
      CHECK(std::string(e.what()).find("blow-up detected") != std::string::npos);
    }
  }

  TEST_CASE("step count must be integral") {
    const auto p = dahlquist(-1.0, 0.0);
    CHECK_THROWS_AS(integrate(p, ssp_explicit(3), 1.0, 0.3), ParameterError);
    CHECK_THROWS_AS(integrate(p, ssp_explicit(3), 0.0, 0.1), ParameterError);
    CHECK_THROWS_AS(History(3, 0.0), ParameterError);
  }

  TEST_CASE("step is linear in the history") {
    const auto s = make_scheme("imex-centred-k4", {0.25, 0.0});
    GridSpec grid;
    grid.n_cells = 16;
    AdvectionDiffusionConfig cfg;
    cfg.diffusion_number = 0.8;
    const auto op = advection_diffusion_1d(grid, cfg);
    const double dt = advection_dt(grid, cfg);
    Stepper st(s, op, dt);
    auto run = [&](const std::vector<Vector>& levels) {
      History h(4, dt);
      for (int i = 0; i < 4; ++i) st.push_level(h, i * dt, levels[static_cast<std::size_t>(i)]);
      return st.step(h);
    };
    std::vector<Vector> u, v, w;
    for (int i = 0; i < 4; ++i) {
      u.push_back(Vector::Random(16));
      v.push_back(Vector::Random(16));
      w.push_back(2.0 * u.back() - 3.0 * v.back());
    }
    CHECK((run(w) - (2.0 * run(u) - 3.0 * run(v))).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("cyclic tridiagonal path matches a dense solve") {
    PeriodicStencil st{12, {{-1, 1.3}, {0, -2.9}, {1, 0.7}}};
    const auto g = LinearOperator::periodic(st);
    const Vector rhs = Vector::Random(12);
    const ImplicitSolver fast(1.0, 0.4, g);
    Matrix m = -0.4 * g.to_dense();
    m.diagonal().array() += 1.0;
    const Vector dense = m.partialPivLu().solve(rhs);
    CHECK((fast.solve(rhs) - dense).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("singular implicit system") {
    // a_0 - dt c_0 mu = 0 for mcnab(0): 1 - 0.5 * dt * mu = 0 at dt = 1, mu = 2.
    const auto op = scalar_op(0.0, 2.0);
    CHECK_THROWS_AS(Stepper(mcnab(0.0), op, 1.0), StepFailure);
  }

  TEST_CASE("history ring buffer order") {
    History h(3, 1.0);
    for (int i = 0; i < 5; ++i) h.push(i, scalar(i), scalar(10 + i), scalar(20 + i));
    CHECK(h.y(0)[0] == 4.0);
    CHECK(h.y(1)[0] == 3.0);
    CHECK(h.y(2)[0] == 2.0);
    CHECK(h.g(2)[0] == 22.0);
    CHECK_THROWS_AS(h.y(3), ParameterError);
  }

  TEST_CASE("empirical stability examples") {
    CHECK(empirical_stability(ssp_explicit(3), -1.0, 0.0, 500));
    CHECK_FALSE(empirical_stability(ssp_explicit(3), -1.5, 0.0, 500));
    CHECK(empirical_stability(make_scheme("imex-biased-k3"), -1.0, -100.0, 500));
    CHECK_FALSE(empirical_stability(make_scheme("imex-biased-k3"), C(0.3, 0.0), C(0.0, 0.0), 500));
    CHECK_THROWS_AS(empirical_stability(ssp_explicit(3), -1.0, 0.0, 50), ParameterError);
  }

  TEST_CASE("operator application") {
    PeriodicStencil st{5, {{-1, 1.0}, {1, -1.0}}};
    const auto op = LinearOperator::periodic(st);
    Vector x(5);
    x << 1, 2, 3, 4, 5;
    const Vector y = op.apply(x);
    CHECK(y[0] == doctest::Approx(5.0 - 2.0));
    CHECK(y[4] == doctest::Approx(4.0 - 1.0));
    CHECK((op.to_dense() * x - y).norm() < 1e-14);
    CHECK(LinearOperator::zero(5).is_zero());
    CHECK_THROWS_AS(LinearSplitOperator(LinearOperator::zero(3), LinearOperator::zero(4)), ParameterError);
  }
}
