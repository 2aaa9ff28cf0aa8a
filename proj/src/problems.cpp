#include "imexssp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "imexssp/errors.hpp"

namespace imexssp {

void GridSpec::validate() const {
  if (n_cells < 8) throw ParameterError("grid needs at least 8 cells");
  if (!(domain_length > 0.0)) throw ParameterError("domain length must be positive");
  if (!periodic) throw ParameterError("only periodic grids are supported");
}

void AdvectionDiffusionConfig::validate() const {
  if (!(courant >= 0.0)) throw ParameterError("courant number must be non-negative");
  if (!(diffusion_number >= 0.0)) throw ParameterError("diffusion number must be non-negative");
  if (!(speed > 0.0)) throw ParameterError("advection speed must be positive");
}

SplitProblem dahlquist(std::complex<double> lambda, std::complex<double> mu, std::complex<double> y0) {
  const std::complex<double> rate = lambda + mu;
  if (lambda.imag() == 0.0 && mu.imag() == 0.0 && y0.imag() == 0.0) {
    Vector v0(1);
    v0 << y0.real();
    LinearSplitOperator op(LinearOperator::dense(Matrix::Constant(1, 1, lambda.real())),
                           LinearOperator::dense(Matrix::Constant(1, 1, mu.real())));
    auto exact = [rate, y0](double t) {
      Vector v(1);
      v << (std::exp(rate * t) * y0).real();
      return v;
    };
    return SplitProblem{std::move(op), std::move(v0), 0.0, exact};
  }
  auto as_matrix = [](std::complex<double> z) {
    Matrix m(2, 2);
    m << z.real(), -z.imag(), z.imag(), z.real();
    return m;
  };
  Vector v0(2);
  v0 << y0.real(), y0.imag();
  LinearSplitOperator op(LinearOperator::dense(as_matrix(lambda)), LinearOperator::dense(as_matrix(mu)));
  auto exact = [rate, y0](double t) {
    const std::complex<double> y = std::exp(rate * t) * y0;
    Vector v(2);
    v << y.real(), y.imag();
    return v;
  };
  return SplitProblem{std::move(op), std::move(v0), 0.0, exact};
}

std::complex<double> as_complex(const Vector& y) {
  if (y.size() == 1) return {y[0], 0.0};
  if (y.size() == 2) return {y[0], y[1]};
  throw ParameterError("not a dahlquist state");
}

double advection_dt(const GridSpec& grid, const AdvectionDiffusionConfig& cfg) {
  return cfg.courant * grid.dx() / cfg.speed;
}

LinearSplitOperator advection_diffusion_1d(const GridSpec& grid, const AdvectionDiffusionConfig& cfg) {
  grid.validate();
  cfg.validate();
  const double dx = grid.dx();
  const double k = cfg.kappa;
  // Difference of kappa-scheme face values for a > 0; kappa = 1/3 gives (2, 3, -6, 1) / 6.
  const double w_p1 = (1.0 + k) / 4.0;
  const double w_0 = (1.0 - k / 2.0) - (1.0 + k) / 4.0;
  const double w_m1 = -(1.0 - k) / 4.0 - (1.0 - k / 2.0);
  const double w_m2 = (1.0 - k) / 4.0;
  const double s = -cfg.speed / dx;
  PeriodicStencil adv{grid.n_cells, {{1, s * w_p1}, {0, s * w_0}, {-1, s * w_m1}, {-2, s * w_m2}}};

  PeriodicStencil diff{grid.n_cells, {}};
  if (cfg.diffusion_number > 0.0) {
    const double dt = advection_dt(grid, cfg);
    if (!(dt > 0.0)) throw ParameterError("diffusion needs a positive courant number to fix dt");
    const double coeff = cfg.diffusion_number / dt;  // D / dx^2
    diff.taps = {{-1, coeff}, {0, -2.0 * coeff}, {1, coeff}};
  }
  return LinearSplitOperator(LinearOperator::periodic(std::move(adv)), LinearOperator::periodic(std::move(diff)));
}

std::complex<double> fourier_symbol_kappa(const AdvectionDiffusionConfig& cfg, double phi) {
  const std::complex<double> e = std::polar(1.0, phi);
  return -cfg.courant * (2.0 * e + 3.0 - 6.0 / e + 1.0 / (e * e)) / 6.0;
}

LinearSplitOperator upwind_advection(const GridSpec& grid, double courant) {
  grid.validate();
  if (!(courant > 0.0)) throw ParameterError("courant number must be positive");
  const double inv_dx = 1.0 / grid.dx();
  PeriodicStencil adv{grid.n_cells, {{0, -inv_dx}, {-1, inv_dx}}};
  return LinearSplitOperator(LinearOperator::periodic(std::move(adv)), LinearOperator::zero(grid.n_cells));
}

double total_variation(const Vector& u) {
  const Eigen::Index n = u.size();
  if (n < 2) return 0.0;
  double tv = 0.0;
  for (Eigen::Index j = 0; j + 1 < n; ++j) tv += std::abs(u[j + 1] - u[j]);
  return tv + std::abs(u[0] - u[n - 1]);
}

Vector periodic_exact_solution(const LinearSplitOperator& op, const Vector& u0, double t) {
  const auto& f = op.explicit_op.stencil();
  const auto& g = op.implicit_op.stencil();
  if ((!f && !op.explicit_op.is_zero()) || (!g && !op.implicit_op.is_zero()))
    throw ParameterError("exact solution needs stencil operators");
  const Eigen::Index n = u0.size();
  if (n != op.dimension()) throw ParameterError("operator dimension mismatch");
  const double two_pi = 2.0 * std::numbers::pi;
  Vector out = Vector::Zero(n);
  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, two_pi * j / n);
  auto tw = [&](Eigen::Index m, Eigen::Index j) { return twiddle[static_cast<std::size_t>((m * j) % n)]; };
  for (Eigen::Index m = 0; m < n; ++m) {
    std::complex<double> hat{0.0, 0.0};
    for (Eigen::Index j = 0; j < n; ++j) hat += u0[j] * std::conj(tw(m, j));
    const double phi = two_pi * m / n;
    std::complex<double> rate{0.0, 0.0};
    if (f) rate += f->symbol(phi);
    if (g) rate += g->symbol(phi);
    hat *= std::exp(rate * t);
    for (Eigen::Index j = 0; j < n; ++j) out[j] += (hat * tw(m, j)).real();
  }
  return out / static_cast<double>(n);
}

SplitProblem periodic_problem(LinearSplitOperator op, Vector u0) {
  auto exact = [op, u0](double t) { return periodic_exact_solution(op, u0, t); };
  return SplitProblem{op, std::move(u0), 0.0, exact};
}

Vector cell_centres(const GridSpec& grid) {
  Vector x(grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) x[j] = (j + 0.5) * grid.dx();
  return x;
}

Vector step_data(const GridSpec& grid) {
  grid.validate();
  const Vector x = cell_centres(grid);
  Vector u(grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) {
    const double s = x[j] / grid.domain_length;
    u[j] = (s >= 0.25 && s < 0.75) ? 1.0 : 0.0;
  }
  return u;
}

Vector random_monotone_data(const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const int n = grid.n_cells;
  const int half = n / 2;
  std::vector<double> up(static_cast<std::size_t>(half)), down(static_cast<std::size_t>(n - half));
  for (auto& v : up) v = dist(rng);
  for (auto& v : down) v = dist(rng);
  std::sort(up.begin(), up.end());
  std::sort(down.begin(), down.end(), std::greater<>());
  Vector u(n);
  for (int j = 0; j < half; ++j) u[j] = up[static_cast<std::size_t>(j)];
  for (int j = half; j < n; ++j) u[j] = down[static_cast<std::size_t>(j - half)];
  return u;
}

}  // namespace imexssp
