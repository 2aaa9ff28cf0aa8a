#pragma once

#include <complex>
#include <cstdint>

#include "imexssp/integrate.hpp"

namespace imexssp {

struct GridSpec {
  int n_cells = 100;
  double domain_length = 1.0;
  bool periodic = true;

  void validate() const;
  double dx() const { return domain_length / n_cells; }
};

struct AdvectionDiffusionConfig {
  /// sigma = a dt / dx
  double courant = 0.35;
  /// d = D dt / dx^2
  double diffusion_number = 0.0;
  double kappa = 1.0 / 3.0;
  double speed = 1.0;

  void validate() const;
};

/// y' = lambda y + mu y. Real lambda and mu give a scalar problem; otherwise the
/// real 2x2 form of multiplication by a complex number, state (Re y, Im y).
SplitProblem dahlquist(std::complex<double> lambda, std::complex<double> mu, std::complex<double> y0 = 1.0);

/// Complex value of a dahlquist state vector.
std::complex<double> as_complex(const Vector& y);

/// Periodic kappa = 1/3 upwind-biased advection (explicit) plus central
/// diffusion (implicit), with dt = sigma dx / a and D = d dx^2 / dt.
LinearSplitOperator advection_diffusion_1d(const GridSpec& grid, const AdvectionDiffusionConfig& cfg);

/// Time step implied by the grid and Courant number.
double advection_dt(const GridSpec& grid, const AdvectionDiffusionConfig& cfg);

/// lambda(phi) dt = -sigma (2 e^{i phi} + 3 - 6 e^{-i phi} + e^{-2 i phi}) / 6.
std::complex<double> fourier_symbol_kappa(const AdvectionDiffusionConfig& cfg, double phi);

/// First-order upwind advection with a = 1 and dt = courant dx; no implicit part.
LinearSplitOperator upwind_advection(const GridSpec& grid, double courant);

/// sum_j |u_{j+1} - u_j| with periodic closure.
double total_variation(const Vector& u);

/// Exact solution e^{t (F + G)} u0 of a problem whose operators are periodic
/// stencils (evaluated in Fourier space).
Vector periodic_exact_solution(const LinearSplitOperator& op, const Vector& u0, double t);

/// Split problem with exact solution for stencil operators.
SplitProblem periodic_problem(LinearSplitOperator op, Vector u0);

/// Cell-centre samples x_j = (j + 1/2) dx.
Vector cell_centres(const GridSpec& grid);

/// 1 on [0.25, 0.75) and 0 elsewhere, sampled at cell centres.
Vector step_data(const GridSpec& grid);

/// Piecewise-constant data with a few seeded jumps; monotone pieces rising then falling.
Vector random_monotone_data(const GridSpec& grid, std::uint64_t seed);

}  // namespace imexssp
