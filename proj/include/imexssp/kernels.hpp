#pragma once

// Data-parallel sweep kernels. Each kernel has an OpenMP implementation used by
// the library and a serial reference used by the tests and the benchmark; both
// must return identical results.

#include <cstddef>
#include <span>
#include <vector>

#include "imexssp/stability.hpp"

namespace imexssp::kernels {

struct WedgeSearch {
  double alpha = WedgeAngle::kHalfPi;
  /// Index of the lambda that attains the minimum; lowest index on ties.
  std::size_t worst_index = 0;
};

struct RealMinimum {
  double value = 0.0;
  std::size_t star_index = 0;
  std::size_t theta_index = 0;
};

namespace serial {

WedgeSearch min_wedge_over_lambdas(const CoefficientSet& s, std::span<const ComplexValue> lambdas,
                                   const SamplingOptions& opt, double origin_tolerance);

/// min of Re phi_{lambda*}(e^{i theta}) over a uniform n_star x n_theta grid in
/// [-pi, pi)^2 with lambda* = A(e^{i theta*}) / B(e^{i theta*}).
RealMinimum min_real_phi_on_boundary(const CoefficientSet& s, int n_star, int n_theta);

std::vector<StabilityVerdict> root_condition_batch(const CoefficientSet& s, ComplexValue lambda,
                                                   std::span<const ComplexValue> mus, const RootOptions& opt);

}  // namespace serial

namespace omp {

WedgeSearch min_wedge_over_lambdas(const CoefficientSet& s, std::span<const ComplexValue> lambdas,
                                   const SamplingOptions& opt, double origin_tolerance);

RealMinimum min_real_phi_on_boundary(const CoefficientSet& s, int n_star, int n_theta);

std::vector<StabilityVerdict> root_condition_batch(const CoefficientSet& s, ComplexValue lambda,
                                                   std::span<const ComplexValue> mus, const RootOptions& opt);

}  // namespace omp

/// Uniform grid of n_re x n_im points (row-major in im) covering the box.
std::vector<ComplexValue> complex_grid(double re_min, double re_max, double im_min, double im_max, int n_re,
                                       int n_im);

}  // namespace imexssp::kernels
