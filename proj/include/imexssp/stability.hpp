#pragma once

// Linear stability analysis of IMEX multistep schemes on y' = lambda y + mu y.
//
// In z = 1/zeta the characteristic equation reads A(z) - lambda B(z) - mu C(z) = 0,
// and the scheme is stable iff every root satisfies |z| >= 1 (strictly for
// multiple roots). Boundary loci are images of the unit circle z = e^{i theta}.

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "imexssp/schemes.hpp"

namespace imexssp {

using ComplexValue = std::complex<double>;

struct CurveSample {
  double theta = 0.0;
  ComplexValue value{};
  bool is_pole = false;
};

/// Parametric curve theta -> value over theta in [-pi, pi), thetas strictly
/// increasing, at least three samples.
class BoundaryCurve {
 public:
  explicit BoundaryCurve(std::vector<CurveSample> samples);

  std::span<const CurveSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const CurveSample& operator[](std::size_t i) const { return samples_[i]; }
  auto begin() const { return samples_.begin(); }
  auto end() const { return samples_.end(); }

  /// Finite (non-pole) values in order.
  std::vector<ComplexValue> finite_values() const;

 private:
  std::vector<CurveSample> samples_;
};

/// Half-angle of a wedge about the negative real axis. tan_alpha is +inf for alpha = pi/2.
struct WedgeAngle {
  double alpha = 0.0;
  double tan_alpha = 0.0;

  static WedgeAngle from_alpha(double alpha);
  static WedgeAngle from_tan(double tan_alpha);
  static WedgeAngle right_angle() { return from_alpha(kHalfPi); }

  static constexpr double kHalfPi = 1.57079632679489661923;
};

struct StabilityVerdict {
  bool stable = false;
  double max_root_modulus = 0.0;
  bool multiple_root_on_boundary = false;
  bool degenerate_leading_coefficient = false;
};

struct SamplingOptions {
  int n = 4096;
  bool refine = true;
  /// Refine where adjacent images differ by more than this times max(1, |value|).
  double modulus_tolerance = 0.02;
  /// Refine where the argument jumps by more than this (away from the origin).
  double argument_tolerance = 0.05;
  double min_spacing = 1e-10;
  /// Denominator modulus below which a sample becomes a pole marker.
  double pole_tolerance = 1e-12;
};

struct RootOptions {
  double root_tolerance = 1e-9;
  double cluster_tolerance = 1e-7;
  double leading_tolerance = 1e-14;
};

/// dS: lambda(theta) = A(e^{i theta}) / B(e^{i theta}).
BoundaryCurve explicit_boundary(const CoefficientSet& s, const SamplingOptions& opt = {});
/// dD: mu(theta) = A(e^{i theta}) / C(e^{i theta}).
BoundaryCurve implicit_boundary(const CoefficientSet& s, const SamplingOptions& opt = {});
/// Image of the unit circle under phi_lambda(z) = (A(z) - lambda B(z)) / C(z).
BoundaryCurve phi_lambda_curve(const CoefficientSet& s, ComplexValue lambda, const SamplingOptions& opt = {});

/// phi_lambda(e^{i theta}); nullopt marks a pole (|C| below pole_tolerance).
std::optional<ComplexValue> phi_lambda(const CoefficientSet& s, ComplexValue lambda, double theta,
                                       double pole_tolerance = 1e-12);

/// Roots zeta of sum_i (a_i - lambda b_i - mu c_i) zeta^{k-i}.
std::vector<ComplexValue> characteristic_roots(const CoefficientSet& s, ComplexValue lambda, ComplexValue mu);
StabilityVerdict root_condition(const CoefficientSet& s, ComplexValue lambda, ComplexValue mu,
                                const RootOptions& opt = {});

/// Largest alpha such that no finite sample with Re < -origin_tolerance lies in
/// the open wedge |arg(-mu)| < alpha. Pole markers contribute the direction of
/// their asymptote when the neighbouring samples identify a simple or double pole.
WedgeAngle measure_alpha(const BoundaryCurve& curve, double origin_tolerance = 1e-10);

enum class CentredVariant { implicit_centred, imex_centred };

/// Upper bound on the explicit imaginary part nu for the centred IMEX scheme.
double nu_bound(int k, double beta);
/// Closed-form wedge angle of the centred integrator (lambda = 0) or of the
/// centred IMEX scheme restricted to |Im lambda| <= nu.
WedgeAngle alpha_closed_form(CentredVariant variant, int k, double beta, std::optional<double> nu = std::nullopt);

struct AlphaSweep {
  WedgeAngle wedge;
  ComplexValue worst_lambda{};
};

/// Worst-case wedge angle over all finite lambda samples of lambda_set, each
/// image curve sampled with n_theta base points (OpenMP kernel).
AlphaSweep imex_alpha_sweep(const CoefficientSet& s, const BoundaryCurve& lambda_set, int n_theta,
                            double origin_tolerance = 1e-10);

/// Boundary of S intersected with the strip |Im| <= nu, closed by chords along Im = +-nu.
BoundaryCurve restrict_curve(const BoundaryCurve& curve, double nu, double chord_spacing = 2e-3);

/// Leading Taylor term of phi_{lambda*}(e^{i theta}) about theta*, for the biased
/// IMEX scheme with lambda* = A(e^{i theta*}) / B(e^{i theta*}).
/// k = 3: order 2, re is the coefficient of (theta - theta*)^2 in Re phi.
/// k = 4: order 1, (re, im) are the coefficients of (theta - theta*).
struct TaylorCoefficients {
  int order = 0;
  double re = 0.0;
  std::optional<double> im;
};
TaylorCoefficients taylor_check_biased(int k, double theta_star);

/// inf over theta* of |Im / Re| of the k = 4 linear Taylor coefficients.
double conjecture2_tan_alpha(int n_theta_star);

/// Stability classification through the argument principle: the number of
/// roots z of A - lambda B - mu C inside the unit disk equals
/// wind(C) + wind(phi_lambda(e^{i theta}) - mu). Requires C to have no zeros on
/// the unit circle.
class ImageExteriorTest {
 public:
  ImageExteriorTest(const CoefficientSet& s, ComplexValue lambda, const SamplingOptions& opt = {});

  int unstable_root_count(ComplexValue mu) const;
  bool stable(ComplexValue mu) const { return unstable_root_count(mu) == 0; }
  double distance_to_image(ComplexValue mu) const;
  const BoundaryCurve& image() const { return image_; }

 private:
  BoundaryCurve image_;
  int c_winding_ = 0;
};

/// Winding number of the closed polygon through the given points around p.
int winding_number(std::span<const ComplexValue> closed_polygon, ComplexValue p);

}  // namespace imexssp
