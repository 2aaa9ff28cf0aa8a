#include "imexssp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "imexssp/errors.hpp"
#include "imexssp/kernels.hpp"

namespace imexssp {

namespace {

using LComplex = std::complex<long double>;
constexpr double kPi = std::numbers::pi;

LComplex unit_point(double theta) { return std::polar(1.0L, static_cast<long double>(theta)); }

// Samples num(theta)/den(theta) on a uniform grid over [-pi, pi), refining
// intervals where the image varies too quickly or touches a pole.
template <class Eval>
BoundaryCurve sample_ratio(Eval eval, const SamplingOptions& opt) {
  if (opt.n < 16) throw ParameterError("curve sampling needs n >= 16");

  auto sample_at = [&](double theta) {
    const auto [num, den] = eval(theta);
    CurveSample s;
    s.theta = theta;
    if (std::abs(den) < static_cast<long double>(opt.pole_tolerance)) {
      s.is_pole = true;
      s.value = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    } else {
      const LComplex v = num / den;
      s.value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    return s;
  };

  auto needs_refinement = [&](const CurveSample& a, const CurveSample& b) {
    if (b.theta - a.theta <= opt.min_spacing) return false;
    if (a.is_pole || b.is_pole) return true;
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    const double m = std::min(ma, mb);
    if (std::abs(a.value - b.value) > opt.modulus_tolerance * std::max(1.0, m)) return true;
    if (m > 0.1 && std::abs(std::arg(b.value / a.value)) > opt.argument_tolerance) return true;
    return false;
  };

  std::vector<CurveSample> base;
  base.reserve(static_cast<std::size_t>(opt.n));
  const double h = 2.0 * kPi / opt.n;
  for (int j = 0; j < opt.n; ++j) base.push_back(sample_at(-kPi + h * j));

  if (!opt.refine) return BoundaryCurve(std::move(base));

  std::vector<CurveSample> out;
  out.reserve(base.size() * 2);
  std::vector<std::pair<CurveSample, CurveSample>> stack;
  for (std::size_t j = 0; j < base.size(); ++j) {
    out.push_back(base[j]);
    CurveSample right = j + 1 < base.size() ? base[j + 1] : base[0];
    if (j + 1 == base.size()) right.theta = kPi;  // wrap-around endpoint, never emitted
    // Depth-first bisection, emitting interior points in increasing theta.
    stack.clear();
    stack.emplace_back(base[j], right);
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (!needs_refinement(a, b)) {
        if (a.theta != base[j].theta) out.push_back(a);
        continue;
      }
      const CurveSample mid = sample_at(0.5 * (a.theta + b.theta));
      stack.emplace_back(mid, b);
      stack.emplace_back(a, mid);
    }
  }
  return BoundaryCurve(std::move(out));
}

}  // namespace

BoundaryCurve::BoundaryCurve(std::vector<CurveSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 3) throw ParameterError("BoundaryCurve needs at least 3 samples");
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].theta > samples_[i - 1].theta))
      throw ParameterError("BoundaryCurve thetas must be strictly increasing");
}

std::vector<ComplexValue> BoundaryCurve::finite_values() const {
  std::vector<ComplexValue> v;
  v.reserve(samples_.size());
  for (const auto& s : samples_)
    if (!s.is_pole) v.push_back(s.value);
  return v;
}

WedgeAngle WedgeAngle::from_alpha(double alpha) {
  if (alpha >= kHalfPi) return {kHalfPi, std::numeric_limits<double>::infinity()};
  return {alpha, std::tan(alpha)};
}

WedgeAngle WedgeAngle::from_tan(double tan_alpha) {
  if (std::isinf(tan_alpha)) return right_angle();
  return {std::atan(tan_alpha), tan_alpha};
}

BoundaryCurve explicit_boundary(const CoefficientSet& s, const SamplingOptions& opt) {
  const auto p = char_polys(s);
  if (p.B.is_zero()) throw ParameterError(s.name() + ": no explicit operator, B is identically zero");
  return sample_ratio(
      [&](double theta) {
        const LComplex z = unit_point(theta);
        return std::pair{p.A(z), p.B(z)};
      },
      opt);
}

BoundaryCurve implicit_boundary(const CoefficientSet& s, const SamplingOptions& opt) {
  return phi_lambda_curve(s, 0.0, opt);
}

BoundaryCurve phi_lambda_curve(const CoefficientSet& s, ComplexValue lambda, const SamplingOptions& opt) {
  const auto p = char_polys(s);
  if (p.C.is_zero()) throw ParameterError(s.name() + ": no implicit operator, C is identically zero");
  const LComplex l(lambda.real(), lambda.imag());
  return sample_ratio(
      [&](double theta) {
        const LComplex z = unit_point(theta);
        return std::pair{p.A(z) - l * p.B(z), p.C(z)};
      },
      opt);
}

std::optional<ComplexValue> phi_lambda(const CoefficientSet& s, ComplexValue lambda, double theta,
                                       double pole_tolerance) {
  const auto p = char_polys(s);
  if (p.C.is_zero()) throw ParameterError(s.name() + ": no implicit operator, C is identically zero");
  const LComplex z = unit_point(theta);
  const LComplex den = p.C(z);
  if (std::abs(den) < static_cast<long double>(pole_tolerance)) return std::nullopt;
  const LComplex v = (p.A(z) - LComplex(lambda.real(), lambda.imag()) * p.B(z)) / den;
  return ComplexValue(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

std::vector<ComplexValue> characteristic_roots(const CoefficientSet& s, ComplexValue lambda, ComplexValue mu) {
  const int k = s.steps();
  std::vector<ComplexValue> coeffs(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) coeffs[static_cast<std::size_t>(k - i)] = s.a(i) - lambda * s.b(i) - mu * s.c(i);
  return polynomial_roots(coeffs);
}

StabilityVerdict root_condition(const CoefficientSet& s, ComplexValue lambda, ComplexValue mu,
                                const RootOptions& opt) {
  StabilityVerdict v;
  const ComplexValue lead = s.a(0) - mu * s.c(0);
  if (std::abs(lead) < opt.leading_tolerance * (std::abs(s.a(0)) + std::abs(mu * s.c(0)))) {
    v.degenerate_leading_coefficient = true;
    v.max_root_modulus = std::numeric_limits<double>::infinity();
    return v;
  }
  const auto roots = characteristic_roots(s, lambda, mu);
  for (const auto& r : roots) v.max_root_modulus = std::max(v.max_root_modulus, std::abs(r));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < opt.cluster_tolerance &&
          std::max(std::abs(roots[i]), std::abs(roots[j])) >= 1.0 - opt.cluster_tolerance)
        v.multiple_root_on_boundary = true;
  v.stable = v.max_root_modulus <= 1.0 + opt.root_tolerance && !v.multiple_root_on_boundary;
  return v;
}

WedgeAngle measure_alpha(const BoundaryCurve& curve, double origin_tolerance) {
  const auto samples = curve.samples();
  const std::size_t n = samples.size();
  bool any_finite = false;
  double best = WedgeAngle::kHalfPi;
  for (const auto& s : samples) {
    if (s.is_pole) continue;
    any_finite = true;
    if (s.value.real() < -origin_tolerance)
      best = std::min(best, std::atan2(std::abs(s.value.imag()), -s.value.real()));
  }
  if (!any_finite) throw ParameterError("measure_alpha: curve has no finite samples");

  // Pole asymptotes: mu ~ R / (theta - theta_p)^m for m = 1 or 2. Each run of
  // pole markers is centred on theta_p and its finite neighbours give R to
  // second order in the spacing.
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i)
    if (!samples[i].is_pole) {
      first = i;
      break;
    }
  for (std::size_t step = 0; step < n;) {
    const std::size_t i = (first + step) % n;
    if (!samples[i].is_pole) {
      ++step;
      continue;
    }
    std::size_t len = 0;
    while (step + len < n && samples[(first + step + len) % n].is_pole) ++len;
    const auto& prev = samples[(i + n - 1) % n];
    const auto& next = samples[(first + step + len) % n];
    step += len;

    auto unwrap = [](double from, double to) { return to >= from ? to : to + 2.0 * kPi; };
    const double t_start = unwrap(prev.theta, samples[i].theta);
    const double t_end = unwrap(t_start, samples[(i + len - 1) % n].theta);
    const double tp = 0.5 * (t_start + t_end);
    const double h1 = tp - prev.theta;
    const double h2 = unwrap(tp, next.theta) - tp;
    if (!(h1 > 0.0 && h2 > 0.0)) continue;
    for (int m : {1, 2}) {
      const ComplexValue r1 = prev.value * std::pow(-h1, m);
      const ComplexValue r2 = next.value * std::pow(h2, m);
      const double scale = std::max(std::abs(r1), std::abs(r2));
      if (!(scale > 0.0) || std::abs(r1 - r2) > 0.1 * scale) continue;
      const ComplexValue r = (h2 * r1 + h1 * r2) / (h1 + h2);
      if (m == 1 && r.real() != 0.0) best = std::min(best, std::atan2(std::abs(r.imag()), std::abs(r.real())));
      if (m == 2 && r.real() < 0.0) best = std::min(best, std::atan2(std::abs(r.imag()), -r.real()));
      break;
    }
  }
  return WedgeAngle::from_alpha(best);
}

double nu_bound(int k, double beta) {
  if (k != 3 && k != 4) throw ParameterError("unsupported step count: " + std::to_string(k));
  if (!(beta >= 0.0 && beta <= 0.5)) throw ParameterError("beta must lie in [0, 1/2]");
  const double g = beta / (beta - 1.0);
  const double root = std::sqrt(1.0 - g * g);
  return (k == 3 ? (2.0 + g) : (2.0 + g * g)) * root / 3.0;
}

WedgeAngle alpha_closed_form(CentredVariant variant, int k, double beta, std::optional<double> nu) {
  const double bound = nu_bound(k, beta);  // validates k and beta
  const double g = beta / (beta - 1.0);
  const double root = std::sqrt(1.0 - g * g);
  const double num = (k == 3 ? (2.0 + g) : (2.0 + g * g)) * root;
  const double den = k == 3 ? (g - 1.0) * (g - 1.0) : 2.0 - 3.0 * g + g * g * g;
  if (variant == CentredVariant::implicit_centred) return WedgeAngle::from_tan(num / den);

  if (!nu) throw ParameterError("alpha_closed_form: imex_centred needs nu");
  if (*nu < 0.0) throw ParameterError("alpha_closed_form: nu must be non-negative");
  if (*nu > bound * (1.0 + 1e-14)) throw ParameterError("explicit imaginary bound violated");
  return WedgeAngle::from_tan(std::max(0.0, num - 3.0 * *nu) / den);
}

AlphaSweep imex_alpha_sweep(const CoefficientSet& s, const BoundaryCurve& lambda_set, int n_theta,
                            double origin_tolerance) {
  const auto lambdas = lambda_set.finite_values();
  if (lambdas.empty()) throw ParameterError("imex_alpha_sweep: empty lambda set");
  SamplingOptions opt;
  opt.n = n_theta;
  const auto found = kernels::omp::min_wedge_over_lambdas(s, lambdas, opt, origin_tolerance);
  return {WedgeAngle::from_alpha(found.alpha), lambdas[found.worst_index]};
}

BoundaryCurve restrict_curve(const BoundaryCurve& curve, double nu, double chord_spacing) {
  if (!(nu > 0.0)) throw ParameterError("restrict_curve: nu must be positive");
  const auto in = curve.samples();
  const std::size_t n = in.size();
  auto inside = [&](const CurveSample& s) { return !s.is_pole && std::abs(s.value.imag()) <= nu; };

  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i)
    if (inside(in[i])) {
      start = i;
      break;
    }
  if (start == n) throw ParameterError("restrict_curve: no sample inside the strip");

  // Walk once around the closed curve from an inside sample, with unwrapped theta.
  std::vector<CurveSample> out;
  CurveSample exit_point{};
  bool have_exit = false;
  auto theta_at = [&](std::size_t step) {
    const std::size_t i = (start + step) % n;
    return in[i].theta + (start + step >= n ? 2.0 * kPi : 0.0);
  };
  for (std::size_t step = 0; step < n; ++step) {
    const CurveSample& p = in[(start + step) % n];
    const CurveSample& q = in[(start + step + 1) % n];
    const double tp = theta_at(step);
    const double tq = step + 1 < n ? theta_at(step + 1) : in[start].theta + 2.0 * kPi;
    const bool pin = inside(p), qin = inside(q);
    if (pin) out.push_back({tp, p.value, false});
    if (pin == qin || p.is_pole || q.is_pole) continue;

    // Crossing of Im = +-nu between p and q.
    const CurveSample& outer = pin ? q : p;
    const double line = outer.value.imag() > 0.0 ? nu : -nu;
    const double t = (line - p.value.imag()) / (q.value.imag() - p.value.imag());
    if (!(t > 0.0 && t < 1.0)) continue;
    const CurveSample cross{tp + t * (tq - tp), p.value + t * (q.value - p.value), false};
    if (pin) {
      out.push_back(cross);
      exit_point = cross;
      have_exit = true;
      continue;
    }
    if (have_exit && std::signbit(exit_point.value.imag()) == std::signbit(cross.value.imag())) {
      const double len = std::abs(cross.value - exit_point.value);
      const int m = std::max(2, static_cast<int>(std::ceil(len / chord_spacing)));
      for (int j = 1; j < m; ++j) {
        const double f = static_cast<double>(j) / m;
        out.push_back({exit_point.theta + f * (cross.theta - exit_point.theta),
                       exit_point.value + f * (cross.value - exit_point.value), false});
      }
    }
    out.push_back(cross);
    have_exit = false;
  }

  for (auto& s : out)
    if (s.theta >= kPi) s.theta -= 2.0 * kPi;
  std::sort(out.begin(), out.end(), [](const CurveSample& x, const CurveSample& y) { return x.theta < y.theta; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CurveSample& x, const CurveSample& y) { return x.theta == y.theta; }),
            out.end());
  return BoundaryCurve(std::move(out));
}

TaylorCoefficients taylor_check_biased(int k, double ts) {
  if (k == 3) {
    const double den = 5.0 + 4.0 * std::cos(3.0 * ts);
    if (std::abs(den) < 1e-14) throw ParameterError("taylor_check_biased: theta* at a pole of the expansion");
    return {2, (1.0 - std::cos(3.0 * ts)) / den, std::nullopt};
  }
  if (k == 4) {
    const double s3 = std::sin(3.0 * ts), c3 = std::cos(3.0 * ts);
    const double den = s3 * s3 + (c3 + 2.0) * (c3 + 2.0);
    if (std::abs(den) < 1e-14) throw ParameterError("taylor_check_biased: theta* at a pole of the expansion");
    const double re = 0.75 * (std::sin(ts) - 3.0 * s3 + 2.0 * std::sin(4.0 * ts)) / den;
    // Im phi decreases through theta*: the coefficient is negative.
    const double im = -0.75 * (6.0 + std::cos(ts) + 3.0 * c3 + 2.0 * std::cos(4.0 * ts)) / den;
    return {1, re, im};
  }
  throw ParameterError("unsupported step count: " + std::to_string(k));
}

double conjecture2_tan_alpha(int n_theta_star) {
  if (n_theta_star < 16) throw ParameterError("conjecture2_tan_alpha: need at least 16 samples");
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_theta_star; ++j) {
    const double ts = -kPi + 2.0 * kPi * j / n_theta_star;
    const auto t = taylor_check_biased(4, ts);
    if (t.re == 0.0) continue;
    best = std::min(best, std::abs(*t.im / t.re));
  }
  return best;
}

int winding_number(std::span<const ComplexValue> poly, ComplexValue p) {
  if (poly.size() < 3) throw ParameterError("winding_number: need a closed polygon of >= 3 points");
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const ComplexValue a = poly[i] - p;
    const ComplexValue b = poly[(i + 1) % poly.size()] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

ImageExteriorTest::ImageExteriorTest(const CoefficientSet& s, ComplexValue lambda, const SamplingOptions& opt)
    : image_(phi_lambda_curve(s, lambda, opt)) {
  for (const auto& smp : image_)
    if (smp.is_pole) throw ParameterError("ImageExteriorTest: C vanishes on the unit circle");
  const auto p = char_polys(s);
  std::vector<ComplexValue> cvals;
  cvals.reserve(image_.size());
  for (const auto& smp : image_) {
    const auto v = p.C(unit_point(smp.theta));
    cvals.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  c_winding_ = winding_number(cvals, 0.0);
}

int ImageExteriorTest::unstable_root_count(ComplexValue mu) const {
  const auto v = image_.finite_values();
  return c_winding_ + winding_number(v, mu);
}

double ImageExteriorTest::distance_to_image(ComplexValue mu) const {
  const auto v = image_.finite_values();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ComplexValue a = v[i], b = v[(i + 1) % v.size()];
    const ComplexValue ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((mu - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(mu - (a + t * ab)));
  }
  return best;
}

}  // namespace imexssp
