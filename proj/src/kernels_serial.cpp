#include <cmath>
#include <numbers>

#include "imexssp/errors.hpp"
#include "imexssp/kernels.hpp"

namespace imexssp::kernels {

std::vector<ComplexValue> complex_grid(double re_min, double re_max, double im_min, double im_max, int n_re,
                                       int n_im) {
  if (n_re < 2 || n_im < 2) throw ParameterError("complex_grid: need at least 2 points per axis");
  std::vector<ComplexValue> g;
  g.reserve(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
  for (int i = 0; i < n_re; ++i)
    for (int j = 0; j < n_im; ++j)
      g.emplace_back(re_min + (re_max - re_min) * i / (n_re - 1), im_min + (im_max - im_min) * j / (n_im - 1));
  return g;
}

namespace serial {

WedgeSearch min_wedge_over_lambdas(const CoefficientSet& s, std::span<const ComplexValue> lambdas,
                                   const SamplingOptions& opt, double origin_tolerance) {
  WedgeSearch best;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double a = measure_alpha(phi_lambda_curve(s, lambdas[i], opt), origin_tolerance).alpha;
    if (a < best.alpha) best = {a, i};
  }
  return best;
}

RealMinimum min_real_phi_on_boundary(const CoefficientSet& s, int n_star, int n_theta) {
  const auto p = char_polys(s);
  RealMinimum best{std::numeric_limits<double>::infinity(), 0, 0};
  const double pi = std::numbers::pi;
  for (int i = 0; i < n_star; ++i) {
    const ComplexValue zs = std::polar(1.0, -pi + 2.0 * pi * i / n_star);
    const ComplexValue ls = p.A(zs) / p.B(zs);
    for (int j = 0; j < n_theta; ++j) {
      const ComplexValue z = std::polar(1.0, -pi + 2.0 * pi * j / n_theta);
      const double re = ((p.A(z) - ls * p.B(z)) / p.C(z)).real();
      if (re < best.value) best = {re, static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
    }
  }
  return best;
}

std::vector<StabilityVerdict> root_condition_batch(const CoefficientSet& s, ComplexValue lambda,
                                                   std::span<const ComplexValue> mus, const RootOptions& opt) {
  std::vector<StabilityVerdict> out;
  out.reserve(mus.size());
  for (const auto& mu : mus) out.push_back(root_condition(s, lambda, mu, opt));
  return out;
}

}  // namespace serial
}  // namespace imexssp::kernels
