#include <omp.h>

#include <cmath>
#include <numbers>

#include "imexssp/kernels.hpp"

namespace imexssp::kernels::omp {

namespace {

// Lexicographic (value, index) minimum so the reduction is independent of the
// thread schedule.
template <class T>
bool better(const T& candidate, const T& current) {
  if (candidate.first != current.first) return candidate.first < current.first;
  return candidate.second < current.second;
}

}  // namespace

WedgeSearch min_wedge_over_lambdas(const CoefficientSet& s, std::span<const ComplexValue> lambdas,
                                   const SamplingOptions& opt, double origin_tolerance) {
  const auto n = static_cast<std::ptrdiff_t>(lambdas.size());
  std::vector<double> alphas(lambdas.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    alphas[static_cast<std::size_t>(i)] =
        measure_alpha(phi_lambda_curve(s, lambdas[static_cast<std::size_t>(i)], opt), origin_tolerance).alpha;

  WedgeSearch best;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (alphas[i] < best.alpha) best = {alphas[i], i};
  return best;
}

RealMinimum min_real_phi_on_boundary(const CoefficientSet& s, int n_star, int n_theta) {
  const auto p = char_polys(s);
  const double pi = std::numbers::pi;
  std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};

#pragma omp parallel
  {
    std::pair<double, std::size_t> local{std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static)
    for (int i = 0; i < n_star; ++i) {
      const ComplexValue zs = std::polar(1.0, -pi + 2.0 * pi * i / n_star);
      const ComplexValue ls = p.A(zs) / p.B(zs);
      for (int j = 0; j < n_theta; ++j) {
        const ComplexValue z = std::polar(1.0, -pi + 2.0 * pi * j / n_theta);
        const double re = ((p.A(z) - ls * p.B(z)) / p.C(z)).real();
        const std::pair<double, std::size_t> cand{re, static_cast<std::size_t>(i) * n_theta + j};
        if (better(cand, local)) local = cand;
      }
    }
#pragma omp critical
    if (better(local, best)) best = local;
  }
  const auto nt = static_cast<std::size_t>(n_theta);
  return {best.first, best.second / nt, best.second % nt};
}

std::vector<StabilityVerdict> root_condition_batch(const CoefficientSet& s, ComplexValue lambda,
                                                   std::span<const ComplexValue> mus, const RootOptions& opt) {
  std::vector<StabilityVerdict> out(mus.size());
  const auto n = static_cast<std::ptrdiff_t>(mus.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = root_condition(s, lambda, mus[static_cast<std::size_t>(i)], opt);
  return out;
}

}  // namespace imexssp::kernels::omp
