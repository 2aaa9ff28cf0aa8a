#include "imexssp/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include "imexssp/errors.hpp"

namespace imexssp {

int Polynomial::degree() const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
    if (coeffs_[static_cast<std::size_t>(i)] != 0.0) return i;
  return -1;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> c = coeffs_;
  for (auto& v : c) v *= factor;
  return Polynomial(std::move(c));
}

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg >= 0 && coeffs[static_cast<std::size_t>(deg)] == std::complex<double>{0.0}) --deg;
  if (deg < 0) throw ParameterError("polynomial_roots: zero polynomial");

  std::vector<std::complex<double>> roots;
  int low = 0;
  while (coeffs[static_cast<std::size_t>(low)] == std::complex<double>{0.0}) {
    roots.emplace_back(0.0, 0.0);
    ++low;
  }
  const int n = deg - low;
  if (n == 0) return roots;

  const std::complex<double> lead = coeffs[static_cast<std::size_t>(deg)];
  if (n == 1) {
    roots.push_back(-coeffs[static_cast<std::size_t>(low)] / lead);
    return roots;
  }

  // Companion matrix of the monic polynomial x^n + ... with coefficients
  // coeffs[low..deg] / lead.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(low + i)] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();
  for (int i = 0; i < n; ++i) roots.push_back(ev(i));
  return roots;
}

}  // namespace imexssp
