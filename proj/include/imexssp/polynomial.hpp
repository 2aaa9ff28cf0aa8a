#pragma once

#include <complex>
#include <span>
#include <vector>

namespace imexssp {

/// Real polynomial p(x) = sum_i coeffs[i] x^i (ascending powers).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::span<const double> coefficients() const { return coeffs_; }
  double coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  std::size_t size() const { return coeffs_.size(); }

  /// Degree ignoring trailing zero coefficients; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  template <class T>
  std::complex<T> operator()(std::complex<T> z) const {
    std::complex<T> acc{0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + static_cast<T>(*it);
    return acc;
  }
  double operator()(double x) const;

  /// Derivative polynomial.
  Polynomial derivative() const;

  Polynomial scaled(double factor) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// All complex roots of sum_i coeffs[i] x^i, computed as eigenvalues of the
/// companion matrix. Trailing (highest-power) zero coefficients are dropped;
/// zero low-order coefficients give roots at the origin.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

}  // namespace imexssp
