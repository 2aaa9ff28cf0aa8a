#include <algorithm>
#include <complex>
#include <vector>

#include "doctest.h"
#include "imexssp/polynomial.hpp"

using namespace imexssp;
using C = std::complex<double>;

namespace {
bool contains_root(const std::vector<C>& roots, C r, double tol = 1e-10) {
  return std::any_of(roots.begin(), roots.end(), [&](C z) { return std::abs(z - r) < tol; });
}
}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("evaluation and degree") {
    const Polynomial p({1.0, -3.0, 0.0, 2.0, 0.0});
    CHECK(p.degree() == 3);
    CHECK(p(2.0) == doctest::Approx(11.0));
    CHECK(p(C(0.0, 1.0)) == C(1.0, -5.0));
    CHECK(Polynomial({0.0, 0.0}).is_zero());
    CHECK(p.derivative() == Polynomial({-3.0, 0.0, 6.0, 0.0}));
    CHECK(p.scaled(2.0)(1.0) == doctest::Approx(0.0));
  }

  TEST_CASE("roots of (x - 1)(x - 2)(x + 3)") {
    // x^3 - 7x + 6
    const std::vector<C> c{6.0, -7.0, 0.0, 1.0};
    const auto r = polynomial_roots(c);
    REQUIRE(r.size() == 3);
    CHECK(contains_root(r, 1.0));
    CHECK(contains_root(r, 2.0));
    CHECK(contains_root(r, -3.0));
  }

  TEST_CASE("zero low coefficients and dropped high coefficients") {
    const std::vector<C> c{0.0, 0.0, 2.0, 1.0, 0.0};  // x^2 (x + 2)
    const auto r = polynomial_roots(c);
    REQUIRE(r.size() == 3);
    CHECK(std::count_if(r.begin(), r.end(), [](C z) { return std::abs(z) == 0.0; }) == 2);
    CHECK(contains_root(r, -2.0));
  }

  TEST_CASE("linear and complex coefficients") {
    const std::vector<C> lin{C(1.0, 1.0), 2.0};
    const auto r = polynomial_roots(lin);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0] - C(-0.5, -0.5)) < 1e-15);
    // (x - i)(x + 2i) = x^2 + i x + 2
    const std::vector<C> q{2.0, C(0.0, 1.0), 1.0};
    const auto rq = polynomial_roots(q);
    CHECK(contains_root(rq, C(0.0, 1.0)));
    CHECK(contains_root(rq, C(0.0, -2.0)));
  }

  TEST_CASE("constant polynomial has no roots") {
    const std::vector<C> c{3.0};
    CHECK(polynomial_roots(c).empty());
  }
}
