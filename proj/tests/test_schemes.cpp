#include <cmath>

#include "doctest.h"
#include "imexssp/errors.hpp"
#include "imexssp/schemes.hpp"

using namespace imexssp;

TEST_SUITE("schemes") {
  TEST_CASE("ssp weights match the printed difference quotients") {
    // (4 y_{n+1} - 3 y_n - y_{n-2}) / (6 dt) = f_n
    const auto s3 = ssp_explicit(3);
    CHECK(s3.steps() == 3);
    CHECK(s3.a(0) == doctest::Approx(4.0 / 6));
    CHECK(s3.a(1) == doctest::Approx(-3.0 / 6));
    CHECK(s3.a(2) == 0.0);
    CHECK(s3.a(3) == doctest::Approx(-1.0 / 6));
    CHECK(s3.b(1) == 1.0);
    CHECK_FALSE(s3.has_implicit());

    const auto s4 = ssp_explicit(4);
    CHECK(s4.a(0) == doctest::Approx(9.0 / 12));
    CHECK(s4.a(1) == doctest::Approx(-8.0 / 12));
    CHECK(s4.a(4) == doctest::Approx(-1.0 / 12));
  }

  TEST_CASE("exact weights are carried as rationals") {
    const auto s = ssp_explicit(3);
    REQUIRE(s.exact());
    CHECK(s.exact()->a[0] == Rational(2, 3));
    CHECK(s.exact()->a[3] == Rational(-1, 6));
  }

  TEST_CASE("every built-in scheme is second order and not third") {
    for (const auto& id : scheme_ids()) {
      CAPTURE(id);
      const auto s = make_scheme(id);
      if (id == "forward-euler") {
        CHECK(order_residual(s, 1) == 0.0);
        CHECK(order_residual(s, 2) > 1e-3);
        continue;
      }
      CHECK(order_residual(s, 2) <= 1e-14);
      if (id == "implicit-centred-k4") continue;
      CHECK(order_residual(s, 3) > 1e-3);
    }
  }

  TEST_CASE("centred k=4 integrator is third order only at beta = 0") {
    CHECK(order_residual(implicit_centred(4, 0.0), 3) == 0.0);
    CHECK(order_residual(implicit_centred(4, 0.0), 4) > 1e-3);
    CHECK(order_residual(implicit_centred(4, 0.25), 3) == doctest::Approx(0.75));
  }

  TEST_CASE("order residual oracle: direct evaluation on t = -i") {
    // Independent evaluation in doubles for the biased IMEX k=4 scheme.
    const auto s = imex_scheme(ImexVariant::biased, 4);
    for (int q = 0; q <= 2; ++q) {
      double rb = 0.0, rc = 0.0;
      for (int i = 0; i <= 4; ++i) {
        const double t = -i;
        const double d = q ? q * std::pow(t, q - 1) : 0.0;
        rb += s.a(i) * std::pow(t, q) - s.b(i) * d;
        rc += s.a(i) * std::pow(t, q) - s.c(i) * d;
      }
      CHECK(std::abs(rb) < 1e-14);
      CHECK(std::abs(rc) < 1e-14);
    }
  }

  TEST_CASE("centred implicit weights") {
    const auto s = implicit_centred(3, 0.25);
    CHECK(s.c(0) == doctest::Approx(0.375));
    CHECK(s.c(1) == doctest::Approx(0.25));
    CHECK(s.c(2) == doctest::Approx(0.375));
    CHECK(s.c(3) == 0.0);
    REQUIRE(s.exact());
    CHECK(s.exact()->c[0] == Rational(3, 8));
    // A beta without a small rational form still builds.
    CHECK(implicit_centred(4, 0.1234567891234).steps() == 4);
  }

  TEST_CASE("biased implicit weights") {
    const auto s = implicit_biased(4);
    CHECK(s.c(0) == doctest::Approx(2.0 / 3));
    CHECK(s.c(3) == doctest::Approx(1.0 / 3));
    CHECK(s.c(4) == 0.0);
  }

  TEST_CASE("imex schemes combine the ssp explicit part with the implicit integrators") {
    const auto s = imex_scheme(ImexVariant::centred, 4, 0.4);
    const auto e = ssp_explicit(4);
    const auto c = implicit_centred(4, 0.4);
    for (int i = 0; i <= 4; ++i) {
      CHECK(s.a(i) == e.a(i));
      CHECK(s.b(i) == e.b(i));
      CHECK(s.c(i) == c.c(i));
    }
  }

  TEST_CASE("mcnab and imex bdf2 are two-step schemes") {
    const auto m = mcnab(0.0);
    CHECK(m.steps() == 2);
    CHECK(m.c(0) == doctest::Approx(0.5));
    CHECK(m.c(1) == doctest::Approx(0.5));
    CHECK(m.b(1) == doctest::Approx(1.5));
    CHECK(m.b(2) == doctest::Approx(-0.5));
    const auto m8 = mcnab(0.125);
    CHECK(m8.c(0) == doctest::Approx(9.0 / 16));
    CHECK(m8.c(1) == doctest::Approx(6.0 / 16));
    CHECK(m8.c(2) == doctest::Approx(1.0 / 16));
    const auto b = imex_bdf2();
    CHECK(b.steps() == 2);
    CHECK(b.c(0) == 1.0);
    CHECK(b.b(1) == doctest::Approx(2.0));
    CHECK(b.b(2) == doctest::Approx(-1.0));
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_WITH_AS(ssp_explicit(5), doctest::Contains("unsupported step count"), ParameterError);
    CHECK_THROWS_AS(implicit_biased(2), ParameterError);
    CHECK_THROWS_AS(implicit_centred(3, 0.6), ParameterError);
    CHECK_THROWS_AS(implicit_centred(3, -0.1), ParameterError);
    CHECK_THROWS_WITH_AS(make_scheme("nope"), doctest::Contains("unknown scheme id"), ParameterError);
    CHECK_THROWS_AS(CoefficientSet("bad", {1.0, -0.5}, {0.0, 1.0}, {0.0, 0.0}), ParameterError);  // sum a != 0
    CHECK_THROWS_AS(CoefficientSet("bad", {1.0, -1.0}, {0.5, 0.5}, {0.0, 0.0}), ParameterError);  // b_0 != 0
    CHECK_THROWS_AS(CoefficientSet("bad", {1.0, -1.0}, {0.0, 1.0}, {0.0, 1.0}), ParameterError);  // c_0 = 0
    CHECK_THROWS_AS(CoefficientSet("bad", {1.0, -1.0}, {0.0, 0.0}, {0.0, 0.0}), ParameterError);  // no operators
    CHECK_THROWS_AS(CoefficientSet("bad", {1.0, -1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}), ParameterError);
  }

  TEST_CASE("char polys round trip") {
    const auto s = make_scheme("imex-biased-k3");
    const auto p = char_polys(s);
    CHECK(p.A.coefficient(0) == s.a(0));
    CHECK(p.B.degree() == 1);
    CHECK(p.C.degree() == 3);
    const auto back = from_char_polys(p, "copy");
    for (int i = 0; i <= 3; ++i) CHECK(back.c(i) == s.c(i));
  }

  TEST_CASE("to_rational") {
    CHECK(to_rational(0.125) == Rational(1, 8));
    CHECK(to_rational(1.0 / 3.0) == Rational(1, 3));
    CHECK(to_rational(-2.5) == Rational(-5, 2));
    CHECK_FALSE(to_rational(std::sqrt(2.0)));
    CHECK_FALSE(to_rational(std::nan("")));
  }

  TEST_CASE("registry lists") {
    CHECK(builtin_scheme_ids().size() == 8);
    CHECK(scheme_ids().size() == 13);
    for (const auto& id : scheme_ids()) CHECK_NOTHROW(make_scheme(id, {0.25, 0.5}));
  }
}
