#include <vector>

#include "doctest.h"
#include "imexssp/kernels.hpp"

using namespace imexssp;

TEST_SUITE("kernels") {
  TEST_CASE("wedge search: serial and OpenMP agree exactly") {
    for (const char* id : {"imex-biased-k4", "mcnab", "imex-bdf2"}) {
      CAPTURE(id);
      const auto s = make_scheme(id);
      SamplingOptions so;
      so.n = 256;
      const auto lambdas = explicit_boundary(s, so).finite_values();
      const auto a = kernels::serial::min_wedge_over_lambdas(s, lambdas, so, 1e-10);
      const auto b = kernels::omp::min_wedge_over_lambdas(s, lambdas, so, 1e-10);
      CHECK(a.alpha == b.alpha);
      CHECK(a.worst_index == b.worst_index);
    }
  }

  TEST_CASE("real minimum: serial and OpenMP agree exactly") {
    const auto s = make_scheme("imex-biased-k3");
    const auto a = kernels::serial::min_real_phi_on_boundary(s, 96, 128);
    const auto b = kernels::omp::min_real_phi_on_boundary(s, 96, 128);
    CHECK(a.value == b.value);
    CHECK(a.star_index == b.star_index);
    CHECK(a.theta_index == b.theta_index);
    CHECK(a.value >= -1e-10);
  }

  TEST_CASE("root condition batch: serial and OpenMP agree exactly") {
    const auto s = make_scheme("imex-centred-k4", {0.25, 0.0});
    const auto mus = kernels::complex_grid(-3.0, 1.0, -2.0, 2.0, 21, 17);
    const auto a = kernels::serial::root_condition_batch(s, ComplexValue(-0.5, 0.2), mus, RootOptions{});
    const auto b = kernels::omp::root_condition_batch(s, ComplexValue(-0.5, 0.2), mus, RootOptions{});
    REQUIRE(a.size() == mus.size());
    REQUIRE(b.size() == mus.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].stable == b[i].stable);
      CHECK(a[i].max_root_modulus == b[i].max_root_modulus);
    }
  }

  TEST_CASE("complex grid layout") {
    const auto g = kernels::complex_grid(0.0, 1.0, -1.0, 1.0, 3, 5);
    REQUIRE(g.size() == 15);
    CHECK(g.front() == ComplexValue(0.0, -1.0));
    CHECK(g[1] == ComplexValue(0.0, -0.5));
    CHECK(g.back() == ComplexValue(1.0, 1.0));
  }
}
