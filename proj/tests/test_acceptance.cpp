#include <string>

#include "doctest.h"
#include "imexssp/acceptance.hpp"
#include "imexssp/errors.hpp"

using namespace imexssp;

TEST_SUITE("acceptance") {
  TEST_CASE("criterion registry") {
    const auto names = criterion_names();
    REQUIRE(names.size() == 11);
    CHECK(names.front() == "lemma1");
    CHECK(names.back() == "fourier");
  }

  TEST_CASE("lemma2 detects a wrong centred scheme") {
    AcceptanceOptions opt;
    CHECK(check_lemma2(opt).passed);
    // Swap in the biased integrator: its wedge is pi/2 for every beta.
    opt.centred_factory = [](int k, double) { return implicit_biased(k); };
    const auto r = check_lemma2(opt);
    CHECK_FALSE(r.passed);
    CHECK(r.id == 2);
  }

  TEST_CASE("unknown criteria are rejected") {
    CHECK_THROWS_AS(run_acceptance(AcceptanceOptions{}, {"nope"}), ParameterError);
  }

  TEST_CASE("default tolerance scale") {
    CHECK(AcceptanceOptions{}.tolerance_scale == 1.0);
  }
}
