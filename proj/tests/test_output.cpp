#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "imexssp/output.hpp"

using namespace imexssp;

TEST_SUITE("output") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(1e-20) == "1e-20");
  }

  TEST_CASE("curve csv") {
    BoundaryCurve c({{-1.0, {1.0, 2.0}, false}, {0.0, {}, true}, {1.0, {-0.5, 0.25}, false}});
    std::ostringstream os;
    write_curve_csv(os, c);
    CHECK(os.str() == "theta,re,im,is_pole\n-1,1,2,0\n0,nan,nan,1\n1,-0.5,0.25,0\n");
    const auto pieces = curve_polylines(c);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].size() == 1);
  }

  TEST_CASE("curve csv is deterministic") {
    const auto s = make_scheme("imex-biased-k3");
    std::ostringstream a, b;
    write_curve_csv(a, explicit_boundary(s));
    write_curve_csv(b, explicit_boundary(s));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("theta,re,im,is_pole\n", 0) == 0);
  }

  TEST_CASE("grid and trajectory csv") {
    std::ostringstream g;
    write_grid_csv(g, {GridCell{{-1.0, 0.0}, {0.0, 2.0}, StabilityVerdict{true, 0.5, false, false}}});
    CHECK(g.str() == "lambda_re,lambda_im,mu_re,mu_im,stable,max_root_modulus\n-1,0,0,2,1,0.5\n");

    Trajectory t;
    t.times = {0.0, 0.5};
    t.states = {Vector::Constant(2, 1.0), Vector::Constant(2, 0.25)};
    t.diagnostics = {{1.0, 0.0}, {0.25, 0.0}};
    std::ostringstream tr, dg;
    write_trajectory_csv(tr, t);
    write_diagnostics_csv(dg, t);
    CHECK(tr.str() == "t,y0,y1\n0,1,1\n0.5,0.25,0.25\n");
    CHECK(dg.str() == "t,max_norm,total_variation\n0,1,0\n0.5,0.25,0\n");
  }

  TEST_CASE("svg contains one polyline per piece") {
    SvgSeries s{"curve", {{{0.0, 0.0}, {1.0, 1.0}}, {{-1.0, 0.0}, {-2.0, 1.0}, {-3.0, 0.0}}}};
    std::ostringstream os;
    write_svg(os, {s}, "test");
    const std::string out = os.str();
    CHECK(out.rfind("<svg", 0) == 0);
    std::size_t count = 0;
    for (auto pos = out.find("<polyline"); pos != std::string::npos; pos = out.find("<polyline", pos + 1)) ++count;
    CHECK(count == 2);
    CHECK(out.find("</svg>") != std::string::npos);
  }
}
