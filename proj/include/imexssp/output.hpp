#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "imexssp/integrate.hpp"
#include "imexssp/stability.hpp"

namespace imexssp {

/// %.12g formatting; non-finite values print as nan / inf / -inf.
std::string format_number(double x);

/// `theta,re,im,is_pole`; pole samples carry nan coordinates.
void write_curve_csv(std::ostream& os, const BoundaryCurve& curve);

struct GridCell {
  ComplexValue lambda{};
  ComplexValue mu{};
  StabilityVerdict verdict;
};

/// `lambda_re,lambda_im,mu_re,mu_im,stable,max_root_modulus`
void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells);

/// `t,y0,y1,...`
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// `t,max_norm,total_variation`
void write_diagnostics_csv(std::ostream& os, const Trajectory& traj);

struct SvgSeries {
  std::string label;
  std::vector<std::vector<ComplexValue>> polylines;
};

/// Minimal SVG: coordinate axes plus one polyline per series piece.
void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title);

/// Splits a curve into polylines at pole markers.
std::vector<std::vector<ComplexValue>> curve_polylines(const BoundaryCurve& curve);

}  // namespace imexssp
