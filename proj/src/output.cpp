#include "imexssp/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace imexssp {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_curve_csv(std::ostream& os, const BoundaryCurve& curve) {
  os << "theta,re,im,is_pole\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : curve) {
    os << format_number(s.theta) << ',' << format_number(s.is_pole ? nan : s.value.real()) << ','
       << format_number(s.is_pole ? nan : s.value.imag()) << ',' << (s.is_pole ? 1 : 0) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells) {
  os << "lambda_re,lambda_im,mu_re,mu_im,stable,max_root_modulus\n";
  for (const auto& c : cells) {
    os << format_number(c.lambda.real()) << ',' << format_number(c.lambda.imag()) << ',' << format_number(c.mu.real())
       << ',' << format_number(c.mu.imag()) << ',' << (c.verdict.stable ? 1 : 0) << ','
       << format_number(c.verdict.max_root_modulus) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  for (Eigen::Index j = 0; j < n; ++j) os << ",y" << j;
  os << '\n';
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    os << format_number(traj.times[i]);
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << format_number(traj.states[i][j]);
    os << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,max_norm,total_variation\n";
  for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
    os << format_number(traj.times[i]) << ',' << format_number(traj.diagnostics[i].max_norm) << ','
       << format_number(traj.diagnostics[i].total_variation) << '\n';
  }
}

std::vector<std::vector<ComplexValue>> curve_polylines(const BoundaryCurve& curve) {
  std::vector<std::vector<ComplexValue>> out(1);
  for (const auto& s : curve) {
    if (s.is_pole) {
      if (!out.back().empty()) out.emplace_back();
      continue;
    }
    out.back().push_back(s.value);
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title) {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (const auto& line : s.polylines)
      for (const auto& z : line) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
        if (first) {
          xmin = xmax = z.real();
          ymin = ymax = z.imag();
          first = false;
        }
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
      }
  xmin = std::min(xmin, 0.0);
  xmax = std::max(xmax, 0.0);
  ymin = std::min(ymin, 0.0);
  ymax = std::max(ymax, 0.0);
  const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-12});
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double size = 600.0;
  const double scale = size / std::max(xmax - xmin, ymax - ymin);
  const double w = (xmax - xmin) * scale, h = (ymax - ymin) * scale;
  auto px = [&](double x) { return format_number((x - xmin) * scale); };
  auto py = [&](double y) { return format_number((ymax - y) * scale); };

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(w) << "\" height=\""
     << format_number(h) << "\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(0)
     << "\" stroke=\"#888\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(0) << "\" y2=\"" << py(ymax)
     << "\" stroke=\"#888\"/>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* colour = colours[i % (sizeof colours / sizeof *colours)];
    os << "<g stroke=\"" << colour << "\" fill=\"none\"><desc>" << series[i].label << "</desc>\n";
    for (const auto& line : series[i].polylines) {
      os << "<polyline points=\"";
      for (const auto& z : line) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
        os << px(z.real()) << ',' << py(z.imag()) << ' ';
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
}

}  // namespace imexssp
