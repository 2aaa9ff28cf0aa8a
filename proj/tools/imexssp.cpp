#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "imexssp/acceptance.hpp"
#include "imexssp/errors.hpp"
#include "imexssp/integrate.hpp"
#include "imexssp/kernels.hpp"
#include "imexssp/output.hpp"
#include "imexssp/problems.hpp"
#include "imexssp/stability.hpp"

using namespace imexssp;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
  std::string scheme = "ssp3";
  double beta = 0.0;
  double mcnab_c = 0.125;
  std::optional<double> nu;
  double sigma = 0.5;
  double dnum = 0.0;
  std::optional<double> dt;
  double t_end = 1.0;
  int n_theta = 4096;
  int cells = 100;
  std::uint64_t seed = 20240601;
  std::string format = "csv";
  std::string out;
  std::string problem;

  // regions
  std::string curve;
  bool phi_family = false;
  int family_count = 16;
  std::vector<double> lambda;
  bool grid = false;
  std::vector<double> re_range{-4.0, 2.0};
  std::vector<double> im_range{-3.0, 3.0};
  int grid_n = 50;

  // verify
  std::vector<std::string> only;

  // converge / tvd
  std::vector<double> mu{-0.6, 0.0};
  int levels = 4;
  int steps = 200;
  std::string data = "step";
  std::string trajectory;
  std::string diagnostics;

  SchemeParams params() const { return {beta, mcnab_c}; }
};

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParameterError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

ComplexValue complex_of(const std::vector<double>& v, ComplexValue fallback = {}) {
  return v.size() == 2 ? ComplexValue(v[0], v[1]) : fallback;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json curve_json(const BoundaryCurve& curve) {
  json arr = json::array();
  for (const auto& s : curve)
    arr.push_back({{"theta", s.theta},
                   {"re", s.is_pole ? json(nullptr) : number(s.value.real())},
                   {"im", s.is_pole ? json(nullptr) : number(s.value.imag())},
                   {"is_pole", s.is_pole}});
  return arr;
}

int cmd_regions(const RunConfig& cfg) {
  const auto s = make_scheme(cfg.scheme, cfg.params());
  SamplingOptions so;
  so.n = cfg.n_theta;
  Sink sink(cfg.out);
  auto& os = sink.stream();

  if (cfg.grid) {
    const ComplexValue lambda = complex_of(cfg.lambda);
    const auto mus =
        kernels::complex_grid(cfg.re_range.at(0), cfg.re_range.at(1), cfg.im_range.at(0), cfg.im_range.at(1),
                              cfg.grid_n, cfg.grid_n);
    const auto verdicts = kernels::omp::root_condition_batch(s, lambda, mus, RootOptions{});
    std::vector<GridCell> cells;
    for (std::size_t i = 0; i < mus.size(); ++i) cells.push_back({lambda, mus[i], verdicts[i]});
    if (cfg.format == "json") {
      json arr = json::array();
      for (const auto& c : cells)
        arr.push_back({{"lambda_re", c.lambda.real()},
                       {"lambda_im", c.lambda.imag()},
                       {"mu_re", c.mu.real()},
                       {"mu_im", c.mu.imag()},
                       {"stable", c.verdict.stable},
                       {"max_root_modulus", c.verdict.max_root_modulus}});
      os << arr.dump(2) << '\n';
    } else {
      write_grid_csv(os, cells);
    }
    return 0;
  }

  if (cfg.phi_family) {
    if (!s.has_implicit() || !s.has_explicit()) throw ParameterError("--phi-family needs an IMEX scheme");
    BoundaryCurve lambdas = explicit_boundary(s, so);
    if (cfg.nu) lambdas = restrict_curve(lambdas, *cfg.nu);
    const auto finite = lambdas.finite_values();
    const int m = std::max(1, cfg.family_count);
    std::vector<ComplexValue> picks;
    for (int j = 0; j < m; ++j) picks.push_back(finite[finite.size() * static_cast<std::size_t>(j) / m]);
    std::vector<BoundaryCurve> images;
    for (const auto& l : picks) images.push_back(phi_lambda_curve(s, l, so));

    if (cfg.format == "svg") {
      std::vector<SvgSeries> series;
      for (std::size_t j = 0; j < picks.size(); ++j)
        series.push_back({"lambda " + format_number(picks[j].real()) + " " + format_number(picks[j].imag()),
                          curve_polylines(images[j])});
      write_svg(os, series, s.name() + " phi_lambda family");
    } else if (cfg.format == "json") {
      json arr = json::array();
      for (std::size_t j = 0; j < picks.size(); ++j)
        arr.push_back({{"lambda_re", picks[j].real()},
                       {"lambda_im", picks[j].imag()},
                       {"alpha", measure_alpha(images[j]).alpha},
                       {"curve", curve_json(images[j])}});
      os << json{{"scheme", s.name()}, {"family", arr}}.dump(2) << '\n';
    } else {
      os << "family,lambda_re,lambda_im,theta,re,im,is_pole\n";
      for (std::size_t j = 0; j < picks.size(); ++j) {
        std::ostringstream body;
        write_curve_csv(body, images[j]);
        std::istringstream lines(body.str());
        std::string line;
        std::getline(lines, line);  // header
        const std::string prefix =
            std::to_string(j) + ',' + format_number(picks[j].real()) + ',' + format_number(picks[j].imag()) + ',';
        while (std::getline(lines, line)) os << prefix << line << '\n';
      }
    }
    return 0;
  }

  std::string kind = cfg.curve;
  if (kind.empty()) kind = s.has_explicit() ? "explicit" : "implicit";
  BoundaryCurve curve = kind == "explicit"   ? explicit_boundary(s, so)
                        : kind == "implicit" ? implicit_boundary(s, so)
                                             : phi_lambda_curve(s, complex_of(cfg.lambda), so);
  if (cfg.nu && kind == "explicit") curve = restrict_curve(curve, *cfg.nu);
  if (cfg.format == "svg") {
    write_svg(os, {{s.name() + " " + kind, curve_polylines(curve)}}, s.name() + " " + kind + " boundary");
  } else if (cfg.format == "json") {
    const auto w = measure_alpha(curve);
    os << json{{"scheme", s.name()},
               {"curve", kind},
               {"alpha", w.alpha},
               {"tan_alpha", number(w.tan_alpha)},
               {"samples", curve_json(curve)}}
              .dump(2)
       << '\n';
  } else {
    write_curve_csv(os, curve);
  }
  return 0;
}

int cmd_angles(const RunConfig& cfg) {
  const auto rows = angle_table(std::min(cfg.n_theta, 2048), std::min(cfg.n_theta, 2048));
  Sink sink(cfg.out);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"scheme", r.scheme},
                     {"params", r.params},
                     {"alpha_measured", r.alpha_measured},
                     {"alpha_closed_form", r.alpha_closed_form ? json(*r.alpha_closed_form) : json(nullptr)},
                     {"alpha_paper", r.alpha_reference}});
    os << arr.dump(2) << '\n';
    return 0;
  }
  if (cfg.format != "csv") throw ParameterError("angles supports csv and json");
  os << "scheme,params,alpha_measured,alpha_closed_form,alpha_paper\n";
  for (const auto& r : rows)
    os << r.scheme << ',' << r.params << ',' << format_number(r.alpha_measured) << ','
       << (r.alpha_closed_form ? format_number(*r.alpha_closed_form) : std::string()) << ','
       << format_number(r.alpha_reference) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto opt = AcceptanceOptions::from_environment();
  const auto results = run_acceptance(opt, cfg.only);
  Sink sink(cfg.out);
  auto& os = sink.stream();
  bool all = true;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      all = all && r.passed;
    }
    os << arr.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.name << ": " << r.detail << '\n';
      all = all && r.passed;
    }
  }
  return all ? 0 : 1;
}

int cmd_converge(const RunConfig& cfg) {
  std::vector<std::string> ids;
  if (cfg.scheme == "all") ids = builtin_scheme_ids();
  else ids.push_back(cfg.scheme);
  const std::string problem = cfg.problem.empty() ? "dahlquist" : cfg.problem;

  struct Row {
    std::string scheme;
    std::vector<double> dts, errors;
    double order;
  };
  std::vector<Row> rows;
  for (const auto& id : ids) {
    const auto s = make_scheme(id, cfg.params());
    if (problem == "dahlquist") {
      const double dt0 = cfg.dt.value_or(1.0 / 40.0);
      std::vector<double> dts;
      for (int j = 0; j < cfg.levels; ++j) dts.push_back(dt0 / std::pow(2.0, j));
      const auto row = convergence_study(s, complex_of(cfg.lambda, -0.4), complex_of(cfg.mu), cfg.t_end, dts);
      rows.push_back({id, row.dts, row.errors, row.order});
    } else if (problem == "advdiff") {
      GridSpec grid;
      grid.n_cells = cfg.cells;
      AdvectionDiffusionConfig ad;
      ad.courant = cfg.sigma;
      ad.diffusion_number = cfg.dnum;
      const auto op = advection_diffusion_1d(grid, ad);
      const Vector x = cell_centres(grid);
      Vector u0(grid.n_cells);
      for (int j = 0; j < grid.n_cells; ++j) u0[j] = std::sin(2.0 * kPi * x[j]);
      const auto prob = periodic_problem(op, u0);
      const double dt0 = cfg.dt.value_or(advection_dt(grid, ad));
      Row row{id, {}, {}, 0.0};
      for (int j = 0; j < cfg.levels; ++j) {
        const double dt = dt0 / std::pow(2.0, j);
        const double t_end = std::round(cfg.t_end / dt0) * dt0;
        const auto traj = integrate(prob, s, t_end, dt, StartMode::exact);
        row.dts.push_back(dt);
        row.errors.push_back((traj.states.back() - prob.exact(t_end)).cwiseAbs().maxCoeff());
      }
      row.order = fitted_order(row.dts, row.errors);
      rows.push_back(row);
    } else {
      throw ParameterError("converge supports --problem dahlquist|advdiff");
    }
  }

  Sink sink(cfg.out);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"scheme", r.scheme}, {"dt", r.dts}, {"error", r.errors}, {"order", r.order}});
    os << arr.dump(2) << '\n';
    return 0;
  }
  os << "scheme,dt,error,order\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.dts.size(); ++i)
      os << r.scheme << ',' << format_number(r.dts[i]) << ',' << format_number(r.errors[i]) << ','
         << format_number(r.order) << '\n';
  return 0;
}

int cmd_tvd(const RunConfig& cfg) {
  const auto s = make_scheme(cfg.scheme, cfg.params());
  const std::string problem = cfg.problem.empty() ? "upwind" : cfg.problem;
  GridSpec grid;
  grid.n_cells = cfg.cells;
  grid.validate();
  std::optional<LinearSplitOperator> op;
  double dt = 0.0;
  if (problem == "upwind") {
    op = upwind_advection(grid, cfg.sigma);
    dt = cfg.sigma * grid.dx();
  } else if (problem == "advdiff") {
    AdvectionDiffusionConfig ad;
    ad.courant = cfg.sigma;
    ad.diffusion_number = cfg.dnum;
    op = advection_diffusion_1d(grid, ad);
    dt = advection_dt(grid, ad);
  } else {
    throw ParameterError("tvd supports --problem upwind|advdiff");
  }
  if (cfg.data != "step" && cfg.data != "random") throw ParameterError("--data must be step or random");
  const Vector u0 = cfg.data == "step" ? step_data(grid) : random_monotone_data(grid, cfg.seed);
  const auto prob = periodic_problem(*op, u0);
  const int k = s.steps();

  Trajectory traj;
  std::optional<BlowUp> blow;
  try {
    // Beyond the stable Courant range TV growth is still reported; stop only on overflow.
    IntegrateOptions io;
    io.blow_up_threshold = std::numeric_limits<double>::max();
    traj = integrate(prob, s, (k - 1 + cfg.steps) * dt, dt, StartMode::exact, io);
  } catch (const BlowUp& e) {
    blow = e;
  }
  double growth = 0.0;
  for (std::size_t i = 1; i < traj.diagnostics.size(); ++i)
    growth = std::max(growth, traj.diagnostics[i].total_variation - traj.diagnostics[i - 1].total_variation);

  if (!cfg.trajectory.empty()) {
    std::ofstream f(cfg.trajectory);
    if (!f) throw ParameterError("cannot open " + cfg.trajectory);
    write_trajectory_csv(f, traj);
  }
  if (!cfg.diagnostics.empty()) {
    std::ofstream f(cfg.diagnostics);
    if (!f) throw ParameterError("cannot open " + cfg.diagnostics);
    write_diagnostics_csv(f, traj);
  }

  Sink sink(cfg.out);
  auto& os = sink.stream();
  if (cfg.format == "json") {
    json tv = json::array();
    for (const auto& d : traj.diagnostics) tv.push_back(d.total_variation);
    json doc{{"scheme", s.name()}, {"sigma", cfg.sigma}, {"steps", cfg.steps}, {"total_variation", tv},
             {"max_tv_growth", blow ? json(nullptr) : json(growth)}};
    if (blow) doc["blow_up_step"] = blow->step();
    os << doc.dump(2) << '\n';
  } else {
    os << "level,t,total_variation\n";
    for (std::size_t i = 0; i < traj.diagnostics.size(); ++i)
      os << i << ',' << format_number(traj.times[i]) << ',' << format_number(traj.diagnostics[i].total_variation)
         << '\n';
  }
  if (blow) std::cerr << blow->what() << '\n';
  else std::cerr << s.name() << " sigma=" << format_number(cfg.sigma) << " max per-step TV growth "
               << format_number(growth) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMEX multistep schemes built on SSP explicit integrators: stability regions and experiments"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scheme", cfg.scheme, "scheme id")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "centred integrator parameter in [0, 1/2]")->capture_default_str();
    sub->add_option("--mcnab-c", cfg.mcnab_c, "mCNAB parameter c")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv|svg|json")
        ->check(CLI::IsMember({"csv", "svg", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--n-theta", cfg.n_theta, "base samples on the unit circle")
        ->check(CLI::Range(16, 1 << 20))
        ->capture_default_str();
  };

  auto* regions = app.add_subcommand("regions", "boundary curves, phi_lambda families and stability grids");
  add_common(regions);
  regions->add_option("--curve", cfg.curve, "explicit|implicit|phi")->check(CLI::IsMember({"explicit", "implicit", "phi"}));
  regions->add_option("--nu", cfg.nu, "restrict lambda to |Im| <= nu");
  regions->add_flag("--phi-family", cfg.phi_family, "phi_lambda images for lambda on the explicit boundary");
  regions->add_option("--family-count", cfg.family_count, "number of lambda samples in the family")
      ->capture_default_str();
  regions->add_option("--lambda", cfg.lambda, "explicit eigenvalue re im")->expected(2);
  regions->add_flag("--grid", cfg.grid, "root-condition classification over a mu grid");
  regions->add_option("--re-range", cfg.re_range, "grid real range")->expected(2);
  regions->add_option("--im-range", cfg.im_range, "grid imaginary range")->expected(2);
  regions->add_option("--grid-n", cfg.grid_n, "grid points per axis")->check(CLI::Range(2, 4096))->capture_default_str();

  auto* angles = app.add_subcommand("angles", "wedge angles for the comparison table");
  add_common(angles);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify);
  verify->add_option("--only", cfg.only, "criterion names")->check(CLI::IsMember(criterion_names()));

  auto* converge = app.add_subcommand("converge", "error against dt and fitted order");
  add_common(converge);
  converge->add_option("--problem", cfg.problem, "dahlquist|advdiff");
  converge->add_option("--dt", cfg.dt, "largest time step");
  converge->add_option("--t-end", cfg.t_end, "final time")->capture_default_str();
  converge->add_option("--levels", cfg.levels, "number of halvings of dt")->check(CLI::Range(2, 12))->capture_default_str();
  converge->add_option("--lambda", cfg.lambda, "explicit eigenvalue re im (default -0.4 0)")->expected(2);
  converge->add_option("--mu", cfg.mu, "implicit eigenvalue re im")->expected(2);
  converge->add_option("--sigma", cfg.sigma, "Courant number")->capture_default_str();
  converge->add_option("--dnum", cfg.dnum, "diffusion number")->capture_default_str();
  converge->add_option("--cells", cfg.cells, "grid cells")->capture_default_str();

  auto* tvd = app.add_subcommand("tvd", "total variation per step");
  add_common(tvd);
  tvd->add_option("--problem", cfg.problem, "upwind|advdiff");
  tvd->add_option("--sigma", cfg.sigma, "Courant number")->capture_default_str();
  tvd->add_option("--dnum", cfg.dnum, "diffusion number")->capture_default_str();
  tvd->add_option("--cells", cfg.cells, "grid cells")->capture_default_str();
  tvd->add_option("--steps", cfg.steps, "steps after the starting levels")->check(CLI::Range(1, 10000000))->capture_default_str();
  tvd->add_option("--data", cfg.data, "step|random")->capture_default_str();
  tvd->add_option("--seed", cfg.seed, "seed for random data")->capture_default_str();
  tvd->add_option("--trajectory", cfg.trajectory, "write states as CSV");
  tvd->add_option("--diagnostics", cfg.diagnostics, "write max norm and TV as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (regions->parsed()) return cmd_regions(cfg);
    if (angles->parsed()) return cmd_angles(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (tvd->parsed()) return cmd_tvd(cfg);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
