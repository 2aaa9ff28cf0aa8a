#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imexssp/schemes.hpp"

namespace imexssp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  /// Multiplies every pinned tolerance; defaults to IMEXSSP_TOL_SCALE or 1.
  double tolerance_scale = 1.0;
  /// Builds the centred implicit integrator checked against the closed form
  /// (replaceable for negative controls).
  std::function<CoefficientSet(int k, double beta)> centred_factory = implicit_centred;

  static AcceptanceOptions from_environment();
};

/// Short names accepted by --only: lemma1, lemma2, conjecture1, conjecture2,
/// taylor, table1, oracle, convergence, tvd, empirical, fourier.
std::vector<std::string> criterion_names();

CriterionResult check_lemma1(const AcceptanceOptions& opt);
CriterionResult check_lemma2(const AcceptanceOptions& opt);
CriterionResult check_conjecture1(const AcceptanceOptions& opt);
CriterionResult check_conjecture2(const AcceptanceOptions& opt);
CriterionResult check_taylor(const AcceptanceOptions& opt);
CriterionResult check_table1(const AcceptanceOptions& opt);
CriterionResult check_oracle(const AcceptanceOptions& opt);
CriterionResult check_convergence(const AcceptanceOptions& opt);
CriterionResult check_tvd(const AcceptanceOptions& opt);
CriterionResult check_empirical(const AcceptanceOptions& opt);
CriterionResult check_fourier(const AcceptanceOptions& opt);

/// Runs the selected criteria (all when `only` is empty) in id order. Unknown
/// names throw ParameterError.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<std::string>& only = {});

/// One row of the wedge-angle table.
struct AngleRow {
  std::string scheme;
  std::string params;
  double alpha_measured = 0.0;
  std::optional<double> alpha_closed_form;
  double alpha_reference = 0.0;
};

/// Measured wedge angles for the eight table rows.
std::vector<AngleRow> angle_table(int n_lambda = 2048, int n_theta = 2048);

struct ConvergenceRow {
  std::string scheme;
  std::vector<double> dts;
  std::vector<double> errors;
  double order = 0.0;
};

/// Final-time error on y' = lambda y + mu y (lambda + mu folded into lambda for
/// schemes without implicit weights) and the least-squares order.
ConvergenceRow convergence_study(const CoefficientSet& s, std::complex<double> lambda, std::complex<double> mu,
                                 double t_end, const std::vector<double>& dts);

/// Least-squares slope of log(errors) against log(dts).
double fitted_order(const std::vector<double>& dts, const std::vector<double>& errors);

struct TvdReport {
  std::vector<double> total_variation;
  /// Largest TV_{n+1} - TV_n.
  double max_growth = 0.0;
  /// Largest TV_{n+1} - max(TV_n, ..., TV_{n+1-k}).
  double max_window_growth = 0.0;
  bool blew_up = false;
};

/// Upwind advection with exact start; TV per time level and its growth.
TvdReport tvd_experiment(const CoefficientSet& s, double courant, int n_steps, int n_cells,
                         std::optional<std::uint64_t> random_seed = std::nullopt);

}  // namespace imexssp
