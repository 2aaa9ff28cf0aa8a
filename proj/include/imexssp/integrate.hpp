#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "imexssp/schemes.hpp"

namespace imexssp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Periodic stencil (Lu)_j = sum_t weight_t u_{j + offset_t} on n points.
struct PeriodicStencil {
  int n = 0;
  std::vector<std::pair<int, double>> taps;

  std::complex<double> symbol(double phi) const;
};

/// Linear operator on R^n, either dense or a periodic stencil.
class LinearOperator {
 public:
  static LinearOperator zero(int n);
  static LinearOperator dense(Matrix m);
  static LinearOperator periodic(PeriodicStencil stencil);

  int dimension() const { return n_; }
  bool is_zero() const;
  Vector apply(const Vector& x) const;
  Matrix to_dense() const;
  const std::optional<PeriodicStencil>& stencil() const { return stencil_; }

 private:
  int n_ = 0;
  std::optional<Matrix> dense_;
  std::optional<PeriodicStencil> stencil_;
};

/// y' = F y + G y with F treated explicitly and G implicitly.
struct LinearSplitOperator {
  LinearOperator explicit_op;
  LinearOperator implicit_op;

  LinearSplitOperator(LinearOperator f, LinearOperator g);
  int dimension() const { return explicit_op.dimension(); }
};

struct SplitProblem {
  LinearSplitOperator op;
  Vector y0;
  double t0 = 0.0;
  /// Exact solution y(t), when known.
  std::function<Vector(double)> exact;
};

/// Ring buffer of the last k levels of y, f = F y and g = G y. Level 0 is the
/// newest (time level n).
class History {
 public:
  History(int k, double dt);

  int steps() const { return k_; }
  double dt() const { return dt_; }
  /// Time of the newest level.
  double time() const { return t_; }
  std::size_t filled() const { return count_; }
  bool full() const { return count_ == static_cast<std::size_t>(k_); }

  /// Appends a level at time t (the first push sets the time origin).
  void push(double t, Vector y, Vector f, Vector g);

  const Vector& y(int lag) const { return y_[slot(lag)]; }
  const Vector& f(int lag) const { return f_[slot(lag)]; }
  const Vector& g(int lag) const { return g_[slot(lag)]; }

 private:
  std::size_t slot(int lag) const;

  int k_;
  double dt_;
  double t_ = 0.0;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  std::vector<Vector> y_, f_, g_;
};

/// Solver for (alpha I - beta G) x = r; a cyclic tridiagonal fast path is used
/// for periodic stencils with taps in {-1, 0, 1}.
class ImplicitSolver {
 public:
  ImplicitSolver(double alpha, double beta, const LinearOperator& g);
  Vector solve(const Vector& rhs) const;

 private:
  enum class Kind { diagonal, cyclic_tridiagonal, dense };
  Kind kind_ = Kind::diagonal;
  double alpha_ = 1.0;
  // Cyclic tridiagonal system: lower, diagonal, upper (constant coefficients).
  double lo_ = 0.0, di_ = 0.0, up_ = 0.0;
  int n_ = 0;
  Eigen::PartialPivLU<Matrix> lu_;
};

/// Executes a CoefficientSet on a linear split operator with fixed dt.
class Stepper {
 public:
  Stepper(const CoefficientSet& s, const LinearSplitOperator& op, double dt);

  /// Advances the full history by one step and returns the new state.
  Vector step(History& h) const;
  /// Pushes y together with F y and G y.
  void push_level(History& h, double t, const Vector& y) const;

  const CoefficientSet& scheme() const { return scheme_; }
  double dt() const { return dt_; }

 private:
  CoefficientSet scheme_;
  const LinearSplitOperator& op_;
  double dt_;
  ImplicitSolver solver_;
};

/// One multistep step on a full history (builds the implicit solver each call).
Vector step(const CoefficientSet& s, History& h, const LinearSplitOperator& op);

enum class StartMode { exact, euler_bootstrap };

/// Fills k levels at t0, t0 + dt, ..., t0 + (k-1) dt. The bootstrap takes
/// r = ceil(1/sqrt(dt)) IMEX Euler substeps per level (or `refinement` if given).
History start(const SplitProblem& problem, const CoefficientSet& s, double dt, StartMode mode,
              std::optional<int> refinement = std::nullopt);

struct StepDiagnostics {
  double max_norm = 0.0;
  double total_variation = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<StepDiagnostics> diagnostics;
};

struct IntegrateOptions {
  double blow_up_threshold = 1e12;
  bool keep_states = true;
};

/// Integrates from problem.t0 to t_end with uniform dt; throws BlowUp if the
/// max norm exceeds the threshold, StepFailure if a step cannot be solved.
Trajectory integrate(const SplitProblem& problem, const CoefficientSet& s, double t_end, double dt,
                     StartMode mode = StartMode::exact, const IntegrateOptions& opt = {});

/// Runs the scalar test equation y' = lambda y + mu y with dt = 1 from unit data
/// (exact start, normalized) and reports whether max |y_n| stayed below growth_threshold.
bool empirical_stability(const CoefficientSet& s, std::complex<double> lambda, std::complex<double> mu,
                         int n_steps, double growth_threshold = 1e6);

}  // namespace imexssp
