#include "imexssp/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imexssp/errors.hpp"
#include "imexssp/problems.hpp"

namespace imexssp {

namespace {

constexpr double kRcondFloor = 1e-14;

std::size_t wrap(long j, long n) { return static_cast<std::size_t>(((j % n) + n) % n); }

}  // namespace

std::complex<double> PeriodicStencil::symbol(double phi) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [offset, w] : taps) acc += w * std::polar(1.0, phi * offset);
  return acc;
}

LinearOperator LinearOperator::zero(int n) {
  if (n <= 0) throw ParameterError("operator dimension must be positive");
  LinearOperator op;
  op.n_ = n;
  return op;
}

LinearOperator LinearOperator::dense(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ParameterError("dense operator must be square and non-empty");
  LinearOperator op;
  op.n_ = static_cast<int>(m.rows());
  op.dense_ = std::move(m);
  return op;
}

LinearOperator LinearOperator::periodic(PeriodicStencil stencil) {
  if (stencil.n <= 0) throw ParameterError("stencil size must be positive");
  LinearOperator op;
  op.n_ = stencil.n;
  op.stencil_ = std::move(stencil);
  return op;
}

bool LinearOperator::is_zero() const {
  if (dense_) return dense_->isZero(0.0);
  if (stencil_)
    return std::all_of(stencil_->taps.begin(), stencil_->taps.end(), [](const auto& t) { return t.second == 0.0; });
  return true;
}

Vector LinearOperator::apply(const Vector& x) const {
  if (x.size() != n_) throw ParameterError("operator dimension mismatch");
  if (dense_) return *dense_ * x;
  Vector out = Vector::Zero(n_);
  if (stencil_) {
    const long n = n_;
    for (long j = 0; j < n; ++j) {
      double acc = 0.0;
      for (const auto& [offset, w] : stencil_->taps) acc += w * x[static_cast<Eigen::Index>(wrap(j + offset, n))];
      out[j] = acc;
    }
  }
  return out;
}

Matrix LinearOperator::to_dense() const {
  if (dense_) return *dense_;
  Matrix m = Matrix::Zero(n_, n_);
  if (stencil_) {
    const long n = n_;
    for (long j = 0; j < n; ++j)
      for (const auto& [offset, w] : stencil_->taps) m(j, static_cast<Eigen::Index>(wrap(j + offset, n))) += w;
  }
  return m;
}

LinearSplitOperator::LinearSplitOperator(LinearOperator f, LinearOperator g)
    : explicit_op(std::move(f)), implicit_op(std::move(g)) {
  if (explicit_op.dimension() != implicit_op.dimension())
    throw ParameterError("explicit and implicit operators differ in dimension");
}

History::History(int k, double dt) : k_(k), dt_(dt) {
  if (k < 1) throw ParameterError("history needs at least one level");
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const auto n = static_cast<std::size_t>(k);
  y_.resize(n);
  f_.resize(n);
  g_.resize(n);
}

void History::push(double t, Vector y, Vector f, Vector g) {
  head_ = count_ == 0 ? 0 : (head_ + 1) % static_cast<std::size_t>(k_);
  y_[head_] = std::move(y);
  f_[head_] = std::move(f);
  g_[head_] = std::move(g);
  count_ = std::min(count_ + 1, static_cast<std::size_t>(k_));
  t_ = t;
}

std::size_t History::slot(int lag) const {
  if (lag < 0 || static_cast<std::size_t>(lag) >= count_) throw ParameterError("history level not available");
  const auto k = static_cast<std::size_t>(k_);
  return (head_ + k - static_cast<std::size_t>(lag)) % k;
}

ImplicitSolver::ImplicitSolver(double alpha, double beta, const LinearOperator& g) : alpha_(alpha), n_(g.dimension()) {
  if (beta == 0.0 || g.is_zero()) {
    if (std::abs(alpha) < std::numeric_limits<double>::min()) throw StepFailure("singular implicit system");
    kind_ = Kind::diagonal;
    return;
  }
  if (const auto& st = g.stencil(); st && n_ >= 3) {
    bool tridiagonal = true;
    double wm = 0.0, w0 = 0.0, wp = 0.0;
    for (const auto& [offset, w] : st->taps) {
      if (offset == -1) wm += w;
      else if (offset == 0) w0 += w;
      else if (offset == 1) wp += w;
      else tridiagonal = false;
    }
    lo_ = -beta * wm;
    di_ = alpha - beta * w0;
    up_ = -beta * wp;
    if (tridiagonal && std::abs(di_) > std::abs(lo_) + std::abs(up_)) {
      kind_ = Kind::cyclic_tridiagonal;
      return;
    }
  }
  kind_ = Kind::dense;
  Matrix m = -beta * g.to_dense();
  m.diagonal().array() += alpha;
  lu_.compute(m);
  if (!(lu_.rcond() > kRcondFloor)) throw StepFailure("singular implicit system");
}

Vector ImplicitSolver::solve(const Vector& rhs) const {
  switch (kind_) {
    case Kind::diagonal:
      return rhs / alpha_;
    case Kind::dense:
      return lu_.solve(rhs);
    case Kind::cyclic_tridiagonal:
      break;
  }
  // Sherman-Morrison on the cyclic system; corners are M(0, n-1) = lo, M(n-1, 0) = up.
  const Eigen::Index n = n_;
  const double corner_top = lo_;
  const double corner_bottom = up_;
  const double gamma = -di_;
  Vector diag = Vector::Constant(n, di_);
  diag[0] -= gamma;
  diag[n - 1] -= corner_top * corner_bottom / gamma;

  auto thomas = [&](const Vector& r) {
    Vector cp(n), x(n);
    double denom = diag[0];
    cp[0] = up_ / denom;
    x[0] = r[0] / denom;
    for (Eigen::Index i = 1; i < n; ++i) {
      denom = diag[i] - lo_ * cp[i - 1];
      cp[i] = up_ / denom;
      x[i] = (r[i] - lo_ * x[i - 1]) / denom;
    }
    for (Eigen::Index i = n - 2; i >= 0; --i) x[i] -= cp[i] * x[i + 1];
    return x;
  };

  Vector x = thomas(rhs);
  Vector u = Vector::Zero(n);
  u[0] = gamma;
  u[n - 1] = corner_bottom;
  Vector z = thomas(u);
  const double fact = (x[0] + corner_top * x[n - 1] / gamma) / (1.0 + z[0] + corner_top * z[n - 1] / gamma);
  return x - fact * z;
}

Stepper::Stepper(const CoefficientSet& s, const LinearSplitOperator& op, double dt)
    : scheme_(s), op_(op), dt_(dt), solver_(s.a(0), dt * s.c(0), op.implicit_op) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
}

void Stepper::push_level(History& h, double t, const Vector& y) const {
  h.push(t, y, op_.explicit_op.apply(y), op_.implicit_op.apply(y));
}

Vector Stepper::step(History& h) const {
  const int k = scheme_.steps();
  if (h.steps() != k || !h.full()) throw ParameterError("history must hold k levels before stepping");
  Vector rhs = Vector::Zero(op_.dimension());
  for (int i = 1; i <= k; ++i) {
    const int lag = i - 1;
    if (scheme_.a(i) != 0.0) rhs -= scheme_.a(i) * h.y(lag);
    if (scheme_.b(i) != 0.0) rhs += dt_ * scheme_.b(i) * h.f(lag);
    if (scheme_.c(i) != 0.0) rhs += dt_ * scheme_.c(i) * h.g(lag);
  }
  Vector y = solver_.solve(rhs);
  if (!y.allFinite()) throw StepFailure("non-finite state after implicit solve");
  push_level(h, h.time() + dt_, y);
  return y;
}

Vector step(const CoefficientSet& s, History& h, const LinearSplitOperator& op) {
  return Stepper(s, op, h.dt()).step(h);
}

History start(const SplitProblem& problem, const CoefficientSet& s, double dt, StartMode mode,
              std::optional<int> refinement) {
  const int k = s.steps();
  History h(k, dt);
  Stepper stepper(s, problem.op, dt);
  if (mode == StartMode::exact) {
    if (!problem.exact) throw ParameterError("exact start requires an exact solution");
    for (int j = 0; j < k; ++j) {
      const double t = problem.t0 + j * dt;
      stepper.push_level(h, t, problem.exact(t));
    }
    return h;
  }
  const int r = refinement ? *refinement : static_cast<int>(std::ceil(1.0 / std::sqrt(dt)));
  if (r < 1) throw ParameterError("refinement factor must be positive");
  const double sub = dt / r;
  ImplicitSolver euler(1.0, sub, problem.op.implicit_op);
  Vector y = problem.y0;
  stepper.push_level(h, problem.t0, y);
  for (int j = 1; j < k; ++j) {
    for (int m = 0; m < r; ++m) y = euler.solve(y + sub * problem.op.explicit_op.apply(y));
    stepper.push_level(h, problem.t0 + j * dt, y);
  }
  return h;
}

Trajectory integrate(const SplitProblem& problem, const CoefficientSet& s, double t_end, double dt, StartMode mode,
                     const IntegrateOptions& opt) {
  if (!(t_end > problem.t0)) throw ParameterError("t_end must exceed t0");
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const double ratio = (t_end - problem.t0) / dt;
  const double n_round = std::round(ratio);
  if (std::abs(ratio - n_round) > 1e-8 * std::max(1.0, n_round))
    throw ParameterError("(t_end - t0) / dt must be an integer");
  const auto n_levels = static_cast<long>(n_round);
  const int k = s.steps();
  if (n_levels < k - 1) throw ParameterError("interval shorter than the starting levels");

  Trajectory traj;
  auto record = [&](double t, const Vector& y, std::size_t index) {
    const double norm = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
    if (!std::isfinite(norm) || norm > opt.blow_up_threshold) throw BlowUp(index, norm);
    traj.times.push_back(t);
    traj.diagnostics.push_back({norm, total_variation(y)});
    if (opt.keep_states) traj.states.push_back(y);
  };

  History h = start(problem, s, dt, mode);
  for (int j = k - 1; j >= 0; --j) record(problem.t0 + (k - 1 - j) * dt, h.y(j), static_cast<std::size_t>(k - 1 - j));

  Stepper stepper(s, problem.op, dt);
  for (long n = k; n <= n_levels; ++n) {
    Vector y = stepper.step(h);
    record(problem.t0 + static_cast<double>(n) * dt, y, static_cast<std::size_t>(n));
  }
  return traj;
}

bool empirical_stability(const CoefficientSet& s, std::complex<double> lambda, std::complex<double> mu, int n_steps,
                         double growth_threshold) {
  if (n_steps < 100) throw ParameterError("empirical_stability needs at least 100 steps");
  SplitProblem p = dahlquist(lambda, mu);
  // Normalize the starting levels so the largest has unit modulus.
  const std::complex<double> rate = lambda + mu;
  const double scale = std::exp(std::max(0.0, rate.real()) * (s.steps() - 1));
  auto exact = p.exact;
  p.exact = [exact, scale](double t) -> Vector { return exact(t) / scale; };
  p.y0 /= scale;
  IntegrateOptions opt;
  opt.keep_states = false;
  opt.blow_up_threshold = growth_threshold;
  try {
    integrate(p, s, static_cast<double>(s.steps() - 1 + n_steps), 1.0, StartMode::exact, opt);
  } catch (const BlowUp&) {
    return false;
  } catch (const StepFailure&) {
    return false;
  }
  return true;
}

}  // namespace imexssp
