#include "imexssp/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imexssp/errors.hpp"

namespace imexssp {

namespace {

constexpr double kSumTolerance = 1e-12;

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

bool any_nonzero(std::span<const double> v) {
  return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void require_k(int k) {
  if (k != 3 && k != 4) throw ParameterError("unsupported step count: " + std::to_string(k));
}

std::vector<Rational> ssp_a(int k) {
  if (k == 3) return {Rational(4, 6), Rational(-3, 6), 0, Rational(-1, 6)};
  return {Rational(9, 12), Rational(-8, 12), 0, 0, Rational(-1, 12)};
}

std::vector<Rational> zeros(int k) { return std::vector<Rational>(static_cast<std::size_t>(k + 1), 0); }

// Implicit weights for the centred integrator; falls back to doubles when beta
// has no small rational representation.
struct CentredWeights {
  std::optional<std::vector<Rational>> exact;
  std::vector<double> approx;
};

CentredWeights centred_c(int k, double beta) {
  if (!(beta >= 0.0 && beta <= 0.5))
    throw ParameterError("implicit_centred: beta must lie in [0, 1/2], got " + std::to_string(beta));
  CentredWeights w;
  w.approx.assign(static_cast<std::size_t>(k + 1), 0.0);
  w.approx[0] = (1.0 - beta) / 2.0;
  w.approx[1] = beta;
  w.approx[2] = (1.0 - beta) / 2.0;
  if (auto rb = to_rational(beta)) {
    auto c = zeros(k);
    c[0] = (Rational(1) - *rb) / 2;
    c[1] = *rb;
    c[2] = (Rational(1) - *rb) / 2;
    w.exact = std::move(c);
  }
  return w;
}

}  // namespace

std::optional<Rational> to_rational(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents of x.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 9e15) return std::nullopt;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_denominator) return std::nullopt;
    if (static_cast<double>(p2) / static_cast<double>(q2) == x) return Rational(p2, q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - fl;
    if (frac == 0.0) return std::nullopt;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

CoefficientSet::CoefficientSet(std::string name, std::vector<double> a, std::vector<double> b,
                               std::vector<double> c, Params params)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), params_(std::move(params)) {
  validate();
}

CoefficientSet::CoefficientSet(std::string name, ExactWeights exact, Params params)
    : name_(std::move(name)),
      a_(to_doubles(exact.a)),
      b_(to_doubles(exact.b)),
      c_(to_doubles(exact.c)),
      exact_(std::move(exact)),
      params_(std::move(params)) {
  validate();
  const auto& e = *exact_;
  if (std::accumulate(e.a.begin(), e.a.end(), Rational(0)) != Rational(0))
    throw ParameterError(name_ + ": sum of a_i is not exactly zero");
}

bool CoefficientSet::has_explicit() const { return any_nonzero(b_); }
bool CoefficientSet::has_implicit() const { return any_nonzero(c_); }

void CoefficientSet::validate() const {
  if (a_.size() < 2) throw ParameterError(name_ + ": need k >= 1");
  if (b_.size() != a_.size() || c_.size() != a_.size())
    throw ParameterError(name_ + ": a, b, c must all have length k+1");
  if (b_[0] != 0.0) throw ParameterError(name_ + ": b_0 must be zero (explicit operator)");
  if (a_[0] == 0.0) throw ParameterError(name_ + ": a_0 must be nonzero");

  double scale = 0.0;
  for (double v : a_) scale = std::max(scale, std::abs(v));
  if (std::abs(sum(a_)) > kSumTolerance * scale) throw ParameterError(name_ + ": sum of a_i must vanish");
  if (has_implicit()) {
    if (c_[0] == 0.0) throw ParameterError(name_ + ": c_0 must be nonzero for an implicit scheme");
    if (std::abs(sum(c_) - 1.0) > kSumTolerance) throw ParameterError(name_ + ": sum of c_i must be 1");
  }
  if (has_explicit() && std::abs(sum(b_) - 1.0) > kSumTolerance)
    throw ParameterError(name_ + ": sum of b_i must be 1");
  if (!has_explicit() && !has_implicit()) throw ParameterError(name_ + ": no operator weights");
}

CharPolys char_polys(const CoefficientSet& s) {
  auto vec = [](std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); };
  return {Polynomial(vec(s.a())), Polynomial(vec(s.b())), Polynomial(vec(s.c()))};
}

CoefficientSet from_char_polys(const CharPolys& p, std::string name, CoefficientSet::Params params) {
  const std::size_t n = std::max({p.A.size(), p.B.size(), p.C.size()});
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = p.A.coefficient(i);
    b[i] = p.B.coefficient(i);
    c[i] = p.C.coefficient(i);
  }
  return CoefficientSet(std::move(name), std::move(a), std::move(b), std::move(c), std::move(params));
}

CoefficientSet ssp_explicit(int k) {
  require_k(k);
  auto b = zeros(k);
  b[1] = 1;
  return CoefficientSet("ssp" + std::to_string(k), ExactWeights{ssp_a(k), std::move(b), zeros(k)});
}

CoefficientSet implicit_biased(int k) {
  require_k(k);
  auto c = zeros(k);
  c[0] = Rational(2, 3);
  c[3] = Rational(1, 3);
  return CoefficientSet("implicit-biased-k" + std::to_string(k), ExactWeights{ssp_a(k), zeros(k), std::move(c)});
}

CoefficientSet implicit_centred(int k, double beta) {
  require_k(k);
  auto w = centred_c(k, beta);
  std::string name = "implicit-centred-k" + std::to_string(k);
  if (w.exact) return CoefficientSet(name, ExactWeights{ssp_a(k), zeros(k), std::move(*w.exact)}, {{"beta", beta}});
  std::vector<double> zero(static_cast<std::size_t>(k + 1), 0.0);
  return CoefficientSet(name, to_doubles(ssp_a(k)), zero, std::move(w.approx), {{"beta", beta}});
}

CoefficientSet imex_scheme(ImexVariant variant, int k, double beta) {
  require_k(k);
  auto b = zeros(k);
  b[1] = 1;
  if (variant == ImexVariant::biased) {
    auto c = zeros(k);
    c[0] = Rational(2, 3);
    c[3] = Rational(1, 3);
    return CoefficientSet("imex-biased-k" + std::to_string(k), ExactWeights{ssp_a(k), std::move(b), std::move(c)});
  }
  auto w = centred_c(k, beta);
  std::string name = "imex-centred-k" + std::to_string(k);
  if (w.exact) return CoefficientSet(name, ExactWeights{ssp_a(k), std::move(b), std::move(*w.exact)}, {{"beta", beta}});
  return CoefficientSet(name, to_doubles(ssp_a(k)), to_doubles(b), std::move(w.approx), {{"beta", beta}});
}

CoefficientSet mcnab(double c_param) {
  const CoefficientSet::Params params{{"mcnab_c", c_param}};
  if (auto rc = to_rational(c_param)) {
    const Rational c = *rc;
    return CoefficientSet("mcnab",
                          ExactWeights{{1, -1, 0},
                                       {0, Rational(3, 2), Rational(-1, 2)},
                                       {(1 + c) / 2, (1 - 2 * c) / 2, c / 2}},
                          params);
  }
  return CoefficientSet("mcnab", {1.0, -1.0, 0.0}, {0.0, 1.5, -0.5},
                        {(1.0 + c_param) / 2.0, (1.0 - 2.0 * c_param) / 2.0, c_param / 2.0}, params);
}

CoefficientSet imex_bdf2() {
  return CoefficientSet("imex-bdf2", ExactWeights{{Rational(3, 2), -2, Rational(1, 2)}, {0, 2, -1}, {1, 0, 0}});
}

CoefficientSet forward_euler() { return CoefficientSet("forward-euler", ExactWeights{{1, -1}, {0, 1}, {0, 0}}); }

double order_residual(const CoefficientSet& s, int degree) {
  if (degree < 0) throw ParameterError("order_residual: degree must be non-negative");
  const int k = s.steps();
  double worst = 0.0;
  // Each non-zero pair (a, b) and (a, c) must be exact on t^q.
  bool use_b = false, use_c = false;
  for (int i = 0; i <= k; ++i) {
    use_b = use_b || s.b(i) != 0.0;
    use_c = use_c || s.c(i) != 0.0;
  }
  if (const auto& e = s.exact()) {
    for (int q = 0; q <= degree; ++q) {
      Rational ra = 0, rb = 0, rc = 0;
      for (int i = 0; i <= k; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        // t = -i; t^q with 0^0 = 1.
        Rational tq = 1;
        for (int m = 0; m < q; ++m) tq *= Rational(-i);
        Rational dtq = 0;
        if (q > 0) {
          dtq = q;
          for (int m = 0; m < q - 1; ++m) dtq *= Rational(-i);
        }
        ra += e->a[idx] * tq;
        rb += e->b[idx] * dtq;
        rc += e->c[idx] * dtq;
      }
      if (use_b || !use_c) worst = std::max(worst, std::abs(to_double(ra - rb)));
      if (use_c) worst = std::max(worst, std::abs(to_double(ra - rc)));
    }
    return worst;
  }
  for (int q = 0; q <= degree; ++q) {
    double ra = 0.0, rb = 0.0, rc = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double t = -static_cast<double>(i);
      const double tq = q == 0 ? 1.0 : std::pow(t, q);
      const double dtq = q == 0 ? 0.0 : q * (q == 1 ? 1.0 : std::pow(t, q - 1));
      ra += s.a(i) * tq;
      rb += s.b(i) * dtq;
      rc += s.c(i) * dtq;
    }
    if (use_b || !use_c) worst = std::max(worst, std::abs(ra - rb));
    if (use_c) worst = std::max(worst, std::abs(ra - rc));
  }
  return worst;
}

CoefficientSet make_scheme(const std::string& id, const SchemeParams& p) {
  if (id == "ssp3") return ssp_explicit(3);
  if (id == "ssp4") return ssp_explicit(4);
  if (id == "imex-biased-k3") return imex_scheme(ImexVariant::biased, 3);
  if (id == "imex-biased-k4") return imex_scheme(ImexVariant::biased, 4);
  if (id == "imex-centred-k3") return imex_scheme(ImexVariant::centred, 3, p.beta);
  if (id == "imex-centred-k4") return imex_scheme(ImexVariant::centred, 4, p.beta);
  if (id == "mcnab") return mcnab(p.mcnab_c);
  if (id == "imex-bdf2") return imex_bdf2();
  if (id == "implicit-biased-k3") return implicit_biased(3);
  if (id == "implicit-biased-k4") return implicit_biased(4);
  if (id == "implicit-centred-k3") return implicit_centred(3, p.beta);
  if (id == "implicit-centred-k4") return implicit_centred(4, p.beta);
  if (id == "forward-euler") return forward_euler();
  throw ParameterError("unknown scheme id: " + id);
}

std::vector<std::string> builtin_scheme_ids() {
  return {"ssp3", "ssp4", "imex-biased-k3", "imex-biased-k4", "imex-centred-k3", "imex-centred-k4", "mcnab",
          "imex-bdf2"};
}

std::vector<std::string> scheme_ids() {
  auto ids = builtin_scheme_ids();
  for (const char* extra : {"implicit-biased-k3", "implicit-biased-k4", "implicit-centred-k3", "implicit-centred-k4",
                            "forward-euler"})
    ids.emplace_back(extra);
  return ids;
}

}  // namespace imexssp
