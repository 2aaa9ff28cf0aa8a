#pragma once

// Multistep IMEX schemes in the normalized form
//
//   sum_{i=0}^k a_i y_{n+1-i} = dt * ( sum_{i=1}^k b_i f_{n+1-i} + sum_{i=0}^k c_i g_{n+1-i} )
//
// where f is treated explicitly and g implicitly.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "imexssp/polynomial.hpp"

namespace imexssp {

using Rational = boost::rational<std::int64_t>;

/// Recovers p/q (q <= max_denominator) when x is exactly the double nearest
/// to p/q. Returns nullopt otherwise.
std::optional<Rational> to_rational(double x, std::int64_t max_denominator = 1'000'000);

struct ExactWeights {
  std::vector<Rational> a, b, c;
};

class CoefficientSet {
 public:
  using Params = std::map<std::string, double>;

  /// Validates the invariants: matching lengths k+1, b_0 = 0, sum a = 0,
  /// c_0 != 0 and sum c = 1 when implicit weights are present, sum b = 1 when
  /// explicit weights are present. Throws ParameterError.
  CoefficientSet(std::string name, std::vector<double> a, std::vector<double> b, std::vector<double> c,
                 Params params = {});
  CoefficientSet(std::string name, ExactWeights exact, Params params = {});

  int steps() const { return static_cast<int>(a_.size()) - 1; }
  std::span<const double> a() const { return a_; }
  std::span<const double> b() const { return b_; }
  std::span<const double> c() const { return c_; }
  double a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  double b(int i) const { return b_[static_cast<std::size_t>(i)]; }
  double c(int i) const { return c_[static_cast<std::size_t>(i)]; }

  const std::optional<ExactWeights>& exact() const { return exact_; }
  const std::string& name() const { return name_; }
  const Params& params() const { return params_; }

  bool has_explicit() const;
  bool has_implicit() const;

 private:
  void validate() const;

  std::string name_;
  std::vector<double> a_, b_, c_;
  std::optional<ExactWeights> exact_;
  Params params_;
};

/// A(z), B(z), C(z) with z = 1/zeta: the i-th coefficient equals the i-th weight.
struct CharPolys {
  Polynomial A, B, C;
};

CharPolys char_polys(const CoefficientSet& s);
CoefficientSet from_char_polys(const CharPolys& p, std::string name, CoefficientSet::Params params = {});

// Scheme factories. Step counts other than those listed throw ParameterError.

/// Shu's second-order SSP multistep schemes, k in {3, 4}.
CoefficientSet ssp_explicit(int k);
/// Implicit integrator (2 g_{n+1} + g_{n-2}) / 3 on the SSP time derivative.
CoefficientSet implicit_biased(int k);
/// Implicit integrator ((1-beta) g_{n+1} + 2 beta g_n + (1-beta) g_{n-1}) / 2, beta in [0, 1/2].
CoefficientSet implicit_centred(int k, double beta);

enum class ImexVariant { biased, centred };
CoefficientSet imex_scheme(ImexVariant variant, int k, double beta = 0.0);

/// Modified Crank-Nicolson / Adams-Bashforth; c_param = 0 is plain CNAB.
CoefficientSet mcnab(double c_param);
/// Extrapolated (semi-implicit) BDF2.
CoefficientSet imex_bdf2();
/// First-order explicit baseline, used as a control in convergence studies.
CoefficientSet forward_euler();

/// max over q <= degree of |sum a_i p(t_{n+1-i}) - sum w_i p'(t_{n+1-i})| for w = b and w = c
/// for p(t) = t^q on the unit grid t_{n+1-i} = -i. Exact rational evaluation
/// when the scheme carries exact weights.
double order_residual(const CoefficientSet& s, int degree);

// Registry addressable by string id.

struct SchemeParams {
  double beta = 0.0;
  double mcnab_c = 0.125;
};

/// Ids: ssp3, ssp4, imex-biased-k3, imex-biased-k4, imex-centred-k3,
/// imex-centred-k4, mcnab, imex-bdf2, plus implicit-biased-k{3,4},
/// implicit-centred-k{3,4} and forward-euler.
CoefficientSet make_scheme(const std::string& id, const SchemeParams& params = {});
std::vector<std::string> scheme_ids();
/// The eight IMEX/explicit schemes compared throughout (the first eight ids above).
std::vector<std::string> builtin_scheme_ids();

}  // namespace imexssp
