#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lfc {

namespace regime {
/// alpha + 2 > 0
struct TypeA {
  double alpha;
};
/// -N < alpha + 2 < -N + 1
struct TypeB {
  double alpha;
  int N;
};
/// alpha + 2 == -N
struct TypeC {
  double alpha;
  int N;
};
/// beta(0) = 1, beta(n) = ell n^t
struct PowerLaw {
  double t;
  double ell;
};
struct Custom {};
}  // namespace regime

using WeightRegime =
    std::variant<regime::TypeA, regime::TypeB, regime::TypeC, regime::PowerLaw, regime::Custom>;

/// Which of the three A^2_alpha kernel families alpha falls in.
WeightRegime classify_alpha(double alpha);

std::string describe(const WeightRegime& r);

/// beta(0..M), strictly positive: the norms ||z^n|| of a weighted Hardy space.
class WeightSequence {
 public:
  /// Throws std::invalid_argument if empty or any entry is not > 0.
  explicit WeightSequence(std::vector<double> beta, WeightRegime regime = regime::Custom{});

  std::size_t order() const { return beta_.size() - 1; }
  std::size_t size() const { return beta_.size(); }
  double operator[](std::size_t n) const { return beta_[n]; }
  std::span<const double> values() const { return beta_; }
  const WeightRegime& regime() const { return regime_; }

 private:
  std::vector<double> beta_;
  WeightRegime regime_;
};

/// Builds a weight sequence at any requested truncation order.
using WeightFamily = std::function<WeightSequence(std::size_t order)>;

/// ||z^m||_alpha for all real alpha. For the type B and C regimes the
/// closed forms hold only for m > N; entries m <= N are set to 1.
WeightSequence a2alpha_weights(double alpha, std::size_t order);

/// Taylor coefficients A_0..A_M of (z - 1)^N log(1/(1 - z)). Requires M > N.
/// Binomial convolution up to degree N + 1, then the exact recurrence
/// (k + 1) A_{k+1} = (k - N) A_k.
/// Throws std::logic_error if some A_m with m > N is not positive.
std::vector<double> typeC_coefficients(int N, std::size_t order);

/// beta(0) = 1, beta(n) = ell n^t. Requires ell > 0.
WeightSequence power_law_weights(double t, double ell, std::size_t order);

inline WeightSequence hardy_weights(std::size_t order) { return power_law_weights(0.0, 1.0, order); }
/// Derivative-in-H^2 space: beta(0) = 1, beta(n) = n.
inline WeightSequence s2_weights(std::size_t order) { return power_law_weights(1.0, 1.0, order); }

WeightFamily a2alpha_family(double alpha);
WeightFamily power_law_family(double t, double ell);

/// beta(n) ~ constant * n^exponent, known in closed form for every regime
/// except Custom.
struct Asymptote {
  double exponent;
  double constant;
};
std::optional<Asymptote> asymptote(const WeightRegime& r);

struct AsymptoticDiagnostic {
  std::size_t m_half = 0;
  std::size_t m_full = 0;
  double r_half = 0.0;    // beta(M/2) (M/2)^((alpha+1)/2)
  double r_full = 0.0;    // beta(M) M^((alpha+1)/2), the constant estimate
  double residual = 0.0;  // |r_full - r_half|
};

/// Requires at least 64 entries (std::invalid_argument otherwise).
AsymptoticDiagnostic asymptotic_check(const WeightSequence& w, double alpha);

/// log|Gamma(x)| and sign(Gamma(x)); negative non-integers go through the
/// reflection formula.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_lgamma(double x);

}  // namespace lfc
