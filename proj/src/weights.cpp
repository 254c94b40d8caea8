#include "lfc/weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lfc {

namespace {

constexpr double kIntegerTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

SignedLogGamma signed_lgamma(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x)) throw std::domain_error("signed_lgamma: pole at non-positive integer");
  // Gamma(x) Gamma(1 - x) = pi / sin(pi x), and Gamma(1 - x) > 0 here
  const double s = std::sin(std::numbers::pi * x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - std::lgamma(1.0 - x), s > 0.0 ? 1 : -1};
}

WeightRegime classify_alpha(double alpha) {
  const double a2 = alpha + 2.0;
  if (a2 > 0.0) return regime::TypeA{alpha};
  const double nearest = std::round(a2);
  if (std::abs(a2 - nearest) < kIntegerTol) return regime::TypeC{alpha, static_cast<int>(-nearest)};
  return regime::TypeB{alpha, static_cast<int>(std::ceil(-a2))};
}

std::string describe(const WeightRegime& r) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const regime::TypeA& x) { os << "typeA(alpha=" << x.alpha << ")"; },
                 [&](const regime::TypeB& x) { os << "typeB(alpha=" << x.alpha << ",N=" << x.N << ")"; },
                 [&](const regime::TypeC& x) { os << "typeC(alpha=" << x.alpha << ",N=" << x.N << ")"; },
                 [&](const regime::PowerLaw& x) { os << "powerLaw(t=" << x.t << ",ell=" << x.ell << ")"; },
                 [&](const regime::Custom&) { os << "custom"; },
             },
             r);
  return os.str();
}

WeightSequence::WeightSequence(std::vector<double> beta, WeightRegime regime)
    : beta_(std::move(beta)), regime_(regime) {
  if (beta_.empty()) throw std::invalid_argument("WeightSequence: empty");
  for (double b : beta_) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("WeightSequence: entries must be positive");
  }
}

std::vector<double> typeC_coefficients(int N, std::size_t order) {
  if (N < 0) throw std::invalid_argument("typeC_coefficients: N must be nonnegative");
  if (order <= static_cast<std::size_t>(N)) throw std::invalid_argument("typeC_coefficients: need M > N");
  // (z - 1)^N = sum_j C(N,j) (-1)^(N-j) z^j convolved with sum_{k>=1} z^k / k
  // Past k = N + 1 the alternating sum cancels to ~N!/k^(N+1) and loses
  // about k^N ulps, so the tail comes from the exact first-order recurrence
  // (k + 1) A_{k+1} = (k - N) A_k that (1 - z) F' = -N F + (z - 1)^N gives.
  const std::size_t head = std::min(order, static_cast<std::size_t>(N) + 1);
  std::vector<double> A(order + 1, 0.0);
  for (std::size_t k = 1; k <= head; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= N && static_cast<std::size_t>(j) < k; ++j) {
      const double sign = ((N - j) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binomial(N, j) / static_cast<double>(k - static_cast<std::size_t>(j));
    }
    A[k] = acc;
  }
  for (std::size_t k = head; k < order; ++k) {
    A[k + 1] = A[k] * static_cast<double>(k - static_cast<std::size_t>(N)) / static_cast<double>(k + 1);
  }
  for (std::size_t m = static_cast<std::size_t>(N) + 1; m <= order; ++m) {
    if (!(A[m] > 0.0)) throw std::logic_error("typeC_coefficients: A_m <= 0 for m > N");
  }
  return A;
}

WeightSequence a2alpha_weights(double alpha, std::size_t order) {
  if (order < 1) throw std::invalid_argument("a2alpha_weights: need M >= 1");
  const WeightRegime reg = classify_alpha(alpha);
  const double a2 = alpha + 2.0;
  std::vector<double> beta(order + 1, 1.0);

  std::visit(overloaded{
                 [&](const regime::TypeA&) {
                   const double lg = std::lgamma(a2);
                   for (std::size_t m = 0; m <= order; ++m) {
                     const double md = static_cast<double>(m);
                     beta[m] = std::exp(0.5 * (std::lgamma(md + 1.0) + lg - std::lgamma(md + a2)));
                   }
                 },
                 [&](const regime::TypeB& x) {
                   const SignedLogGamma g = signed_lgamma(a2);
                   const int parity = (x.N % 2 == 0) ? 1 : -1;
                   if (parity * g.sign != 1) throw std::logic_error("a2alpha_weights: sign mismatch in type B");
                   for (std::size_t m = static_cast<std::size_t>(x.N) + 1; m <= order; ++m) {
                     const double md = static_cast<double>(m);
                     beta[m] = std::exp(0.5 * (std::lgamma(md + 1.0) + g.log_abs - std::lgamma(md + a2)));
                   }
                 },
                 [&](const regime::TypeC& x) {
                   if (order <= static_cast<std::size_t>(x.N)) return;
                   const auto A = typeC_coefficients(x.N, order);
                   for (std::size_t m = static_cast<std::size_t>(x.N) + 1; m <= order; ++m) {
                     beta[m] = 1.0 / std::sqrt(A[m]);
                   }
                 },
                 [](const auto&) {},
             },
             reg);
  return WeightSequence(std::move(beta), reg);
}

WeightSequence power_law_weights(double t, double ell, std::size_t order) {
  if (!(ell > 0.0)) throw std::invalid_argument("power_law_weights: ell must be positive");
  std::vector<double> beta(order + 1, 1.0);
  for (std::size_t n = 1; n <= order; ++n) beta[n] = ell * std::pow(static_cast<double>(n), t);
  return WeightSequence(std::move(beta), regime::PowerLaw{t, ell});
}

WeightFamily a2alpha_family(double alpha) {
  return [alpha](std::size_t order) { return a2alpha_weights(alpha, order); };
}

WeightFamily power_law_family(double t, double ell) {
  return [t, ell](std::size_t order) { return power_law_weights(t, ell, order); };
}

std::optional<Asymptote> asymptote(const WeightRegime& r) {
  return std::visit(
      overloaded{
          // m! / Gamma(m + a) ~ m^(1 - a)
          [](const regime::TypeA& x) -> std::optional<Asymptote> {
            return Asymptote{-(x.alpha + 1.0) / 2.0, std::exp(0.5 * std::lgamma(x.alpha + 2.0))};
          },
          [](const regime::TypeB& x) -> std::optional<Asymptote> {
            return Asymptote{-(x.alpha + 1.0) / 2.0, std::exp(0.5 * signed_lgamma(x.alpha + 2.0).log_abs)};
          },
          // A_m = N! / (m (m-1) ... (m-N)) ~ N! m^-(N+1)
          [](const regime::TypeC& x) -> std::optional<Asymptote> {
            return Asymptote{(x.N + 1) / 2.0, 1.0 / std::sqrt(factorial(x.N))};
          },
          [](const regime::PowerLaw& x) -> std::optional<Asymptote> { return Asymptote{x.t, x.ell}; },
          [](const regime::Custom&) -> std::optional<Asymptote> { return std::nullopt; },
      },
      r);
}

AsymptoticDiagnostic asymptotic_check(const WeightSequence& w, double alpha) {
  if (w.size() < 64) throw std::invalid_argument("asymptotic_check: need at least 64 entries");
  AsymptoticDiagnostic d;
  d.m_full = w.order();
  d.m_half = w.order() / 2;
  const double e = (alpha + 1.0) / 2.0;
  d.r_half = w[d.m_half] * std::pow(static_cast<double>(d.m_half), e);
  d.r_full = w[d.m_full] * std::pow(static_cast<double>(d.m_full), e);
  d.residual = std::abs(d.r_full - d.r_half);
  return d;
}

}  // namespace lfc
