#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lfc/maps.hpp"

namespace lfc {

/// Taylor coefficients at 0 up to a fixed degree M (index k holds z^k).
///
/// Every operation here is exact on the coefficients it keeps: truncation
/// only discards degrees above M. The one exception is `compose` with a
/// non-vanishing inner constant term, which records a geometric bound on the
/// discarded tail in `tail_bound()`.
class TruncatedSeries {
 public:
  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order);
  /// Throws std::invalid_argument on an empty vector.
  explicit TruncatedSeries(std::vector<complex> coeffs, double tail_bound = 0.0);

  static TruncatedSeries constant(complex value, std::size_t order);
  /// c0 + c1 z
  static TruncatedSeries linear(complex c0, complex c1, std::size_t order);
  /// z
  static TruncatedSeries identity(std::size_t order) { return linear(0.0, 1.0, order); }

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  complex operator[](std::size_t k) const { return coeffs_[k]; }
  complex& operator[](std::size_t k) { return coeffs_[k]; }
  std::span<const complex> coeffs() const { return coeffs_; }
  double tail_bound() const { return tail_bound_; }

  /// Horner evaluation of the kept polynomial.
  complex evaluate(complex z) const;

  /// Re-truncate (or zero-pad) to another order.
  TruncatedSeries resized(std::size_t order) const;

 private:
  std::vector<complex> coeffs_;
  double tail_bound_ = 0.0;
};

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries operator*(complex s, const TruncatedSeries& f);

/// Cauchy product truncated at the common order. Throws on order mismatch.
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g);

/// f^n by binary powering; n = 0 gives 1.
TruncatedSeries power_int(const TruncatedSeries& f, unsigned n);

/// 1/f; requires f(0) != 0.
TruncatedSeries reciprocal(const TruncatedSeries& f);

/// Principal logarithm via L' = f'/f, L(0) = Log f(0).
/// Throws DomainError("branch cut") when f(0) lies on (-inf, 0].
TruncatedSeries log_principal(const TruncatedSeries& f);

/// exp(f) via E' = f' E.
TruncatedSeries exp_series(const TruncatedSeries& f);

/// exp(gamma * log_principal(f)), evaluated with the power recurrence
/// k f0 P_k = sum_{j=1..k} ((gamma + 1) j - k) f_j P_{k-j}.
/// gamma == 1 returns f unchanged. Same branch-cut error as log_principal.
TruncatedSeries pow_real(const TruncatedSeries& f, double gamma);

/// f o g by Horner's scheme. Requires |g(0)| < 1 (DomainError
/// "composition out of domain"). When g(0) != 0 the result carries the tail
/// bound |g(0)|^(M+1) max|f_n| / (1 - |g(0)|); the caller asserts that f is
/// analytic past sup |g|.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// Taylor coefficients of (a z + b)/(c z + d). Requires d != 0; the series
/// converges on the closed disk when |c| < |d|, which holds for self-maps.
TruncatedSeries lfm_series(const LinearFractionalMap& m, std::size_t order);

/// f * m(z) in O(M) through (c z + d) y = (a z + b) f.
TruncatedSeries multiply_lfm(const TruncatedSeries& f, const LinearFractionalMap& m);

/// Raw-buffer form of multiply_lfm used by the matrix builders.
void multiply_lfm(std::span<const complex> in, const LinearFractionalMap& m, std::span<complex> out);

}  // namespace lfc
