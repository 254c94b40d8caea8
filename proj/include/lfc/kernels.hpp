#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lfc/series.hpp"
#include "lfc/weights.hpp"

namespace lfc {

/// K(z, w) = sum_n c_n (z conj(w))^n with c_n = 1 / beta(n)^2.
struct KernelCoefficients {
  std::vector<double> c;
};

KernelCoefficients kernel_coefficients(const WeightSequence& w);

/// Closed-form part of the A^2_alpha kernel as a function of x = z conj(w),
/// without the low-degree polynomial Q:
///   type A: (1 - x)^-(alpha+2)
///   type B: (-1)^N (1 - x)^-(alpha+2)
///   type C: (x - 1)^N log(1/(1 - x))
/// Throws DomainError when |x| >= 1.
complex principal_part(double alpha, complex x);

/// Taylor coefficients of the closed-form part, computed by series
/// arithmetic independently of the weight formulas.
TruncatedSeries principal_part_series(double alpha, std::size_t order);

struct KernelResidual {
  double alpha = 0.0;
  std::size_t order = 0;
  std::size_t degree_bound = 0;  // N for types B and C, 0 for type A
  std::vector<double> residual;  // [x^k] (sum c_n x^n - principal part)
  double max_high = 0.0;         // max |residual_k| over k > degree_bound
  double tol = 0.0;
  bool vanishes = false;         // max_high <= tol
};

/// What is left of the series kernel after removing the closed form. Only
/// degrees <= N may survive; they are the polynomial Q plus the
/// low-order weight convention.
KernelResidual residual_coefficients(double alpha, std::size_t order, double tol = 1e-10);

/// |<f, K_p> - f(p)| with <f, K_p> = sum_n f_n conj(c_n conj(p)^n) beta(n)^2.
/// Requires |p| < 1 and f.order() <= w.order().
double reproducing_check(const WeightSequence& w, const TruncatedSeries& f, complex p);

}  // namespace lfc
