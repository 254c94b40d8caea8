#include "lfc/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

#include "lfc/error.hpp"

namespace lfc {

KernelCoefficients kernel_coefficients(const WeightSequence& w) {
  KernelCoefficients k;
  k.c.reserve(w.size());
  for (double b : w.values()) k.c.push_back(1.0 / (b * b));
  return k;
}

complex principal_part(double alpha, complex x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("kernel evaluated outside the disk");
  const WeightRegime reg = classify_alpha(alpha);
  const complex one_minus = 1.0 - x;
  if (const auto* c = std::get_if<regime::TypeC>(&reg)) {
    return std::pow(x - 1.0, c->N) * -std::log(one_minus);
  }
  const complex p = std::exp(-(alpha + 2.0) * std::log(one_minus));
  if (const auto* b = std::get_if<regime::TypeB>(&reg)) return (b->N % 2 == 0) ? p : -p;
  return p;
}

TruncatedSeries principal_part_series(double alpha, std::size_t order) {
  const WeightRegime reg = classify_alpha(alpha);
  const auto one_minus_x = TruncatedSeries::linear(1.0, -1.0, order);
  if (const auto* c = std::get_if<regime::TypeC>(&reg)) {
    const auto x_minus_1 = TruncatedSeries::linear(-1.0, 1.0, order);
    return multiply(power_int(x_minus_1, static_cast<unsigned>(c->N)), complex(-1.0) * log_principal(one_minus_x));
  }
  const auto p = pow_real(one_minus_x, -(alpha + 2.0));
  if (const auto* b = std::get_if<regime::TypeB>(&reg); b && b->N % 2 != 0) return complex(-1.0) * p;
  return p;
}

KernelResidual residual_coefficients(double alpha, std::size_t order, double tol) {
  const WeightRegime reg = classify_alpha(alpha);
  KernelResidual r;
  r.alpha = alpha;
  r.order = order;
  r.tol = tol;
  if (const auto* b = std::get_if<regime::TypeB>(&reg)) r.degree_bound = static_cast<std::size_t>(b->N);
  if (const auto* c = std::get_if<regime::TypeC>(&reg)) r.degree_bound = static_cast<std::size_t>(c->N);
  if (order <= r.degree_bound) throw std::invalid_argument("residual_coefficients: need M > N");

  const auto c = kernel_coefficients(a2alpha_weights(alpha, order)).c;
  const auto p = principal_part_series(alpha, order);
  r.residual.resize(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    r.residual[k] = c[k] - p[k].real();
    if (k > r.degree_bound) r.max_high = std::max(r.max_high, std::abs(r.residual[k]));
  }
  // type A keeps no polynomial part: degree 0 must vanish too
  if (std::holds_alternative<regime::TypeA>(reg)) r.max_high = std::max(r.max_high, std::abs(r.residual[0]));
  r.vanishes = r.max_high <= tol;
  return r;
}

double reproducing_check(const WeightSequence& w, const TruncatedSeries& f, complex p) {
  if (!(std::abs(p) < 1.0)) throw DomainError("reproducing_check: point outside the disk");
  if (f.order() > w.order()) throw std::invalid_argument("reproducing_check: series longer than weights");
  const auto c = kernel_coefficients(w).c;
  complex inner = 0.0;
  complex pn = 1.0;
  const complex pbar = std::conj(p);
  for (std::size_t n = 0; n < f.size(); ++n) {
    // K_p(z) = sum c_n conj(p)^n z^n, so <f, K_p> = sum f_n conj(c_n conj(p)^n) beta(n)^2
    inner += f[n] * std::conj(c[n] * pn) * (w[n] * w[n]);
    pn *= pbar;
  }
  return std::abs(inner - f.evaluate(p));
}

}  // namespace lfc
