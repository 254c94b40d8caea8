#include "lfc/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lfc/error.hpp"

namespace lfc {

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1, complex{0.0, 0.0}) {}

TruncatedSeries::TruncatedSeries(std::vector<complex> coeffs, double tail_bound)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient vector");
}

TruncatedSeries TruncatedSeries::constant(complex value, std::size_t order) {
  TruncatedSeries s(order);
  s[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::linear(complex c0, complex c1, std::size_t order) {
  TruncatedSeries s(order);
  s[0] = c0;
  if (order >= 1) s[1] = c1;
  return s;
}

complex TruncatedSeries::evaluate(complex z) const {
  complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

TruncatedSeries TruncatedSeries::resized(std::size_t order) const {
  std::vector<complex> c(order + 1, complex{0.0, 0.0});
  std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
  return TruncatedSeries(std::move(c), tail_bound_);
}

namespace {

void require_same_order(const TruncatedSeries& f, const TruncatedSeries& g, const char* op) {
  if (f.order() != g.order()) {
    throw std::invalid_argument(std::string(op) + ": truncation order mismatch (" +
                                std::to_string(f.order()) + " vs " + std::to_string(g.order()) + ")");
  }
}

void require_off_cut(complex c0) {
  if (c0.imag() == 0.0 && c0.real() <= 0.0) throw DomainError("branch cut");
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "add");
  TruncatedSeries r(f.order());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] + g[k];
  return r;
}

TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "subtract");
  TruncatedSeries r(f.order());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] - g[k];
  return r;
}

TruncatedSeries operator*(complex s, const TruncatedSeries& f) {
  TruncatedSeries r(f.order());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = s * f[k];
  return r;
}

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "multiply");
  const std::size_t n = f.size();
  TruncatedSeries r(f.order());
  for (std::size_t i = 0; i < n; ++i) {
    const complex fi = f[i];
    if (fi == 0.0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += fi * g[j];
  }
  return r;
}

TruncatedSeries power_int(const TruncatedSeries& f, unsigned n) {
  TruncatedSeries result = TruncatedSeries::constant(1.0, f.order());
  TruncatedSeries base = f;
  while (n > 0) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

TruncatedSeries reciprocal(const TruncatedSeries& f) {
  if (f[0] == 0.0) throw DomainError("reciprocal of a series vanishing at 0");
  TruncatedSeries r(f.order());
  r[0] = 1.0 / f[0];
  for (std::size_t k = 1; k < f.size(); ++k) {
    complex acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += f[j] * r[k - j];
    r[k] = -acc / f[0];
  }
  return r;
}

TruncatedSeries log_principal(const TruncatedSeries& f) {
  require_off_cut(f[0]);
  const std::size_t m = f.order();
  // q = f'/f, then L_{k+1} = q_k / (k+1)
  std::vector<complex> q(m);
  for (std::size_t k = 0; k < m; ++k) {
    complex acc = static_cast<double>(k + 1) * f[k + 1];
    for (std::size_t j = 1; j <= k; ++j) acc -= f[j] * q[k - j];
    q[k] = acc / f[0];
  }
  TruncatedSeries L(m);
  L[0] = std::log(f[0]);
  for (std::size_t k = 0; k < m; ++k) L[k + 1] = q[k] / static_cast<double>(k + 1);
  return L;
}

TruncatedSeries exp_series(const TruncatedSeries& f) {
  TruncatedSeries e(f.order());
  e[0] = std::exp(f[0]);
  for (std::size_t k = 1; k < f.size(); ++k) {
    complex acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * f[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

TruncatedSeries pow_real(const TruncatedSeries& f, double gamma) {
  require_off_cut(f[0]);
  if (gamma == 1.0) return f;
  TruncatedSeries p(f.order());
  p[0] = std::exp(gamma * std::log(f[0]));
  for (std::size_t k = 1; k < f.size(); ++k) {
    complex acc = 0.0;
    const double kd = static_cast<double>(k);
    for (std::size_t j = 1; j <= k; ++j) {
      acc += ((gamma + 1.0) * static_cast<double>(j) - kd) * f[j] * p[k - j];
    }
    p[k] = acc / (kd * f[0]);
  }
  return p;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "compose");
  const double g0 = std::abs(g[0]);
  if (!(g0 < 1.0)) throw DomainError("composition out of domain");

  TruncatedSeries acc = TruncatedSeries::constant(f[f.order()], f.order());
  for (std::size_t n = f.order(); n-- > 0;) {
    acc = multiply(acc, g);
    acc[0] += f[n];
  }

  double tail = 0.0;
  if (g0 > 0.0) {
    double fmax = 0.0;
    for (auto c : f.coeffs()) fmax = std::max(fmax, std::abs(c));
    tail = std::pow(g0, static_cast<double>(f.order() + 1)) * fmax / (1.0 - g0);
  }
  return TruncatedSeries(std::vector<complex>(acc.coeffs().begin(), acc.coeffs().end()), tail);
}

void multiply_lfm(std::span<const complex> in, const LinearFractionalMap& m, std::span<complex> out) {
  const complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  if (d == 0.0) throw DomainError("linear fractional series needs d != 0");
  complex prev_in = 0.0, prev_out = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    const complex y = (b * in[k] + a * prev_in - c * prev_out) / d;
    prev_in = in[k];
    prev_out = y;
    out[k] = y;
  }
}

TruncatedSeries multiply_lfm(const TruncatedSeries& f, const LinearFractionalMap& m) {
  TruncatedSeries r(f.order());
  std::vector<complex> buf(f.size());
  multiply_lfm(f.coeffs(), m, buf);
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = buf[k];
  return r;
}

TruncatedSeries lfm_series(const LinearFractionalMap& m, std::size_t order) {
  return multiply_lfm(TruncatedSeries::constant(1.0, order), m);
}

}  // namespace lfc
