#include "lfc/maps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "lfc/error.hpp"

namespace lfc {

LinearFractionalMap::LinearFractionalMap(complex a, complex b, complex c, complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  const double scale = (std::abs(a) + std::abs(b)) * (std::abs(c) + std::abs(d));
  if (!(std::abs(determinant()) > 1e-14 * scale)) throw DomainError("constant map");
}

LinearFractionalMap LinearFractionalMap::automorphism(complex lambda, complex u) {
  return {lambda, lambda * u, std::conj(u), 1.0};
}

complex LinearFractionalMap::operator()(complex z) const {
  const complex den = c_ * z + d_;
  if (den == 0.0) throw DomainError("evaluation at pole");
  return (a_ * z + b_) / den;
}

namespace {

std::array<complex, 4> normalized(const LinearFractionalMap& m) {
  std::array<complex, 4> v{m.a(), m.b(), m.c(), m.d()};
  complex pivot = m.d();
  if (pivot == 0.0) {
    pivot = *std::max_element(v.begin(), v.end(),
                              [](complex x, complex y) { return std::abs(x) < std::abs(y); });
  }
  for (auto& x : v) x /= pivot;
  return v;
}

}  // namespace

double projective_distance(const LinearFractionalMap& x, const LinearFractionalMap& y) {
  if ((x.d() == 0.0) != (y.d() == 0.0)) return INFINITY;
  const auto u = normalized(x);
  const auto v = normalized(y);
  double dist = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dist = std::max(dist, std::abs(u[i] - v[i]));
  return dist;
}

bool LinearFractionalMap::equivalent(const LinearFractionalMap& other, double tol) const {
  return projective_distance(*this, other) <= tol;
}

std::ostream& operator<<(std::ostream& os, const LinearFractionalMap& m) {
  return os << "(" << m.a() << ", " << m.b() << ", " << m.c() << ", " << m.d() << ")";
}

SelfMapDiagnostic validate_self_map(const LinearFractionalMap& m, std::size_t samples) {
  SelfMapDiagnostic diag;
  const complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  diag.criterion_lhs = std::abs(b * std::conj(d) - a * std::conj(c)) + std::abs(m.determinant());
  diag.criterion_rhs = std::norm(d) - std::norm(c);
  const double slack = 1e-14 * (std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  diag.is_self_map = diag.criterion_lhs <= diag.criterion_rhs + slack;

  double peak = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const complex z = std::polar(1.0, theta);
    const complex den = c * z + d;
    if (den == 0.0) {
      peak = INFINITY;
      break;
    }
    peak = std::max(peak, std::abs((a * z + b) / den));
  }
  diag.boundary_max = peak;
  return diag;
}

LinearFractionalMap krein_adjoint(const LinearFractionalMap& m) {
  return {std::conj(m.a()), -std::conj(m.c()), -std::conj(m.b()), std::conj(m.d())};
}

LinearFractionalMap compose_maps(const LinearFractionalMap& outer, const LinearFractionalMap& inner) {
  // coefficient-matrix product [[a b][c d]]_outer * [[a b][c d]]_inner
  return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
          outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d()};
}

LinearFractionalMap inverse(const LinearFractionalMap& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

}  // namespace lfc
