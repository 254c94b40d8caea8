#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>

namespace lfc {

using complex = std::complex<double>;

/// phi(z) = (a z + b) / (c z + d) with ad - bc != 0.
///
/// Coefficients are projective: two maps whose coefficient vectors differ by a
/// common nonzero factor are the same map (see `equivalent`).
class LinearFractionalMap {
 public:
  /// Throws DomainError("constant map") when ad - bc vanishes.
  LinearFractionalMap(complex a, complex b, complex c, complex d);

  static LinearFractionalMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// z -> lambda z
  static LinearFractionalMap rotation(complex lambda) { return {lambda, 0.0, 0.0, 1.0}; }
  /// z -> lambda (z + u) / (1 + conj(u) z)
  static LinearFractionalMap automorphism(complex lambda, complex u);

  complex a() const { return a_; }
  complex b() const { return b_; }
  complex c() const { return c_; }
  complex d() const { return d_; }
  complex determinant() const { return a_ * d_ - b_ * c_; }

  /// Throws DomainError("evaluation at pole") when c z + d == 0.
  complex operator()(complex z) const;

  /// Equal up to a common complex scalar, compared after normalizing by d
  /// (or by the largest coefficient when d == 0).
  bool equivalent(const LinearFractionalMap& other, double tol = 1e-12) const;

 private:
  complex a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const LinearFractionalMap& m);

/// Max coefficient difference after both maps are normalized as in
/// `equivalent`; infinity when exactly one of them has d == 0.
double projective_distance(const LinearFractionalMap& x, const LinearFractionalMap& y);

struct SelfMapDiagnostic {
  bool is_self_map = false;
  double criterion_lhs = 0.0;  // |b conj(d) - a conj(c)| + |ad - bc|
  double criterion_rhs = 0.0;  // |d|^2 - |c|^2
  double boundary_max = 0.0;   // max |phi| over the boundary samples
};

/// Closed-form self-map test; the boundary maximum is reported alongside as
/// an independent cross-check and never drives the decision.
SelfMapDiagnostic validate_self_map(const LinearFractionalMap& m, std::size_t samples = 4096);

/// sigma(z) = (conj(a) z - conj(c)) / (-conj(b) z + conj(d)).
LinearFractionalMap krein_adjoint(const LinearFractionalMap& m);

/// outer o inner, i.e. z -> outer(inner(z)).
LinearFractionalMap compose_maps(const LinearFractionalMap& outer, const LinearFractionalMap& inner);

LinearFractionalMap inverse(const LinearFractionalMap& m);

}  // namespace lfc
