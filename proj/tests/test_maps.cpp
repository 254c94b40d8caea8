#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lfc/error.hpp"
#include "lfc/maps.hpp"
#include "oracles.hpp"

using lfc::complex;
using lfc::LinearFractionalMap;

namespace {

// max |phi| over n equally spaced boundary points, by direct evaluation
double boundary_max(const LinearFractionalMap& m, int n = 4096) {
  double out = 0.0;
  for (int k = 0; k < n; ++k) {
    const complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    out = std::max(out, std::abs((m.a() * z + m.b()) / (m.c() * z + m.d())));
  }
  return out;
}

LinearFractionalMap random_map(std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  while (true) {
    const complex a{nd(gen), nd(gen)}, b{nd(gen), nd(gen)}, c{nd(gen), nd(gen)}, d{3.0 + nd(gen), nd(gen)};
    if (std::abs(a * d - b * c) > 1e-3) return {a, b, c, d};
  }
}

}  // namespace

TEST_CASE("self-map criterion on the worked maps") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  const auto diag = lfc::validate_self_map(phi);
  CHECK(diag.is_self_map);
  CHECK(diag.criterion_lhs == doctest::Approx(4.0));
  CHECK(diag.criterion_rhs == doctest::Approx(8.0));
  CHECK(diag.boundary_max == doctest::Approx(boundary_max(phi)));

  const LinearFractionalMap aut(2.0, 1.0, 1.0, 2.0);
  const auto da = lfc::validate_self_map(aut);
  CHECK(da.is_self_map);
  CHECK(da.criterion_lhs == doctest::Approx(3.0));
  CHECK(da.criterion_rhs == doctest::Approx(3.0));
  CHECK(boundary_max(aut) == doctest::Approx(1.0).epsilon(1e-12));

  const LinearFractionalMap doubling(1.0, 0.0, 0.0, 0.5);
  CHECK_FALSE(lfc::validate_self_map(doubling).is_self_map);
  CHECK(std::abs(doubling(1.0)) == doctest::Approx(2.0));
}

TEST_CASE("constant maps are rejected") {
  CHECK_THROWS_AS(LinearFractionalMap(1.0, 2.0, 2.0, 4.0), lfc::DomainError);
  CHECK_THROWS_AS(LinearFractionalMap(0.0, 0.0, 1.0, 1.0), lfc::DomainError);
}

TEST_CASE("evaluation") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  CHECK(phi(0.0) == complex(0.0));
  CHECK(std::abs(phi(1.0) - 0.5) < 1e-15);
  const complex z(0.3, 0.4);
  CHECK(LinearFractionalMap::identity()(z) == z);
  CHECK_THROWS_AS(phi(3.0), lfc::DomainError);
}

TEST_CASE("Krein adjoint") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  CHECK(lfc::krein_adjoint(phi).equivalent(LinearFractionalMap(1.0, 1.0, 0.0, 3.0)));
  CHECK(lfc::krein_adjoint(LinearFractionalMap::identity()).equivalent(LinearFractionalMap::identity()));

  const auto aut = LinearFractionalMap::automorphism(1.0, 0.5);
  CHECK(aut.equivalent(LinearFractionalMap(1.0, 0.5, 0.5, 1.0)));
  const LinearFractionalMap phi_inv(1.0, -0.5, -0.5, 1.0);
  CHECK(lfc::krein_adjoint(aut).equivalent(phi_inv));
  CHECK(lfc::inverse(aut).equivalent(phi_inv));
}

TEST_CASE("compose and inverse") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  CHECK(lfc::compose_maps(LinearFractionalMap::identity(), phi).equivalent(phi));
  CHECK(lfc::compose_maps(phi, lfc::inverse(phi)).equivalent(LinearFractionalMap::identity()));
  const auto aut = LinearFractionalMap::automorphism(1.0, 0.5);
  CHECK(lfc::compose_maps(lfc::inverse(aut), aut).equivalent(LinearFractionalMap::identity()));
}

TEST_CASE("equivalence is projective") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  const complex s(0.0, -2.5);
  CHECK(phi.equivalent(LinearFractionalMap(s * 1.0, 0.0, -s, 3.0 * s)));
  CHECK_FALSE(phi.equivalent(LinearFractionalMap(1.0, 0.0, -1.0, 4.0)));
  // d == 0 on one side only
  CHECK_FALSE(LinearFractionalMap(0.0, 1.0, 1.0, 0.0).equivalent(phi));
  CHECK(LinearFractionalMap(0.0, 1.0, 1.0, 0.0).equivalent(LinearFractionalMap(0.0, 2.0, 2.0, 0.0)));
}

TEST_CASE("property: random maps") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  int self_maps = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_map(gen);
    // adjoint is an involution up to scalar
    CHECK(lfc::krein_adjoint(lfc::krein_adjoint(m)).equivalent(m, 1e-10));
    // compose agrees with pointwise evaluation
    const auto n = random_map(gen);
    const complex z = std::polar(0.5 * ud(gen), 6.0 * ud(gen));
    const complex direct = m(n(z));
    CHECK(std::abs(lfc::compose_maps(m, n)(z) - direct) <= 1e-9 * (1.0 + std::abs(direct)));

    const auto diag = lfc::validate_self_map(m);
    if (diag.is_self_map) {
      ++self_maps;
      CHECK(boundary_max(m) <= 1.0 + 1e-12);
    } else {
      // outside the criterion either the boundary leaves the disk or the
      // pole sits inside it
      const bool pole_inside = std::abs(m.c()) > std::abs(m.d());
      CHECK((pole_inside || boundary_max(m, 1 << 16) > 1.0 - 1e-6));
    }
  }
  CHECK(self_maps > 0);
}

TEST_CASE("property: automorphisms are boundary-preserving and adjoint equals inverse") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const complex lambda = std::polar(1.0, 6.28 * ud(gen));
    const complex u = std::polar(0.95 * ud(gen), 6.28 * ud(gen));
    const auto m = LinearFractionalMap::automorphism(lambda, u);
    const auto diag = lfc::validate_self_map(m);
    CHECK(diag.is_self_map);
    CHECK(diag.criterion_lhs == doctest::Approx(diag.criterion_rhs).epsilon(1e-12));
    CHECK(diag.boundary_max <= 1.0 + 1e-12);
    CHECK(lfc::krein_adjoint(m).equivalent(lfc::inverse(m), 1e-12));
  }
}
