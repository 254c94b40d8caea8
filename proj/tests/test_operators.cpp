#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lfc/error.hpp"
#include "lfc/operators.hpp"
#include "oracles.hpp"

using lfc::complex;
using lfc::LinearFractionalMap;
using lfc::OperatorMatrix;
using lfc::TruncatedSeries;

namespace {

double max_entry_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double d = 0.0;
  for (std::size_t n = 0; n < a.cols(); ++n)
    for (std::size_t m = 0; m < a.rows(); ++m) d = std::max(d, std::abs(a(m, n) - b(m, n)));
  return d;
}

std::vector<lfc::WeightSequence> weight_zoo(std::size_t order) {
  return {lfc::hardy_weights(order), lfc::s2_weights(order), lfc::a2alpha_weights(0.0, order),
          lfc::a2alpha_weights(-2.5, order), lfc::a2alpha_weights(-3.0, order),
          lfc::power_law_weights(0.6, 1.7, order)};
}

}  // namespace

TEST_CASE("composition matrix: worked examples") {
  for (const auto& w : weight_zoo(40)) {
    const auto I = lfc::composition_matrix(LinearFractionalMap::identity(), w, 40);
    for (std::size_t n = 0; n <= 40; ++n)
      for (std::size_t m = 0; m <= 40; ++m) CHECK(I(m, n) == complex(m == n ? 1.0 : 0.0));
  }
  const auto H = lfc::hardy_weights(30);
  const auto half = lfc::composition_matrix(LinearFractionalMap(1.0, 0.0, 0.0, 2.0), H, 30);
  for (std::size_t n = 0; n <= 30; ++n) {
    CHECK(std::abs(half(n, n) - std::pow(0.5, n)) <= 1e-17);
    if (n > 0) CHECK(half(n - 1, n) == complex(0.0));
  }
  const auto C = lfc::composition_matrix(LinearFractionalMap(1.0, 0.0, -1.0, 3.0), H, 30);
  for (std::size_t m = 1; m <= 30; ++m) CHECK(std::abs(C(m, 1) - std::pow(3.0, -static_cast<double>(m))) <= 1e-17);
  CHECK(C.shape() == lfc::dense::Shape::lower);
  CHECK(C.label() == "C[phi]");

  CHECK_THROWS_AS(lfc::composition_matrix(LinearFractionalMap(1.0, 0.0, 0.0, 0.5), H, 10), lfc::DomainError);
  CHECK_THROWS(lfc::composition_matrix(LinearFractionalMap::identity(), lfc::hardy_weights(5), 10));
}

TEST_CASE("composition matrix columns against a per-column series oracle") {
  const LinearFractionalMap maps[] = {LinearFractionalMap(1.0, 0.0, -1.0, 3.0), LinearFractionalMap(2.0, 1.0, 1.0, 2.0),
                                      LinearFractionalMap(complex(0.3, 0.2), complex(0.1, -0.2), 0.4, 1.5)};
  for (const auto& phi : maps) {
    for (const auto& w : weight_zoo(48)) {
      const auto C = lfc::composition_matrix(phi, w, 48);
      const auto s = oracle::lfm_coeffs(phi.a(), phi.b(), phi.c(), phi.d(), 48);
      std::vector<complex> power(49, 0.0);
      power[0] = 1.0;
      for (std::size_t n = 0; n <= 48; ++n) {
        double scale = 0.0, err = 0.0;
        for (std::size_t m = 0; m <= 48; ++m) {
          const complex want = power[m] * w[m] / w[n];
          scale = std::max(scale, std::abs(want));
          err = std::max(err, std::abs(C(m, n) - want));
        }
        CHECK(err <= 1e-12 * scale);
        power = oracle::convolve(power, s);
      }
    }
  }
}

TEST_CASE("property: leading blocks do not depend on the truncation") {
  const LinearFractionalMap phi(2.0, 1.0, 1.0, 2.0);
  const auto w = lfc::a2alpha_weights(0.0, 128);
  const auto small = lfc::composition_matrix(phi, w, 32);
  const auto large = lfc::composition_matrix(phi, w, 128);
  CHECK(max_entry_diff(small, lfc::leading_block(large, 32)) == 0.0);
}

TEST_CASE("multiplication matrix") {
  const auto H = lfc::hardy_weights(12);
  const auto S = lfc::s2_weights(12);
  const auto one = lfc::multiplication_matrix(TruncatedSeries::constant(1.0, 12), S, 12);
  CHECK(max_entry_diff(one, lfc::identity_matrix(S, 12)) == 0.0);
  const auto shift = lfc::multiplication_matrix(TruncatedSeries::identity(12), H, 12);
  const auto shift_s2 = lfc::multiplication_matrix(TruncatedSeries::identity(12), S, 12);
  for (std::size_t n = 0; n < 12; ++n) {
    CHECK(shift(n + 1, n) == complex(1.0));
    const double want = n == 0 ? 1.0 : (n + 1.0) / n;
    CHECK(shift_s2(n + 1, n).real() == doctest::Approx(want));
  }
  CHECK(shift.band() == 1);
  CHECK_THROWS_AS(lfc::multiplication_matrix(TruncatedSeries::identity(5), H, 12), std::invalid_argument);

  const auto sq = lfc::matrix_product(shift_s2, shift_s2);
  for (std::size_t n = 0; n + 2 <= 12; ++n) {
    CHECK(sq(n + 2, n).real() == doctest::Approx(S[n + 2] / S[n]));
  }
}

TEST_CASE("adjoint, product, difference") {
  const auto w = lfc::a2alpha_weights(-2.5, 30);
  const auto A = lfc::composition_matrix(LinearFractionalMap(2.0, 1.0, 1.0, 2.0), w, 30);
  const auto B = lfc::multiplication_matrix(lfc::pow_real(TruncatedSeries::linear(2.0, 1.0, 30), 0.5), w, 30);
  const auto At = lfc::adjoint_matrix(A);
  for (std::size_t m = 0; m <= 30; ++m)
    for (std::size_t n = 0; n <= 30; ++n) CHECK(At(n, m) == std::conj(A(m, n)));
  CHECK(max_entry_diff(lfc::adjoint_matrix(At), A) == 0.0);

  const auto I = lfc::identity_matrix(w, 30);
  CHECK(max_entry_diff(lfc::matrix_product(A, I), A) == 0.0);
  CHECK(lfc::max_abs_entry(lfc::matrix_difference(A, A)) == 0.0);

  // (AB)* = B* A*
  const auto lhs = lfc::adjoint_matrix(lfc::matrix_product(A, B));
  const auto rhs = lfc::matrix_product(lfc::adjoint_matrix(B), At);
  CHECK(max_entry_diff(lhs, rhs) <= 1e-12 * lfc::max_abs_entry(lhs));

  CHECK_THROWS_AS(lfc::matrix_product(A, lfc::identity_matrix(lfc::hardy_weights(30), 30)), std::invalid_argument);
  CHECK_THROWS_AS(lfc::matrix_product(A, lfc::identity_matrix(w, 20)), std::invalid_argument);
}

TEST_CASE("property: lower-triangular factors compress exactly") {
  const LinearFractionalMap phi(complex(0.5, 0.1), 0.0, complex(-0.3, 0.2), 1.2);
  const auto w = lfc::s2_weights(96);
  const auto u = lfc::pow_real(TruncatedSeries::linear(1.0, 0.4, 96), -1.5);
  const auto big = lfc::matrix_product(lfc::multiplication_matrix(u, w, 96), lfc::composition_matrix(phi, w, 96));
  const auto small = lfc::matrix_product(lfc::multiplication_matrix(u, w, 24), lfc::composition_matrix(phi, w, 24));
  CHECK(max_entry_diff(lfc::leading_block(big, 24), small) <= 1e-13 * lfc::max_abs_entry(small));
  CHECK(big.shape() == lfc::dense::Shape::lower);

  // with phi(0) != 0 the section of a product is not the product of sections
  const LinearFractionalMap psi(2.0, 1.0, 1.0, 2.0);
  const auto Cbig = lfc::composition_matrix(psi, w, 96);
  const auto A = lfc::matrix_product(lfc::adjoint_matrix(Cbig), Cbig);
  const auto Cs = lfc::composition_matrix(psi, w, 24);
  const auto As = lfc::matrix_product(lfc::adjoint_matrix(Cs), Cs);
  CHECK(max_entry_diff(lfc::leading_block(A, 24), As) > 1e-3);
}

TEST_CASE("singular values and rank") {
  const auto w = lfc::hardy_weights(2);
  const double d3[] = {3.0, 1.0, 2.0};
  const auto D = lfc::diagonal_matrix(d3, w, "D");
  const auto sv = lfc::singular_values(D);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));
  CHECK(sv[2] == doctest::Approx(1.0));

  const double tiny[] = {1.0, 1e-3, 1e-12};
  CHECK(lfc::numerical_rank(lfc::diagonal_matrix(tiny, w, "D"), 1e-8) == 2);
  const double zero[] = {0.0, 0.0, 0.0};
  CHECK(lfc::numerical_rank(lfc::diagonal_matrix(zero, w, "Z"), 1e-8) == 0);
  const auto I = lfc::identity_matrix(lfc::hardy_weights(9), 9);
  CHECK(lfc::numerical_rank(I, 0.5) == 10);
  for (double s : lfc::singular_values(I)) CHECK(s == doctest::Approx(1.0));
  CHECK_THROWS_AS(lfc::numerical_rank(I, 1.5), std::invalid_argument);

  // rank one: u v*
  const auto uw = lfc::hardy_weights(7);
  OperatorMatrix R(8, 8, uw, "uv*");
  const auto u = oracle::random_coeffs(8), v = oracle::random_coeffs(8);
  double nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
    for (std::size_t j = 0; j < 8; ++j) R(i, j) = u[i] * std::conj(v[j]);
  }
  const auto rs = lfc::singular_values(R);
  CHECK(rs[0] == doctest::Approx(std::sqrt(nu * nv)).epsilon(1e-12));
  CHECK(rs[1] <= 1e-13 * rs[0]);
  CHECK(lfc::numerical_rank(rs, 1e-8) == 1);
}

TEST_CASE("basis image norms and leading block") {
  const auto w = lfc::hardy_weights(9);
  CHECK(lfc::basis_image_norms(lfc::identity_matrix(w, 9)) == std::vector<double>(10, 1.0));
  std::vector<double> d(10);
  for (std::size_t n = 0; n < 10; ++n) d[n] = 1.0 / (n + 1.0);
  const auto p = lfc::basis_image_norms(lfc::diagonal_matrix(d, w, "D"));
  for (std::size_t n = 0; n < 10; ++n) CHECK(p[n] == doctest::Approx(d[n]));
  CHECK(lfc::basis_image_norms(OperatorMatrix(10, 10, w, "0")) == std::vector<double>(10, 0.0));

  const auto blk = lfc::leading_block(lfc::identity_matrix(w, 9), 3);
  CHECK(blk.rows() == 4);
  CHECK(max_entry_diff(blk, lfc::identity_matrix(w, 3)) == 0.0);
  const auto A = lfc::composition_matrix(LinearFractionalMap(2.0, 1.0, 1.0, 2.0), w, 9);
  CHECK(max_entry_diff(lfc::leading_block(A, 9), A) == 0.0);
  CHECK_THROWS_AS(lfc::leading_block(A, 10), std::out_of_range);
}

TEST_CASE("reweight changes basis consistently") {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  const auto w1 = lfc::a2alpha_weights(-3.0, 40);
  const auto w2 = lfc::s2_weights(40);
  // C_phi acts on coefficients, so its matrix in either basis follows from the other
  const auto A1 = lfc::composition_matrix(phi, w1, 40);
  const auto A2 = lfc::composition_matrix(phi, w2, 40);
  CHECK(max_entry_diff(lfc::reweight(A1, w2), A2) <= 1e-12 * lfc::max_abs_entry(A2));
  CHECK(max_entry_diff(lfc::reweight(lfc::reweight(A1, w2), w1), A1) <= 1e-12 * lfc::max_abs_entry(A1));
}
