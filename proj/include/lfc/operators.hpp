#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lfc/dense.hpp"
#include "lfc/maps.hpp"
#include "lfc/series.hpp"
#include "lfc/weights.hpp"

namespace lfc {

/// Section of an operator T on H^2(beta) in the orthonormal basis
/// e_n = z^n / beta(n): entry (m, n) = <T e_n, e_m> for m <= max_row,
/// n <= max_col. Square sections are the usual finite-section compressions;
/// rectangular ones keep extra rows or columns for finite-section control.
///
/// Storage is dense column-major; `shape()` records triangular/banded
/// structure that the product kernel exploits.
class OperatorMatrix {
 public:
  OperatorMatrix(std::size_t rows, std::size_t cols, WeightSequence weights, std::string label,
                 dense::Shape shape = dense::Shape::general, std::size_t band = dense::kFullBand);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  complex operator()(std::size_t m, std::size_t n) const { return data_[m + n * rows_]; }
  complex& operator()(std::size_t m, std::size_t n) { return data_[m + n * rows_]; }
  std::span<const complex> data() const { return data_; }
  std::span<complex> data() { return data_; }
  const WeightSequence& weights() const { return weights_; }
  const std::string& label() const { return label_; }
  dense::Shape shape() const { return shape_; }
  std::size_t band() const { return band_; }
  dense::View view() const { return {data_.data(), rows_, cols_, shape_, band_}; }

 private:
  std::size_t rows_, cols_;
  std::vector<complex> data_;
  WeightSequence weights_;
  std::string label_;
  dense::Shape shape_;
  std::size_t band_;
};

/// C_phi: column n holds the coefficients of phi^n scaled by beta(m)/beta(n).
/// Throws DomainError("not a self-map") if phi fails the self-map criterion.
OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const WeightSequence& w, std::size_t order);
OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const WeightSequence& w, std::size_t max_row,
                                  std::size_t max_col);

/// M_u: entry (m, n) = u_{m-n} beta(m)/beta(n) for m >= n. Requires
/// u.order() >= max_row.
OperatorMatrix multiplication_matrix(const TruncatedSeries& u, const WeightSequence& w, std::size_t order);
OperatorMatrix multiplication_matrix(const TruncatedSeries& u, const WeightSequence& w, std::size_t max_row,
                                     std::size_t max_col);

/// Diagonal operator z^n -> d_n z^n.
OperatorMatrix diagonal_matrix(std::span<const double> diag, const WeightSequence& w, std::string label);

OperatorMatrix identity_matrix(const WeightSequence& w, std::size_t order);

OperatorMatrix adjoint_matrix(const OperatorMatrix& a);

/// Both require matching dimensions and identical weights on the indices
/// involved (std::invalid_argument otherwise).
OperatorMatrix matrix_product(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix matrix_difference(const OperatorMatrix& a, const OperatorMatrix& b);

/// Full spectrum, descending. Backed by a divide-and-conquer SVD; its
/// absolute accuracy is about 1e-13 sigma_1 (M+1).
std::vector<double> singular_values(const OperatorMatrix& a);

/// Count of sigma_k > rel_tol sigma_1; 0 for the zero matrix.
std::size_t numerical_rank(std::span<const double> singular_values, double rel_tol);
std::size_t numerical_rank(const OperatorMatrix& a, double rel_tol);

/// ||A e_n|| for each column n.
std::vector<double> basis_image_norms(const OperatorMatrix& a);

/// Top-left (k+1) x (k+1) block. Throws std::out_of_range if k exceeds
/// either dimension.
OperatorMatrix leading_block(const OperatorMatrix& a, std::size_t k);

/// The same operator expressed in the orthonormal basis of another weight
/// sequence: entry (m, n) scales by (target(m)/beta(m)) (beta(n)/target(n)).
OperatorMatrix reweight(const OperatorMatrix& a, const WeightSequence& target);

double max_abs_entry(const OperatorMatrix& a);

}  // namespace lfc
