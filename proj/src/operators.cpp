#include "lfc/operators.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lfc/error.hpp"

namespace lfc {

using dense::Shape;

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols, WeightSequence weights, std::string label,
                               Shape shape, std::size_t band)
    : rows_(rows),
      cols_(cols),
      data_(rows * cols, complex{0.0, 0.0}),
      weights_(std::move(weights)),
      label_(std::move(label)),
      shape_(shape),
      band_(band) {
  if (weights_.size() < std::max(rows, cols)) {
    throw std::invalid_argument("OperatorMatrix: weight sequence shorter than the section");
  }
}

namespace {

void require_weights(const WeightSequence& w, std::size_t max_row, std::size_t max_col) {
  if (w.order() < std::max(max_row, max_col)) {
    throw std::invalid_argument("weight sequence of order " + std::to_string(w.order()) +
                                " cannot index a section up to " + std::to_string(std::max(max_row, max_col)));
  }
}

void require_same_weights(const OperatorMatrix& a, const OperatorMatrix& b, std::size_t extent) {
  const auto x = a.weights().values();
  const auto y = b.weights().values();
  for (std::size_t i = 0; i < extent; ++i) {
    if (x[i] != y[i]) throw std::invalid_argument("operator weights differ at index " + std::to_string(i));
  }
}

std::size_t last_nonzero(const TruncatedSeries& u, std::size_t upto) {
  std::size_t deg = 0;
  for (std::size_t k = 0; k <= upto && k < u.size(); ++k) {
    if (u[k] != 0.0) deg = k;
  }
  return deg;
}

std::size_t sat_add(std::size_t x, std::size_t y) {
  return (y > dense::kFullBand - x) ? dense::kFullBand : x + y;
}

}  // namespace

OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const WeightSequence& w, std::size_t order) {
  return composition_matrix(phi, w, order, order);
}

OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const WeightSequence& w, std::size_t max_row,
                                  std::size_t max_col) {
  if (!validate_self_map(phi, 0).is_self_map) throw DomainError("not a self-map");
  require_weights(w, max_row, max_col);

  // phi(0) = 0 keeps phi^n in degrees >= n; c = 0 makes phi^n a polynomial of degree n
  Shape shape = Shape::general;
  std::size_t band = dense::kFullBand;
  if (phi.b() == 0.0) {
    shape = Shape::lower;
    if (phi.c() == 0.0) band = 0;
  } else if (phi.c() == 0.0) {
    shape = Shape::upper;
  }

  const std::size_t rows = max_row + 1, cols = max_col + 1;
  OperatorMatrix out(rows, cols, w, "C[phi]", shape, band);
  auto data = out.data();

  // phi^(n+1) = phi^n * phi, O(M) per column
  std::vector<complex> power(rows, complex{0.0, 0.0});
  power[0] = 1.0;
  for (std::size_t n = 0; n < cols; ++n) {
    std::copy(power.begin(), power.end(), data.begin() + static_cast<std::ptrdiff_t>(n * rows));
    if (n + 1 < cols) multiply_lfm(power, phi, power);
  }

  const auto beta = w.values();
  const std::ptrdiff_t ncols = static_cast<std::ptrdiff_t>(cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < ncols; ++n) {
    const std::size_t col = static_cast<std::size_t>(n);
    for (std::size_t m = 0; m < rows; ++m) data[m + col * rows] *= beta[m] / beta[col];
  }
  return out;
}

OperatorMatrix multiplication_matrix(const TruncatedSeries& u, const WeightSequence& w, std::size_t order) {
  return multiplication_matrix(u, w, order, order);
}

OperatorMatrix multiplication_matrix(const TruncatedSeries& u, const WeightSequence& w, std::size_t max_row,
                                     std::size_t max_col) {
  if (u.order() < max_row) {
    throw std::invalid_argument("multiplication_matrix: symbol order " + std::to_string(u.order()) +
                                " below section order " + std::to_string(max_row));
  }
  require_weights(w, max_row, max_col);
  const std::size_t rows = max_row + 1, cols = max_col + 1;
  OperatorMatrix out(rows, cols, w, "M[u]", Shape::lower, last_nonzero(u, max_row));
  auto data = out.data();
  const auto beta = w.values();
  const std::ptrdiff_t ncols = static_cast<std::ptrdiff_t>(cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < ncols; ++n) {
    const std::size_t col = static_cast<std::size_t>(n);
    for (std::size_t m = col; m < rows; ++m) data[m + col * rows] = u[m - col] * (beta[m] / beta[col]);
  }
  return out;
}

OperatorMatrix diagonal_matrix(std::span<const double> diag, const WeightSequence& w, std::string label) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("diagonal_matrix: empty diagonal");
  require_weights(w, n - 1, n - 1);
  OperatorMatrix out(n, n, w, std::move(label), Shape::lower, 0);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = diag[i];
  return out;
}

OperatorMatrix identity_matrix(const WeightSequence& w, std::size_t order) {
  std::vector<double> ones(order + 1, 1.0);
  return diagonal_matrix(ones, w, "I");
}

OperatorMatrix adjoint_matrix(const OperatorMatrix& a) {
  Shape shape = a.shape();
  if (shape == Shape::lower) {
    shape = Shape::upper;
  } else if (shape == Shape::upper) {
    shape = Shape::lower;
  }
  OperatorMatrix out(a.cols(), a.rows(), a.weights(), a.label() + "*", shape, a.band());
  dense::conj_transpose(a.view(), out.data());
  return out;
}

OperatorMatrix matrix_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix_product: dimension mismatch");
  require_same_weights(a, b, std::min({std::max({a.rows(), a.cols(), b.cols()}), a.weights().size(), b.weights().size()}));
  Shape shape = Shape::general;
  std::size_t band = dense::kFullBand;
  if (a.shape() == b.shape() && a.shape() != Shape::general) {
    shape = a.shape();
    band = sat_add(a.band(), b.band());
  }
  OperatorMatrix out(a.rows(), b.cols(), a.weights(), a.label() + " " + b.label(), shape, band);
  dense::multiply(a.view(), b.view(), out.data());
  return out;
}

OperatorMatrix matrix_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix_difference: size mismatch");
  require_same_weights(a, b, std::max(a.rows(), a.cols()));
  Shape shape = Shape::general;
  std::size_t band = dense::kFullBand;
  if (a.shape() == b.shape() && a.shape() != Shape::general) {
    shape = a.shape();
    band = std::max(a.band(), b.band());
  }
  OperatorMatrix out(a.rows(), a.cols(), a.weights(), a.label() + " - " + b.label(), shape, band);
  auto o = out.data();
  const auto x = a.data(), y = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] - y[i];
  return out;
}

std::vector<double> singular_values(const OperatorMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::Map<const Eigen::MatrixXcd> m(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                                       static_cast<Eigen::Index>(a.cols()));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::size_t numerical_rank(std::span<const double> sv, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("numerical_rank: rel_tol must be in (0,1)");
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = rel_tol * sv.front();
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

std::size_t numerical_rank(const OperatorMatrix& a, double rel_tol) {
  return numerical_rank(singular_values(a), rel_tol);
}

std::vector<double> basis_image_norms(const OperatorMatrix& a) {
  std::vector<double> out(a.cols());
  dense::column_norms(a.view(), out);
  return out;
}

OperatorMatrix leading_block(const OperatorMatrix& a, std::size_t k) {
  if (k >= a.rows() || k >= a.cols()) {
    throw std::out_of_range("leading_block: k=" + std::to_string(k) + " outside a " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + " section");
  }
  OperatorMatrix out(k + 1, k + 1, a.weights(), a.label(), a.shape(), a.band());
  for (std::size_t n = 0; n <= k; ++n) {
    for (std::size_t m = 0; m <= k; ++m) out(m, n) = a(m, n);
  }
  return out;
}

OperatorMatrix reweight(const OperatorMatrix& a, const WeightSequence& target) {
  require_weights(target, a.rows() - 1, a.cols() - 1);
  const auto from = a.weights().values();
  const auto to = target.values();
  OperatorMatrix out(a.rows(), a.cols(), target, a.label(), a.shape(), a.band());
  for (std::size_t n = 0; n < a.cols(); ++n) {
    const double cs = from[n] / to[n];
    for (std::size_t m = 0; m < a.rows(); ++m) out(m, n) = a(m, n) * ((to[m] / from[m]) * cs);
  }
  return out;
}

double max_abs_entry(const OperatorMatrix& a) { return dense::max_abs(a.view()); }

}  // namespace lfc
