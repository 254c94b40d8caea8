#pragma once

// Column-major complex kernels behind OperatorMatrix.
//
// The top-level functions are OpenMP-parallel and structure aware; the
// `reference` namespace holds plain serial loops that ignore structure. Both
// produce each output entry with the same summation order regardless of
// thread count, so results are deterministic.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>

namespace lfc::dense {

using complex = std::complex<double>;

inline constexpr std::size_t kFullBand = std::numeric_limits<std::size_t>::max();

/// Nonzero pattern hint. Lower: entry (i, j) != 0 only for 0 <= i - j <= band.
/// Upper: only for 0 <= j - i <= band.
enum class Shape { general, lower, upper };

struct View {
  const complex* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  Shape shape = Shape::general;
  std::size_t band = kFullBand;

  complex operator()(std::size_t i, std::size_t j) const { return data[i + j * rows]; }
};

/// out (a.rows x b.cols) = a * b. Requires a.cols == b.rows.
void multiply(View a, View b, std::span<complex> out);

/// out (a.cols x a.rows) = conj(a)^T.
void conj_transpose(View a, std::span<complex> out);

/// Euclidean norm of each column.
void column_norms(View a, std::span<double> out);

/// max |entry|
double max_abs(View a);

namespace reference {
void multiply(View a, View b, std::span<complex> out);
void conj_transpose(View a, std::span<complex> out);
void column_norms(View a, std::span<double> out);
}  // namespace reference

/// Threads OpenMP will use for the parallel kernels.
int max_threads();

}  // namespace lfc::dense
