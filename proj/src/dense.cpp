#include "lfc/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lfc::dense {

namespace {

constexpr std::size_t kRowTile = 128;
constexpr std::size_t kColBlock = 4;

void check_product(View a, View b, std::span<complex> out) {
  if (a.cols != b.rows) throw std::invalid_argument("dense::multiply: inner dimension mismatch");
  if (out.size() != a.rows * b.cols) throw std::invalid_argument("dense::multiply: output size mismatch");
}

std::size_t sat_add(std::size_t x, std::size_t y) { return (y > kFullBand - x) ? kFullBand : x + y; }

// Range [lo, hi) of rows that can be nonzero in column j.
void row_range(View v, std::size_t j, std::size_t& lo, std::size_t& hi) {
  lo = 0;
  hi = v.rows;
  if (v.shape == Shape::lower) {
    lo = std::min(j, v.rows);
    hi = std::min(v.rows, sat_add(sat_add(j, v.band), 1));
  } else if (v.shape == Shape::upper) {
    lo = (v.band == kFullBand || v.band >= j) ? 0 : j - v.band;
    hi = std::min(v.rows, j + 1);
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void multiply(View a, View b, std::span<complex> out) {
  check_product(a, b, out);
  const std::size_t m = a.rows, k = a.cols, n = b.cols;
  std::fill(out.begin(), out.end(), complex{0.0, 0.0});
  if (m == 0 || n == 0 || k == 0) return;

  const double* ad = reinterpret_cast<const double*>(a.data);
  double* cd = reinterpret_cast<double*>(out.data());
  const std::ptrdiff_t nblocks = static_cast<std::ptrdiff_t>((n + kColBlock - 1) / kColBlock);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t j0 = static_cast<std::size_t>(blk) * kColBlock;
    const std::size_t jn = std::min(kColBlock, n - j0);

    // p-range of B over the block's columns
    std::size_t plo = k, phi = 0;
    std::size_t lo[kColBlock], hi[kColBlock];
    for (std::size_t q = 0; q < jn; ++q) {
      row_range(b, j0 + q, lo[q], hi[q]);
      plo = std::min(plo, lo[q]);
      phi = std::max(phi, hi[q]);
    }
    double* cj[kColBlock];
    for (std::size_t q = 0; q < kColBlock; ++q) cj[q] = cd + 2 * (j0 + std::min(q, jn - 1)) * m;

    for (std::size_t i0 = 0; i0 < m; i0 += kRowTile) {
      const std::size_t i1 = std::min(m, i0 + kRowTile);
      for (std::size_t p = plo; p < phi; ++p) {
        double br[kColBlock], bi[kColBlock];
        bool any = false;
        for (std::size_t q = 0; q < kColBlock; ++q) {
          br[q] = bi[q] = 0.0;
          if (q < jn && p >= lo[q] && p < hi[q]) {
            const complex v = b(p, j0 + q);
            br[q] = v.real();
            bi[q] = v.imag();
            any = any || v != 0.0;
          }
        }
        if (!any) continue;
        std::size_t alo, ahi;
        row_range(a, p, alo, ahi);
        alo = std::max(alo, i0);
        ahi = std::min(ahi, i1);
        const double* ap = ad + 2 * p * m;
        for (std::size_t i = alo; i < ahi; ++i) {
          const double ar = ap[2 * i], ai = ap[2 * i + 1];
          for (std::size_t q = 0; q < kColBlock; ++q) {
            cj[q][2 * i] += ar * br[q] - ai * bi[q];
            cj[q][2 * i + 1] += ar * bi[q] + ai * br[q];
          }
        }
      }
    }
  }
}

void conj_transpose(View a, std::span<complex> out) {
  if (out.size() != a.rows * a.cols) throw std::invalid_argument("dense::conj_transpose: output size mismatch");
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out[j + static_cast<std::size_t>(i) * a.cols] = std::conj(a(i, j));
  }
}

void column_norms(View a, std::span<double> out) {
  if (out.size() != a.cols) throw std::invalid_argument("dense::column_norms: output size mismatch");
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(a.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j) {
    // scaled sum of squares, as in BLAS nrm2
    double scale = 0.0, ssq = 1.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (double x : {a(i, j).real(), a(i, j).imag()}) {
        if (x == 0.0) continue;
        const double ax = std::abs(x);
        if (scale < ax) {
          ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
          scale = ax;
        } else {
          ssq += (ax / scale) * (ax / scale);
        }
      }
    }
    out[static_cast<std::size_t>(j)] = scale * std::sqrt(ssq);
  }
}

double max_abs(View a) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t i = 0; i < a.rows; ++i) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

namespace reference {

void multiply(View a, View b, std::span<complex> out) {
  check_product(a, b, out);
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (std::size_t i = 0; i < a.rows; ++i) {
      complex acc = 0.0;
      for (std::size_t p = 0; p < a.cols; ++p) acc += a(i, p) * b(p, j);
      out[i + j * a.rows] = acc;
    }
  }
}

void conj_transpose(View a, std::span<complex> out) {
  if (out.size() != a.rows * a.cols) throw std::invalid_argument("dense::conj_transpose: output size mismatch");
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t i = 0; i < a.rows; ++i) out[j + i * a.cols] = std::conj(a(i, j));
  }
}

void column_norms(View a, std::span<double> out) {
  if (out.size() != a.cols) throw std::invalid_argument("dense::column_norms: output size mismatch");
  for (std::size_t j = 0; j < a.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) s += std::norm(a(i, j));
    out[j] = std::sqrt(s);
  }
}

}  // namespace reference

}  // namespace lfc::dense
