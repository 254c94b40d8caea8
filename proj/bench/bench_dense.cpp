// Parallel structure-aware kernels against the serial reference loops.
//   bench_dense [size] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "lfc/dense.hpp"
#include "lfc/verify.hpp"

using lfc::dense::complex;
using lfc::dense::Shape;
using lfc::dense::View;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

std::vector<complex> random_matrix(std::size_t r, std::size_t c, Shape s) {
  std::mt19937_64 gen(r * 31 + c);
  std::normal_distribution<double> nd;
  std::vector<complex> v(r * c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      const bool keep = s == Shape::general || (s == Shape::lower ? i >= j : j >= i);
      v[i + j * r] = keep ? complex(nd(gen), nd(gen)) : complex(0.0);
    }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1025;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads: %d, size %zu, best of %d\n", lfc::dense::max_threads(), n, repeats);

  const struct {
    const char* name;
    Shape a, b;
  } cases[] = {{"general x general", Shape::general, Shape::general},
               {"lower x general", Shape::lower, Shape::general},
               {"general x upper", Shape::general, Shape::upper},
               {"lower x upper", Shape::lower, Shape::upper}};
  for (const auto& c : cases) {
    const auto A = random_matrix(n, n, c.a);
    const auto B = random_matrix(n, n, c.b);
    std::vector<complex> out(n * n);
    const double par = best_of(repeats, [&] { lfc::dense::multiply({A.data(), n, n, c.a}, {B.data(), n, n, c.b}, out); });
    const double ref =
        best_of(repeats, [&] { lfc::dense::reference::multiply({A.data(), n, n}, {B.data(), n, n}, out); });
    std::printf("%-20s parallel %8.3f s   reference %8.3f s   speedup %5.1fx\n", c.name, par, ref, ref / par);
  }

  const auto A = random_matrix(n, n, Shape::general);
  std::vector<double> norms(n);
  const double pn = best_of(repeats, [&] { lfc::dense::column_norms({A.data(), n, n}, norms); });
  const double rn = best_of(repeats, [&] { lfc::dense::reference::column_norms({A.data(), n, n}, norms); });
  std::printf("%-20s parallel %8.3f s   reference %8.3f s\n", "column norms", pn, rn);

  const double hb = best_of(1, [] { (void)lfc::run_heller_b(1.0, 0.5, 1.0, 256); });
  std::printf("%-20s %8.3f s (M=256 and 512, 4x row padding)\n", "automorphism check", hb);
  return 0;
}
