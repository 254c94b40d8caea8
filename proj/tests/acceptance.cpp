// One line per acceptance criterion: PASS/FAIL, measured values, wall time.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lfc/kernels.hpp"
#include "lfc/verify.hpp"
#include "lfc/weights.hpp"
#include "oracles.hpp"

using lfc::complex;
using lfc::LinearFractionalMap;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const LinearFractionalMap kPhi(1.0, 0.0, -1.0, 3.0);

Outcome exact_identity() {
  const auto r = lfc::run_exact_identity(kPhi, -1.0, 128, 16, 1e-8);
  const double m = r.residuals.at("block_max_M"), m2 = r.residuals.at("block_max_2M");
  const bool ok = r.pass && m <= 1e-8 && lfc::non_increasing(m, m2);
  return {ok, fmt("block residual %.2e at M=128", m) + fmt(", %.2e at M=256", m2)};
}

Outcome finite_rank(double alpha, std::size_t plateau_index, std::size_t bound) {
  const auto r = lfc::run_finite_rank(kPhi, alpha, 256, 1e-8);
  const auto& sv = *r.singular_values;
  const double ratio = sv[plateau_index] / sv[0];
  const double rank = r.residuals.at("rank_M");
  const bool ok = r.pass && ratio <= 1e-8 && rank <= static_cast<double>(bound) && sv.size() == 129;
  return {ok, fmt("sigma_%.0f/sigma_1 = ", plateau_index + 1.0) + fmt("%.2e", ratio) + fmt(", rank %.0f", rank) +
                  fmt(" (bound %.0f)", static_cast<double>(bound))};
}

Outcome kernel_certification() {
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.0, -2.0, -2.5, -3.0, -3.5}) {
    const auto k = lfc::residual_coefficients(alpha, 128, 1e-10);
    ok = ok && k.vanishes && k.max_high <= 1e-10;
    worst = std::max(worst, k.max_high);
  }
  return {ok, fmt("worst coefficient beyond degree N: %.2e", worst)};
}

Outcome weight_asymptotics() {
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.0, -2.0, -2.5, -3.0, -3.5}) {
    const auto d = lfc::asymptotic_check(lfc::a2alpha_weights(alpha, 512), alpha);
    ok = ok && d.residual <= 0.02;
    worst = std::max(worst, d.residual);
  }
  const auto d0 = lfc::asymptotic_check(lfc::a2alpha_weights(0.0, 512), 0.0);
  const double at256 = std::abs(d0.r_half - std::sqrt(256.0 / 257.0));
  ok = ok && std::abs(d0.r_full - 1.0) <= 0.01 && at256 <= 1e-12;
  return {ok, fmt("worst Cauchy residual %.2e", worst) + fmt(", alpha=0 constant %.5f", d0.r_full) +
                  fmt(", r(256) off by %.1e", at256)};
}

Outcome perturbation() {
  const auto r = lfc::run_perturbation(lfc::a2alpha_family(-3.0), lfc::power_law_family(1.0, 1.0),
                                       lfc::composition_recipe(kPhi), 256, 16, 1e-8);
  const double k4 = (*r.decay)[4];
  const double m = r.residuals.at("block_max_M"), m2 = r.residuals.at("block_max_2M");
  const bool ok = r.pass && std::abs(k4 + 0.25) <= 1e-12 && m <= 1e-8 && lfc::non_increasing(m, m2);
  return {ok, fmt("K[4] = %.15f", k4) + fmt(", block residual %.2e at M=256", m) + fmt(", %.2e at M=512", m2)};
}

Outcome heller_a() {
  const auto r = lfc::run_heller_a(kPhi, 1.0, 256);
  const double h1 = r.residuals.at("h1_identity");
  const double q = r.residuals.at("band_ratio_M"), q2 = r.residuals.at("band_ratio_2M");
  const bool ok = r.pass && h1 <= 1e-10 && q <= 0.5 && q2 <= q;
  return {ok, fmt("h1 = G o phi to %.2e", h1) + fmt(", band ratio %.2e at M=256", q) + fmt(", %.2e at M=512", q2)};
}

Outcome heller_b() {
  const auto r = lfc::run_heller_b(1.0, 0.5, 1.0, 256);
  const double mismatch = r.residuals.at("sigma_inverse_mismatch");
  const double q = r.residuals.at("band_ratio_M");
  const bool ok = r.pass && mismatch <= 1e-12 && q <= 0.5;
  return {ok, fmt("sigma vs inverse %.1e", mismatch) + fmt(", band ratio %.3f at M=256", q) +
                  fmt(" (%.3f at M=512)", r.residuals.at("band_ratio_2M"))};
}

Outcome trivial_battery() {
  bool ok = true;
  double worst_zero = 0.0;
  const LinearFractionalMap maps[] = {LinearFractionalMap::identity(),
                                      LinearFractionalMap::rotation(std::polar(1.0, 0.9)),
                                      LinearFractionalMap::rotation(std::polar(1.0, -2.4))};
  for (const auto& phi : maps) {
    for (double alpha : {1.0, 0.0, -1.0, -2.0, -2.5, -3.0, -3.5}) {
      const auto D = lfc::cowen_difference(phi, lfc::a2alpha_weights(alpha, 64), lfc::AlphaMode{alpha}, 64);
      worst_zero = std::max(worst_zero, lfc::max_abs_entry(D));
    }
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      const auto D = lfc::cowen_difference(phi, lfc::power_law_weights(t, 1.0, 64), lfc::PowerMode{t}, 64);
      worst_zero = std::max(worst_zero, lfc::max_abs_entry(D));
    }
  }
  ok = ok && worst_zero <= 1e-12;

  // series arithmetic against the convolution and binomial oracles
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  double worst_mul = 0.0, worst_pow = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_coeffs(64), b = oracle::random_coeffs(64);
    const auto got = lfc::multiply(lfc::TruncatedSeries(a), lfc::TruncatedSeries(b));
    const auto want = oracle::convolve(a, b);
    worst_mul = std::max(worst_mul, oracle::max_diff({got.coeffs().begin(), got.coeffs().end()}, want) /
                                        oracle::max_abs(want));

    const double gamma = ud(gen);
    const complex s = std::polar(0.8, 3.0 * ud(gen));
    const auto p = lfc::pow_real(lfc::TruncatedSeries::linear(1.0, s, 63), gamma);
    const auto pw = oracle::binomial_series(gamma, s, 63);
    worst_pow = std::max(worst_pow,
                         oracle::max_diff({p.coeffs().begin(), p.coeffs().end()}, pw) / oracle::max_abs(pw));
  }
  ok = ok && worst_mul <= 1e-13 && worst_pow <= 1e-13;
  return {ok, fmt("max |D| %.1e", worst_zero) + fmt(", multiply %.1e", worst_mul) + fmt(", pow %.1e rel", worst_pow)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact adjoint identity, alpha=-1", 5.0, exact_identity},
      {2, "finite rank, type B alpha=-3.5", 10.0, [] { return finite_rank(-3.5, 6, 6); }},
      {3, "finite rank, type C alpha=-2", 10.0, [] { return finite_rank(-2.0, 4, 4); }},
      {4, "kernel closed forms", 2.0, kernel_certification},
      {5, "weight asymptotics", 1.0, weight_asymptotics},
      {6, "perturbation bridge", 10.0, perturbation},
      {7, "phi(0)=0 adjoint modulo compacts", 10.0, heller_a},
      {8, "automorphism adjoint modulo compacts", 10.0, heller_b},
      {9, "trivial cases and series oracles", 5.0, trivial_battery},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.time_limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s | %s | %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.time_limit, in_time ? "" : " TOO SLOW");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
