#include "lfc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lfc/error.hpp"

namespace lfc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

nlohmann::json complex_json(complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12; }

// Integer exponents avoid the logarithm, so they never hit a branch cut.
TruncatedSeries real_power(const TruncatedSeries& f, double gamma) {
  if (is_integer(gamma)) {
    const long n = std::lround(gamma);
    if (n >= 0) return power_int(f, static_cast<unsigned>(n));
    return power_int(reciprocal(f), static_cast<unsigned>(-n));
  }
  return pow_real(f, gamma);
}

std::pair<double, double> exponents(SymbolMode mode) {
  if (const auto* a = std::get_if<AlphaMode>(&mode)) return {-a->alpha - 2.0, a->alpha + 2.0};
  const double t = std::get<PowerMode>(mode).t;
  return {2.0 * t - 1.0, -2.0 * t + 1.0};
}

void require_power_of_two_order(std::size_t M) {
  if (M < 2 || (M & (M - 1)) != 0) throw std::invalid_argument("truncation must be a power of two");
}

double max_over(std::span<const double> v, std::size_t lo, std::size_t hi) {
  double out = 0.0;
  for (std::size_t i = lo; i <= hi && i < v.size(); ++i) out = std::max(out, v[i]);
  return out;
}

void check_weights_match_t(const WeightSequence& w, double t) {
  if (const auto as = asymptote(w.regime())) {
    if (std::abs(as->exponent - t) > 1e-9) {
      throw std::invalid_argument("weights grow like n^" + std::to_string(as->exponent) + ", not n^" +
                                  std::to_string(t));
    }
  }
}

struct DecayRun {
  std::size_t inner;
  std::vector<double> profile;
  DecayGate gate;
};

// Shared by the power-mode checks: ||D e_n|| for a section with `inner` rows.
template <class Build>
DecayRun decay_run(Build&& build, std::size_t M, std::size_t inner, double ratio_limit) {
  const OperatorMatrix D = build(M, inner);
  DecayRun run{inner, basis_image_norms(D), {}};
  run.gate = decay_gate(run.profile, M, ratio_limit);
  return run;
}

void record_decay(VerificationReport& r, const DecayRun& at_m, const DecayRun& at_2m) {
  r.residuals["band_ratio_M"] = at_m.gate.ratio;
  r.residuals["band_ratio_2M"] = at_2m.gate.ratio;
  r.residuals["head_max_M"] = at_m.gate.head_max;
  r.residuals["head_max_2M"] = at_2m.gate.head_max;
  r.residuals["tail_max_M"] = at_m.gate.tail_max;
  r.residuals["tail_max_2M"] = at_2m.gate.tail_max;
  r.params["inner_rows"] = nlohmann::json::array({at_m.inner, at_2m.inner});
  r.decay = at_m.profile;
}

// The branch factor is recorded only when it is not 1, so that a nontrivial
// branch repair is visible in the report.
void note_branch(VerificationReport& r, const LinearFractionalMap& phi, SymbolMode mode) {
  const complex f = cowen_symbols(phi, mode, 1).branch_factor;
  if (f != 1.0) r.params["branch_factor"] = complex_json(f);
}

bool decay_pass(const DecayRun& at_m, const DecayRun& at_2m) {
  return at_m.gate.pass && at_2m.gate.pass && non_increasing(at_m.gate.tail_max, at_2m.gate.tail_max);
}

}  // namespace

nlohmann::json map_json(const LinearFractionalMap& m) {
  return {{"a", complex_json(m.a())}, {"b", complex_json(m.b())}, {"c", complex_json(m.c())},
          {"d", complex_json(m.d())}};
}

CowenSymbols cowen_symbols(const LinearFractionalMap& phi, SymbolMode mode, std::size_t order) {
  if (!validate_self_map(phi, 0).is_self_map) throw DomainError("not a self-map");
  const auto [gamma_g, gamma_h] = exponents(mode);
  const auto mu = TruncatedSeries::linear(std::conj(phi.d()), -std::conj(phi.b()), order);
  const auto eta = TruncatedSeries::linear(phi.d(), phi.c(), order);
  TruncatedSeries g = real_power(mu, gamma_g);
  TruncatedSeries h = real_power(eta, gamma_h);
  complex factor = 1.0 / (g[0] * std::conj(h[0]));
  if (std::abs(factor - 1.0) <= 8 * kEps) factor = 1.0;
  if (factor != 1.0) g = factor * g;
  return {krein_adjoint(phi), std::move(g), std::move(h), factor, gamma_g, gamma_h};
}

OperatorMatrix cowen_difference(const LinearFractionalMap& phi, const WeightSequence& w, SymbolMode mode,
                                std::size_t order) {
  return cowen_difference(phi, w, mode, order, order);
}

OperatorMatrix cowen_difference(const LinearFractionalMap& phi, const WeightSequence& w, SymbolMode mode,
                                std::size_t max_row, std::size_t max_col) {
  if (max_row < max_col) throw std::invalid_argument("cowen_difference needs max_row >= max_col");
  const CowenSymbols s = cowen_symbols(phi, mode, max_row);
  const OperatorMatrix adj = adjoint_matrix(composition_matrix(phi, w, max_col, max_row));
  const OperatorMatrix Mg = multiplication_matrix(s.g, w, max_row);
  const OperatorMatrix Cs = composition_matrix(s.sigma, w, max_row, max_col);
  const OperatorMatrix MhAdj = adjoint_matrix(multiplication_matrix(s.h, w, max_col));
  return matrix_difference(adj, matrix_product(Mg, matrix_product(Cs, MhAdj)));
}

std::size_t rank_bound(double alpha) {
  const WeightRegime r = classify_alpha(alpha);
  if (const auto* b = std::get_if<regime::TypeB>(&r)) return 2 * static_cast<std::size_t>(b->N + 1);
  if (const auto* c = std::get_if<regime::TypeC>(&r)) return 4 * static_cast<std::size_t>(c->N + 1);
  return 0;
}

bool non_increasing(double at_m, double at_2m) {
  return at_2m <= kConvergenceSlack * at_m || at_2m <= kRoundoffFloor;
}

DecayGate decay_gate(std::span<const double> profile, std::size_t M, double ratio_limit) {
  if (M < 16 || profile.size() < M + 1) throw std::invalid_argument("decay gate needs M >= 16 and M+1 norms");
  DecayGate g;
  g.head_max = max_over(profile, M / 16, M / 8);
  g.tail_max = max_over(profile, 3 * M / 4, M);
  if (g.head_max > 0.0) {
    g.ratio = g.tail_max / g.head_max;
  } else {
    g.ratio = g.tail_max > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  g.pass = g.ratio <= ratio_limit || g.tail_max <= kRoundoffFloor;
  return g;
}

std::size_t inner_order(const LinearFractionalMap& phi, std::size_t M, std::size_t pad) {
  if (pad == 0) throw std::invalid_argument("pad must be positive");
  return phi.b() == 0.0 ? M : pad * M;
}

VerificationReport run_exact_identity(const LinearFractionalMap& phi, double alpha, std::size_t M, std::size_t k,
                                      double tol) {
  if (alpha + 2.0 <= 0.0) throw std::invalid_argument("exact identity needs alpha + 2 > 0");
  if (k > M) throw std::invalid_argument("block exceeds truncation");
  VerificationReport r;
  r.check = "cowen-exact";
  r.params = {{"map", map_json(phi)}, {"alpha", alpha}, {"block", k}, {"tol", tol}};
  r.truncations = {M, 2 * M};
  note_branch(r, phi, AlphaMode{alpha});
  double block[2], full[2];
  for (int i = 0; i < 2; ++i) {
    const std::size_t order = M << i;
    const OperatorMatrix D = cowen_difference(phi, a2alpha_weights(alpha, order), AlphaMode{alpha}, order);
    block[i] = max_abs_entry(leading_block(D, k));
    full[i] = max_abs_entry(D);
  }
  r.residuals["block_max_M"] = block[0];
  r.residuals["block_max_2M"] = block[1];
  r.residuals["full_max_M"] = full[0];
  r.residuals["full_max_2M"] = full[1];
  r.pass = block[0] <= tol && block[1] <= tol && non_increasing(block[0], block[1]);
  return r;
}

VerificationReport run_finite_rank(const LinearFractionalMap& phi, double alpha, std::size_t M, double rel_tol) {
  if (alpha + 2.0 > 0.0) throw std::invalid_argument("finite rank needs alpha + 2 <= 0");
  if (M < 4) throw std::invalid_argument("truncation too small");
  const std::size_t bound = rank_bound(alpha);
  VerificationReport r;
  r.check = "cowen-finite-rank";
  r.params = {{"map", map_json(phi)}, {"alpha", alpha}, {"rel_tol", rel_tol}, {"rank_bound", bound}};
  r.truncations = {M, 2 * M};
  note_branch(r, phi, AlphaMode{alpha});
  std::size_t rank[2];
  double plateau[2];
  for (int i = 0; i < 2; ++i) {
    const std::size_t order = M << i;
    const OperatorMatrix D = cowen_difference(phi, a2alpha_weights(alpha, order), AlphaMode{alpha}, order);
    const std::vector<double> sv = singular_values(leading_block(D, order / 2));
    rank[i] = numerical_rank(sv, rel_tol);
    plateau[i] = (sv.size() > bound && sv[0] > 0.0) ? sv[bound] / sv[0] : 0.0;
    if (i == 0) r.singular_values = sv;
  }
  r.residuals["rank_M"] = static_cast<double>(rank[0]);
  r.residuals["rank_2M"] = static_cast<double>(rank[1]);
  r.residuals["plateau_ratio_M"] = plateau[0];
  r.residuals["plateau_ratio_2M"] = plateau[1];
  r.pass = rank[0] <= bound && rank[1] <= bound && rank[0] == rank[1] && non_increasing(plateau[0], plateau[1]);
  return r;
}

VerificationReport run_compact_decay(const LinearFractionalMap& phi, const WeightFamily& weights, double t,
                                     std::size_t M, DecayOptions opts) {
  require_power_of_two_order(M);
  VerificationReport r;
  r.check = "cowen-compact";
  r.truncations = {M, 2 * M};
  const WeightSequence probe = weights(M);
  check_weights_match_t(probe, t);
  r.params = {{"map", map_json(phi)}, {"t", t}, {"weights", describe(probe.regime())},
              {"ratio_limit", opts.ratio_limit}};
  note_branch(r, phi, PowerMode{t});
  auto build = [&](std::size_t order, std::size_t inner) {
    return cowen_difference(phi, weights(inner), PowerMode{t}, inner, order);
  };
  const DecayRun at_m = decay_run(build, M, inner_order(phi, M, opts.pad), opts.ratio_limit);
  const DecayRun at_2m = decay_run(build, 2 * M, inner_order(phi, 2 * M, opts.pad), opts.ratio_limit);
  record_decay(r, at_m, at_2m);
  r.pass = decay_pass(at_m, at_2m);
  return r;
}

OperatorRecipe composition_recipe(const LinearFractionalMap& phi) {
  return [phi](const WeightSequence& w, std::size_t order) { return composition_matrix(phi, w, order); };
}

namespace {

struct RhoLimit {
  double value;
  std::string source;
};

RhoLimit rho_limit(const WeightFamily& beta1, const WeightFamily& beta2, std::size_t M) {
  const WeightSequence w1 = beta1(M);
  const WeightSequence w2 = beta2(M);
  const double now = w2[M] / w1[M];
  const double half = w2[M / 2] / w1[M / 2];
  if (!std::isfinite(now) || std::abs(now - half) > 0.05 * now) throw DomainError("weights not equivalent");
  const auto a1 = asymptote(w1.regime());
  const auto a2 = asymptote(w2.regime());
  if (a1 && a2) {
    if (std::abs(a1->exponent - a2->exponent) > 1e-9) throw DomainError("weights not equivalent");
    return {a2->constant / a1->constant, "asymptote"};
  }
  return {now, "finite"};
}

}  // namespace

VerificationReport run_perturbation(const WeightFamily& beta1, const WeightFamily& beta2, const OperatorRecipe& A,
                                    std::size_t M, std::size_t k, double tol) {
  require_power_of_two_order(M);
  if (k > M) throw std::invalid_argument("block exceeds truncation");
  const RhoLimit rho = rho_limit(beta1, beta2, M);
  VerificationReport r;
  r.check = "perturbation";
  r.truncations = {M, 2 * M};
  double block[2];
  for (int i = 0; i < 2; ++i) {
    const std::size_t order = M << i;
    const WeightSequence w1 = beta1(order);
    const WeightSequence w2 = beta2(order);
    const OperatorMatrix A1 = A(w1, order);
    const OperatorMatrix A2 = A(w2, order);
    std::vector<double> diag(order + 1), kdiag(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
      const double q = rho.value * w1[n] / w2[n];
      diag[n] = q * q;
      kdiag[n] = diag[n] - 1.0;
    }
    const OperatorMatrix IK = diagonal_matrix(diag, w2, "I+K");
    const OperatorMatrix B1 = reweight(adjoint_matrix(A1), w2);
    const OperatorMatrix B2 = adjoint_matrix(A2);
    const OperatorMatrix R = matrix_difference(matrix_product(B2, IK), matrix_product(IK, B1));
    block[i] = max_abs_entry(leading_block(R, k));
    if (i == 0) {
      std::vector<double> absk(kdiag.size());
      std::transform(kdiag.begin(), kdiag.end(), absk.begin(), [](double v) { return std::abs(v); });
      r.residuals["k_head_max"] = max_over(absk, 0, order / 4);
      r.residuals["k_tail_max"] = max_over(absk, 3 * order / 4, order);
      r.decay = kdiag;
      r.params = {{"beta1", describe(w1.regime())}, {"beta2", describe(w2.regime())}, {"operator", A1.label()},
                  {"block", k},
                  {"tol", tol},
                  {"rho", rho.value},
                  {"rho_source", rho.source}};
    }
  }
  r.residuals["block_max_M"] = block[0];
  r.residuals["block_max_2M"] = block[1];
  const bool k_decays = r.residuals["k_tail_max"] <= 0.5 * r.residuals["k_head_max"] ||
                        r.residuals["k_tail_max"] <= kRoundoffFloor;
  r.pass = block[0] <= tol && block[1] <= tol && non_increasing(block[0], block[1]) && k_decays;
  return r;
}

VerificationReport run_heller_a(const LinearFractionalMap& phi, double t, std::size_t M, double ell,
                                DecayOptions opts) {
  if (phi.b() != 0.0) throw DomainError("Heller-A requires phi(0)=0");
  require_power_of_two_order(M);
  const double gamma = 2.0 * t - 1.0;
  const LinearFractionalMap sigma = krein_adjoint(phi);
  const complex slope = -phi.c() / phi.a();
  VerificationReport r;
  r.check = "heller-a";
  r.truncations = {M, 2 * M};
  r.params = {{"map", map_json(phi)}, {"t", t}, {"ell", ell}, {"ratio_limit", opts.ratio_limit}};

  // (d / (c z + d))^(2t-1) against G o phi, coefficient by coefficient
  {
    const TruncatedSeries G = real_power(TruncatedSeries::linear(1.0, slope, M), gamma);
    const TruncatedSeries h1 =
        real_power(phi.d() * reciprocal(TruncatedSeries::linear(phi.d(), phi.c(), M)), gamma);
    const TruncatedSeries Gphi = compose(G, lfm_series(phi, M));
    double diff = 0.0;
    for (std::size_t n = 0; n <= M; ++n) diff = std::max(diff, std::abs(h1[n] - Gphi[n]));
    r.residuals["h1_identity"] = diff;
  }

  auto build = [&](std::size_t order, std::size_t inner) {
    const WeightSequence w = power_law_weights(t, ell, inner);
    const TruncatedSeries G = real_power(TruncatedSeries::linear(1.0, slope, inner), gamma);
    const OperatorMatrix adj = adjoint_matrix(composition_matrix(phi, w, order, inner));
    const OperatorMatrix MgAdj = adjoint_matrix(multiplication_matrix(G, w, inner));
    return matrix_difference(adj, matrix_product(MgAdj, composition_matrix(sigma, w, inner, order)));
  };
  const DecayRun at_m = decay_run(build, M, inner_order(phi, M, opts.pad), opts.ratio_limit);
  const DecayRun at_2m = decay_run(build, 2 * M, inner_order(phi, 2 * M, opts.pad), opts.ratio_limit);
  record_decay(r, at_m, at_2m);
  r.pass = r.residuals["h1_identity"] <= 1e-10 && decay_pass(at_m, at_2m);
  return r;
}

VerificationReport run_heller_b(complex lambda, complex u, double t, std::size_t M, double ell, DecayOptions opts) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw std::invalid_argument("|lambda| must be 1");
  if (std::abs(u) >= 1.0) throw std::invalid_argument("|u| must be < 1");
  require_power_of_two_order(M);
  const double gamma = 2.0 * t - 1.0;
  const LinearFractionalMap phi = LinearFractionalMap::automorphism(lambda, u);
  const LinearFractionalMap psi = inverse(phi);
  VerificationReport r;
  r.check = "heller-b";
  r.truncations = {M, 2 * M};
  r.params = {{"lambda", complex_json(lambda)}, {"u", complex_json(u)}, {"t", t}, {"ell", ell},
              {"ratio_limit", opts.ratio_limit}};
  const double mismatch = projective_distance(krein_adjoint(phi), psi);
  r.residuals["sigma_inverse_mismatch"] = mismatch;

  auto build = [&](std::size_t order, std::size_t inner) {
    const WeightSequence w = power_law_weights(t, ell, inner);
    const TruncatedSeries G = real_power(TruncatedSeries::linear(1.0, -std::conj(lambda * u), inner), gamma);
    const TruncatedSeries Hinv = real_power(TruncatedSeries::linear(1.0, std::conj(u), inner), -gamma);
    const OperatorMatrix adj = adjoint_matrix(composition_matrix(phi, w, order, inner));
    const OperatorMatrix MgAdj = adjoint_matrix(multiplication_matrix(G, w, inner));
    const OperatorMatrix tail =
        matrix_product(composition_matrix(psi, w, inner), multiplication_matrix(Hinv, w, inner, order));
    return matrix_difference(adj, matrix_product(MgAdj, tail));
  };
  const DecayRun at_m = decay_run(build, M, inner_order(phi, M, opts.pad), opts.ratio_limit);
  const DecayRun at_2m = decay_run(build, 2 * M, inner_order(phi, 2 * M, opts.pad), opts.ratio_limit);
  record_decay(r, at_m, at_2m);
  r.pass = mismatch <= 1e-12 && decay_pass(at_m, at_2m);
  return r;
}

}  // namespace lfc
