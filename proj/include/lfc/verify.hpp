#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>

#include "lfc/maps.hpp"
#include "lfc/operators.hpp"
#include "lfc/report.hpp"
#include "lfc/series.hpp"
#include "lfc/weights.hpp"

namespace lfc {

// Default gates. Every report records the ones it used.
inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kRankRelTol = 1e-8;
inline constexpr double kDecayRatio = 0.5;
inline constexpr double kConvergenceSlack = 1.05;
inline constexpr double kRoundoffFloor = 1e-13;
inline constexpr std::size_t kDefaultPad = 4;

/// Symbols g = (-conj(b) z + conj(d))^(-alpha-2), h = (c z + d)^(alpha+2).
struct AlphaMode {
  double alpha;
};
/// Symbols g = (-conj(b) z + conj(d))^(2t-1), h = (c z + d)^(-2t+1).
struct PowerMode {
  double t;
};
using SymbolMode = std::variant<AlphaMode, PowerMode>;

struct CowenSymbols {
  LinearFractionalMap sigma;
  TruncatedSeries g;
  TruncatedSeries h;
  complex branch_factor;  // unimodular; folded into g
  double gamma_g;
  double gamma_h;
};

/// sigma is the Krein adjoint; g and h use principal powers (integer
/// exponents use plain powers), and g is rescaled so that g(0) conj(h(0)) = 1,
/// which is the factorization identity at z = w = 0.
/// Throws DomainError("branch cut") if d lies on the negative real axis and
/// an exponent is not an integer.
CowenSymbols cowen_symbols(const LinearFractionalMap& phi, SymbolMode mode, std::size_t order);

/// D = C_phi* - M_g C_sigma M_h* as an (M+1) x (M+1) section.
OperatorMatrix cowen_difference(const LinearFractionalMap& phi, const WeightSequence& w, SymbolMode mode,
                                std::size_t order);

/// Rows 0..max_row, columns 0..max_col (max_row >= max_col). Extra rows hold
/// the part of D e_n that leaves the first max_col+1 monomials.
OperatorMatrix cowen_difference(const LinearFractionalMap& phi, const WeightSequence& w, SymbolMode mode,
                                std::size_t max_row, std::size_t max_col);

/// 0 for alpha+2 > 0, 2(N+1) for type B, 4(N+1) for type C: the number of
/// rank-one terms in the kernel expansion of D.
std::size_t rank_bound(double alpha);

/// r2 <= 1.05 r1, or r2 already at roundoff.
bool non_increasing(double at_m, double at_2m);

struct DecayGate {
  double head_max = 0.0;  // max p_n, n in [M/16, M/8]
  double tail_max = 0.0;  // max p_n, n in [3M/4, M]
  double ratio = 0.0;
  bool pass = false;      // ratio <= limit, or tail at roundoff
};
DecayGate decay_gate(std::span<const double> profile, std::size_t M, double ratio_limit = kDecayRatio);

/// Row extent for decay measurements: M when phi(0) = 0 (every factor is
/// triangular and the section is exact), pad * M otherwise.
std::size_t inner_order(const LinearFractionalMap& phi, std::size_t M, std::size_t pad);

struct DecayOptions {
  double ratio_limit = kDecayRatio;
  std::size_t pad = kDefaultPad;
};

/// alpha + 2 > 0: max |entry| of the leading k-block at M and 2M.
VerificationReport run_exact_identity(const LinearFractionalMap& phi, double alpha, std::size_t M, std::size_t k,
                                      double tol = kIdentityTol);

/// alpha + 2 <= 0: numerical rank of the leading M/2 block (and M block at
/// 2M) against rank_bound(alpha).
VerificationReport run_finite_rank(const LinearFractionalMap& phi, double alpha, std::size_t M,
                                   double rel_tol = kRankRelTol);

/// Power-mode difference on the given weights; decay gate on ||D e_n||.
VerificationReport run_compact_decay(const LinearFractionalMap& phi, const WeightFamily& weights, double t,
                                     std::size_t M, DecayOptions opts = {});

using OperatorRecipe = std::function<OperatorMatrix(const WeightSequence&, std::size_t order)>;
OperatorRecipe composition_recipe(const LinearFractionalMap& phi);

/// Diagonal K with K(z^n) = (rho^2 beta1(n)^2 / beta2(n)^2 - 1) z^n, and the
/// identity B2 (I + K) = (I + K) B1 for the adjoints of A in both spaces.
/// rho is the closed-form limit of beta2/beta1 when both regimes have known
/// asymptotes, else beta2(M)/beta1(M). Throws DomainError("weights not
/// equivalent") if the ratio is not Cauchy to 5% between M/2 and M.
VerificationReport run_perturbation(const WeightFamily& beta1, const WeightFamily& beta2, const OperatorRecipe& A,
                                    std::size_t M, std::size_t k, double tol = kIdentityTol);

/// phi(0) = 0: D = C_phi* - M_G* C_sigma with G = (1 - (c/a) z)^(2t-1), plus
/// the identity (d/(cz+d))^(2t-1) = G o phi.
VerificationReport run_heller_a(const LinearFractionalMap& phi, double t, std::size_t M, double ell = 1.0,
                                DecayOptions opts = {});

/// phi = lambda (z + u)/(1 + conj(u) z): D = C_phi* - M_G* C_{phi^-1} M_{1/H}
/// with G = (1 - conj(lambda u) z)^(2t-1), H = (1 + conj(u) z)^(2t-1).
VerificationReport run_heller_b(complex lambda, complex u, double t, std::size_t M, double ell = 1.0,
                                DecayOptions opts = {});

nlohmann::json map_json(const LinearFractionalMap& m);

}  // namespace lfc
