#pragma once

#include <array>
#include <span>
#include <vector>

#include "m5x/model.hpp"

namespace m5x {

// ---------------------------------------------------------------------------
// Closed forms for the model's extreme-value structure. All (l,k) products
// are taken as compensated sums of logarithms.
// ---------------------------------------------------------------------------

// Copula of the stationary distribution F_Y:
//   C_Y(u) = prod_{l,k} C_Z(u_1^{alpha_{l,k,1}}, ..., u_d^{alpha_{l,k,d}}).
// Evaluated through C_Z in u-space; copula_hat below takes the log-space
// route, so the two give independent evaluations of the same function
// whenever C_Z is its own attractor.
double copula_y(const M5Model& m, std::span<const double> u);

// Attractor of C_Y: same product with C* in place of C_Z.
double copula_hat(const M5Model& m, std::span<const double> u);

// gamma(tau) = lim P(M_{n,1} <= n/tau_1, ..., M_{n,d} <= n/tau_d)
//            = prod_l C*(e^{-max_k alpha_{l,k,1} tau_1}, ...).
double limit_block_maxima(const M5Model& m, std::span<const double> tau);

// gamma_hat(tau) = same limit for the associated iid sequence
//                = prod_{l,k} C*(e^{-alpha_{l,k,1} tau_1}, ...).
double gamma_hat(const M5Model& m, std::span<const double> tau);

// Multivariate extremal index
//   theta(tau) = log gamma(tau) / log gamma_hat(tau),
// the ratio of the two log-sums above. Requires tau > 0; always in (0,1].
double extremal_index(const M5Model& m, std::span<const double> tau);

// theta_j = sum_l max_k alpha_{l,k,j}, the extremal index of component j;
// also the limit of extremal_index as every other tau coordinate -> 0+.
double marginal_extremal_index(const M5Model& m, int j);

// Copula C of the limiting MEV law of dependent block maxima:
//   C(u) = Chat(u_1^{1/theta_1}, ...)^{theta(-log u_1/theta_1, ...)}.
double copula_limit(const M5Model& m, std::span<const double> u);

// Upper tail dependence of the pair (j, j2) under Chat (equivalently under
// C_Y): lambda_hat = 2 + sum_{l,k} log C*_{j,j2}(e^{-alpha_{l,k,j}}, e^{-alpha_{l,k,j2}}).
double tail_dependence_hat(const M5Model& m, int j, int j2);

// Same coefficient under the dependent-maxima copula C:
//   lambda_c = 2 + theta(1/theta_j, 1/theta_j2)
//                * sum_{l,k} log C*_{j,j2}(e^{-alpha_{l,k,j}/theta_j}, e^{-alpha_{l,k,j2}/theta_j2}),
// with theta the bivariate extremal index of the (j, j2) sub-process.
double tail_dependence_c(const M5Model& m, int j, int j2);

struct IdentityPair {
    double lhs;
    double rhs;
};

// The two cross-identities tying lambda_c to evaluations of Chat, each side
// computed by an independent code path:
//   [0]  lambda_c  vs  2 + theta* log Chat_{j,j2}(e^{-1/theta_j}, e^{-1/theta_j2})
//   [1]  lambda_c  vs  lambda_hat
//                      + log [ Chat_{j,j2}(e^{-theta*/theta_j}, e^{-theta*/theta_j2})
//                            / Chat_{j,j2}(e^{-1}, e^{-1}) ]
// where theta* = theta(1/theta_j, 1/theta_j2) and the right-hand sides go
// through copula_hat on the full model with the remaining coordinates at 1.
std::array<IdentityPair, 2> tail_dependence_relation(const M5Model& m, int j, int j2);

enum class ExtremalCoefficient { hat, limiting };

// eps with X(u,...,u) = u^eps for X = Chat or C:
//   eps_hat = -log Chat(e^{-1}, ..., e^{-1})
//   eps_c   = -theta(1/theta_1, ..., 1/theta_d) log Chat(e^{-1/theta_1}, ...).
double extremal_coefficient(const M5Model& m, ExtremalCoefficient which);

// |c^n(u^{1/n}) - c(u)| for each n: the domain-of-attraction map applied to a
// max-stable copula returns it unchanged, so the deviations document the
// attractor hypothesis numerically.
std::vector<double> converge_to_attractor(const Copula& c, std::span<const double> u,
                                          std::span<const int> n_list);

// ---------------------------------------------------------------------------
// Everything above for one model, bundled for reporting. theta/gamma values
// are taken at the given tau.
// ---------------------------------------------------------------------------
struct TheorySummary {
    int d = 0;
    std::vector<double> tau;
    double theta_tau = 0.0;
    std::vector<double> theta_j;
    std::vector<double> lambda_hat;  // d x d row-major, unit diagonal
    std::vector<double> lambda_c;
    double eps_hat = 0.0;
    double eps_c = 0.0;
    double gamma_hat_value = 0.0;
    double gamma_value = 0.0;

    double lam_hat(int j, int j2) const { return lambda_hat[idx(j, j2)]; }
    double lam_c(int j, int j2) const { return lambda_c[idx(j, j2)]; }

private:
    std::size_t idx(int j, int j2) const {
        return static_cast<std::size_t>(j - 1) * d + (j2 - 1);
    }
};

TheorySummary summarize(const M5Model& m, std::span<const double> tau);

// ---------------------------------------------------------------------------
// Specialized forms of the same quantities for particular attractors,
// written as direct transcriptions of the per-family algebra. They exist to
// cross-check the generic evaluators above along an independent path.
// ---------------------------------------------------------------------------
namespace closed_form {

// Comonotone attractor (min copula).
double limit_min(const SignatureArray& sig, std::span<const double> tau);
double theta_min(const SignatureArray& sig, std::span<const double> tau);
double lambda_hat_min(const SignatureArray& sig, int j, int j2);
double lambda_c_min(const SignatureArray& sig, int j, int j2);
// Positive exactly when lambda_c > lambda_hat under the comonotone attractor:
//   sum_{l,k} max(alpha_j, alpha_j2) - sum_l max(m_{l,j}/theta_j, m_{l,j2}/theta_j2).
double lambda_gap_min(const SignatureArray& sig, int j, int j2);

// Independence attractor (product copula).
double limit_product(const SignatureArray& sig, std::span<const double> tau);
double theta_product(const SignatureArray& sig, std::span<const double> tau);

// Logistic attractor with dependence parameter alpha.
double theta_logistic(const SignatureArray& sig, std::span<const double> tau, double alpha);

}  // namespace closed_form

}  // namespace m5x
