// One-shot divergences. Everything returns natural-log values; +infinity
// encodes divergence. Smoothing parameters are trace-distance balls unless a
// function name says purified.

#pragma once

#include "smollision/states.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace smollision {

struct DivergenceValue {
    double nats = 0.0;
    // Optional re-evaluable certificates, populated per producer:
    //   gamma      threshold for hockey-stick based smoothing
    //   op_cert    test operator M (hypothesis testing) or optimizer W / R
    //   dist_cert  smoothed distribution p' (classical collision)
    std::optional<double> gamma;
    std::optional<HermitianOperator> op_cert;
    std::optional<std::vector<double>> dist_cert;
};

// Classical Renyi divergence of order alpha >= 0 (alpha = 1 is KL,
// alpha = infinity is max-divergence). q need not be normalized.
double renyi_classical(const std::vector<double>& p, const std::vector<double>& q,
                       double alpha);

enum class RenyiFamily { petz, sandwiched };

// Petz or sandwiched quantum Renyi divergence; alpha = 1 gives the relative
// entropy for both, alpha = infinity gives dmax for the sandwiched family.
double quantum_renyi(const HermitianOperator& rho, const HermitianOperator& sigma,
                     double alpha, RenyiFamily family);

struct EntropyVariance {
    double relative_entropy;
    double variance;
};
EntropyVariance relative_entropy_and_variance(const HermitianOperator& rho,
                                              const HermitianOperator& sigma);

// log min{lambda : a <= lambda * b}; +infinity when a has weight outside the
// support of b.
double dmax(const HermitianOperator& a, const HermitianOperator& b);

// E_gamma(rho||sigma) = Tr(rho - gamma sigma)_+.
double hockey_stick(const HermitianOperator& rho, const HermitianOperator& sigma,
                    double gamma);

// log of the smallest gamma with E_gamma(rho||sigma) <= eps, found by
// bisection to relative precision 1e-10 in gamma. The certificate gamma is
// the feasible endpoint. +infinity if no gamma <= 1e12 works.
DivergenceValue dmax_smooth_measured(const HermitianOperator& rho,
                                     const HermitianOperator& sigma, double eps);

// Hypothesis-testing divergence -log min{Tr M sigma : 0 <= M <= I,
// Tr M rho >= 1 - eps} via the Neyman-Pearson threshold family; the returned
// test M satisfies Tr M rho = 1 - eps with ties split uniformly over the
// crossing eigenspace.
DivergenceValue dh_threshold(const HermitianOperator& rho,
                             const HermitianOperator& sigma, double eps);

// Classical smoothed collision divergence: D_2(p'||q) with
// p' = min(p, gamma q) and gamma solving sum (p - gamma q)_+ = eps.
DivergenceValue classical_smooth_collision(const std::vector<double>& p,
                                           const std::vector<double>& q, double eps);

// Unsmoothed measured collision divergence log Tr[rho J_sigma^{-1}(rho)];
// +infinity when rho is not supported on supp(sigma).
double measured_collision(const HermitianOperator& rho, const HermitianOperator& sigma);

// Best projective-measurement lower bound on the measured Renyi divergence
// found by a seeded basis search with `budget` refinement steps.
struct MeasuredLowerBound {
    double nats;
    Matrix basis;  // measurement basis attaining the bound (columns)
};
MeasuredLowerBound measured_renyi_lower_bound(const HermitianOperator& rho,
                                              const HermitianOperator& sigma,
                                              double alpha, int budget,
                                              std::uint64_t seed);

enum class CondKind {
    dmax,
    dmax_smooth_measured,
    d2_measured,
    d2_smooth_measured,
    h2_classicalized,
    sandwiched_alpha,
    petz_alpha,
};

enum class CondVariant { down, up };  // down: sigma_E = rho_E; up: inf over sigma_E

// Conditional entropy H(X|E) = -D(rho_XE || I_X (x) sigma_E) for the selected
// divergence. alpha is only read by the *_alpha kinds. Implemented in the SDP
// program layer because the smoothed kinds solve semidefinite programs.
double conditional_entropy(const CQState& rho, CondKind kind, CondVariant variant,
                           double eps, double alpha = 2.0);

// Hockey-stick bisection specialized to CQ block structure; used for
// conditional dmax smoothing and iid tensor powers where only the blocks are
// materialized. sigma_e plays the role of sigma in each block.
DivergenceValue dmax_smooth_measured_blocks(const std::vector<double>& p,
                                            const std::vector<HermitianOperator>& blocks,
                                            const HermitianOperator& sigma_e,
                                            double eps);

}  // namespace smollision
