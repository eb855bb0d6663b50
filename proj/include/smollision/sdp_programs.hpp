// Semidefinite programs for the smoothed collision and max divergences, their
// conditional-entropy variants on CQ block structure, hypothesis testing,
// guessing probability, and the purified/trace smoothings. Formulations are
// standard equality form over Hermitian PSD blocks plus an orthant; solve
// wrappers extract re-evaluable certificates.

#pragma once

#include "smollision/divergences.hpp"
#include "smollision/sdp.hpp"
#include "smollision/states.hpp"

namespace smollision {

// primal: the expectation-side program over (B, C, t) with the Schur block
// (C B; B I) >= 0. dual: the smoothing-side program over (Z, T) with the
// Schur block (sigma Z; Z^dag T) >= 0 and R = Herm(Z).
enum class SdpSide { primal, dual };

enum class CondProgram { h2_up, h2_down, hmin_up, hmin_down };

sdp::SdpProblem formulate_d2_smooth(const HermitianOperator& rho,
                                    const HermitianOperator& sigma, double eps,
                                    SdpSide side);
sdp::SdpProblem formulate_dmax_smooth(const HermitianOperator& rho,
                                      const HermitianOperator& sigma, double eps,
                                      SdpSide side);
// Blockwise programs exploiting CQ structure: |X| Schur blocks of size 2 d_E.
// The up variants embed the sigma_E optimization (epigraph on ||sum C_x||_inf
// for h2, trace objective for hmin).
sdp::SdpProblem formulate_conditional_smooth(const CQState& rho, CondProgram which,
                                             double eps);

struct SolvedSdp {
    DivergenceValue value;   // nats; op_cert holds W / R / M / S per program
    sdp::SdpStatus status = sdp::SdpStatus::optimal;
    double primal_objective = 0.0;  // in the program's own orientation
    double dual_objective = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

// D2^{eps,M}(rho||sigma). Certificate: primal side W (0 <= W <= I, value
// re-evaluates as (Tr W rho - eps)_+^2 / Tr W^2 sigma); dual side R = Herm(Z)
// (R <= rho, Tr(rho - R) <= eps, value = Bures seminorm squared). +infinity
// when Tr Pi_sigma^perp rho > eps; the dual-side program is then infeasible.
SolvedSdp d2_smooth_measured_sdp(const HermitianOperator& rho,
                                 const HermitianOperator& sigma, double eps,
                                 SdpSide side, const sdp::SdpOptions& opts = {});

// Dmax^{eps,M}(rho||sigma) as an SDP; cross-checks the hockey-stick bisection.
SolvedSdp dmax_smooth_measured_sdp(const HermitianOperator& rho,
                                   const HermitianOperator& sigma, double eps,
                                   SdpSide side, const sdp::SdpOptions& opts = {});

// D_H^eps by direct transcription: min Tr M sigma, 0 <= M <= I,
// Tr M rho >= 1 - eps. Certificate M.
SolvedSdp dh_sdp(const HermitianOperator& rho, const HermitianOperator& sigma,
                 double eps, const sdp::SdpOptions& opts = {});

// Conditional entropies; value.nats is H (entropy orientation, in nats).
SolvedSdp conditional_smooth_sdp(const CQState& rho, CondProgram which, double eps,
                                 const sdp::SdpOptions& opts = {});

// D2^{eps,M}(rho_XE || I_X (x) sigma_e) for an explicit reference on E,
// solved blockwise. value.nats is the divergence (not an entropy).
SolvedSdp d2_smooth_blocks_sdp(const CQState& rho, const HermitianOperator& sigma_e,
                               double eps, const sdp::SdpOptions& opts = {});

// sup over sub-POVMs with M_x <= t I of sum_x p_x Tr M_x rho_x.
double guessing_probability_t(const CQState& rho, double t);

// sup_{t in [0,1]} [guessing_probability_t - eps t] over a 101-point grid with
// golden-section refinement around the best vertex; equals
// exp(-Hmin^{eps,M,up}) by duality with the hmin_up program.
double smoothed_guessing_sup(const CQState& rho, double eps);

// Dmax^{eps,P}(rho||sigma): smoothing over subnormalized rho' with purified
// distance <= eps, encoded by the fidelity Schur block (rho Z; Z^dag rho')
// with Re Tr Z >= sqrt(1 - eps^2).
DivergenceValue dmax_purified_sdp(const HermitianOperator& rho,
                                  const HermitianOperator& sigma, double eps);

// Dmax^{eps,P}(rho_XE || I_X (x) sigma_E), blockwise; variant down fixes
// sigma_E = rho_E, variant up optimizes it. Returns the divergence value;
// Hmin^{eps,P} is its negative.
DivergenceValue hmin_purified_sdp(const CQState& rho, double eps,
                                  CondVariant variant);

// Dmax^{eps,T}(rho||sigma): smoothing over subnormalized rho' within
// generalized trace distance eps (rho - rho' = P - N with
// (Tr P + Tr N)/2 + |Tr P - Tr N|/2 <= eps).
DivergenceValue dmax_trace_smoothed_sdp(const HermitianOperator& rho,
                                        const HermitianOperator& sigma, double eps);

}  // namespace smollision
