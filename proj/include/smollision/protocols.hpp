// Randomness-extraction and decoupling benches. Left-hand sides are exact
// expected distances over enumerable hash families or unitary ensembles
// (Monte-Carlo with reported standard error where enumeration is out of
// reach); right-hand sides are the corresponding achievability and converse
// bounds evaluated through the divergence/SDP layer. Every check is emitted
// as a BoundReport so the CLI and the test suite consume one format.

#pragma once

#include "smollision/hashing.hpp"
#include "smollision/sdp_programs.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smollision {

struct BoundReport {
    std::string name;        // instance label, unique within a run
    std::string provenance;  // which executable bound produced the numbers
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;      // rhs - lhs
    // Analytic inequalities use a -1e-7 slack floor; bounds whose sides come
    // out of the SDP solver use -1e-6.
    double pass_floor = 1e-7;
    bool pass = false;
    // Monte-Carlo LHS only; a noisy estimate never passes on the mean alone,
    // it must clear lhs + 3*std_error <= rhs.
    std::optional<double> std_error;
    std::map<std::string, double> params;
};

BoundReport make_report(std::string name, std::string provenance, double lhs, double rhs,
                        double pass_floor, std::map<std::string, double> params,
                        std::optional<double> std_error = std::nullopt);

// CSV emission, one report per row; doubles round-trip losslessly.
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& r);

enum class EnsembleKind { clifford_1q_exact, haar_sample };

// Materialized unitary ensemble with uniform weights. The one-qubit Clifford
// ensemble has exactly 24 members (group closure of H and S modulo phase) and
// averages degree-2 polynomials exactly like the Haar measure.
struct UnitaryEnsemble {
    EnsembleKind kind;
    int dim = 0;
    std::uint64_t seed = 0;  // haar_sample provenance
    std::vector<Matrix> members;
};

UnitaryEnsemble clifford_1q_ensemble();
UnitaryEnsemble haar_ensemble(int dim, int samples, std::uint64_t seed);

// E_f || rho^f_ZE - I_Z/|Z| (x) rho_E ||_+ summed exactly over the family.
double lhs_expected_distance(const CQState& rho, const HashFamily& fam);

// (1/2) sqrt(|Z|-1) * sqrt(sum_x ||R_{E,x}||^2_{B,sigma_E}) for a weighted
// Hermitian block list; +infinity when any block leaves the range of the
// sigma_E Lyapunov map.
double leftover_bound_bures(const std::vector<HermitianOperator>& weighted_blocks,
                            const HermitianOperator& sigma_e, int zdim);

// Expected hashed distance vs eps + (1/2) sqrt((|Z|-1) Q2^{eps,M}) with the
// collision term solved against the explicit reference sigma_E. The family
// must be 2-universal for the bound to apply.
BoundReport achievability_bound_smooth(const CQState& rho, const HermitianOperator& sigma_e,
                                       double eps, const HashFamily& fam,
                                       const sdp::SdpOptions& opts = {});

// Expected hashed distance vs (3/2) exp(-((alpha-1)/alpha)(H_alpha^up - log|Z|)).
// alpha = 2 evaluates the conditional entropy exactly through the measured
// collision SDP; alpha < 2 substitutes the sandwiched entropy, which only
// weakens the right-hand side (provenance records which form ran).
BoundReport renyi_achievability_bound(const CQState& rho, double alpha,
                                      const HashFamily& fam,
                                      const sdp::SdpOptions& opts = {});

struct ExtractableRandomness {
    double ell_nats = 0.0;          // max log |Z| whose best function meets eps
    int best_zdim = 1;
    std::vector<int> best_table;    // argmin function for best_zdim
    // distance of the best function for every candidate |Z|, ascending |Z|
    std::vector<std::pair<int, double>> per_zdim;
};

// Brute force over all functions X -> Z. Candidate |Z| run past |X| until
// the unavoidable empty-cell distance 1 - |X|/|Z| exceeds eps (hashed mass
// occupies at most |X| of the |Z| cells), capped at 2^20 functions; |X| <= 8.
ExtractableRandomness extractable_randomness_exhaustive(const CQState& rho, double eps);

// ell_eps vs both converse right-hand sides: measured smoothing at level
// k*eps plus log(k/(k-1)), and purified smoothing at level sqrt(eps) plus
// log 1/(1-eps). rhs is the tighter of the two; params carry both.
BoundReport converse_bound(const CQState& rho, double eps, double k);

struct TwirlResult {
    HermitianOperator average;   // ensemble average of U (x) U conjugation
    HermitianOperator analytic;  // I (x) alpha + F (x) beta
    HermitianOperator alpha;     // on the spectator factor
    HermitianOperator beta;
};

// Average of (U^dag (x) U^dag (x) I) K (U (x) U (x) I) over the ensemble for
// K on A (x) A' (x) S with |A| = |A'| = dim_a and a spectator factor of
// dimension dim_s (1 when absent), against the closed-form pair
//   alpha = (Tr_AA' K - Tr_AA'[F K]/|A|) / (|A|^2 - 1),
//   beta  = (|A| Tr_AA'[F K] - Tr_AA' K) / (|A| (|A|^2 - 1)).
TwirlResult twirl_average(const HermitianOperator& k, int dim_a, int dim_s,
                          const UnitaryEnsemble& ens);

// Ensemble-average decoupling distance of A1 after discarding A2 vs
// eps + (1/2) sqrt(|A1|/|A2| * Q2^{eps,M}(rho_AE || I_A (x) sigma_E)), plus
// the exact second-moment identity
//   E_U ||Tr_A2 U(Z) ||^2_{B,I(x)sigma_E} =
//     |A2|(|A1|^2-1)/(|A|^2-1) * ||Z||^2_{B,I(x)sigma_E},  Z = rho - pi_A (x) rho_E,
// recorded in params (exact for the Clifford ensemble, 3-sigma for Haar).
BoundReport decoupling_bench(const HermitianOperator& rho_ae, int dim_a, int dim_e,
                             int dim_a1, int dim_a2, const HermitianOperator& sigma_e,
                             double eps, const UnitaryEnsemble& ens,
                             const sdp::SdpOptions& opts = {});

struct HarnessGrid {
    int instances = 100;
    std::vector<int> dims = {2, 3, 4};
    std::vector<double> eps_list = {0.05, 0.2, 0.5, 0.75};
    std::vector<double> alphas = {1.25, 1.5, 2.0};
    // Free parameters are derived per instance: mu = mu_fraction * eps and
    // delta = delta_fraction * min(eps, 1 - eps), keeping both in range.
    double mu_fraction = 0.5;
    double delta_fraction = 0.5;
};

// One report per (inequality, instance) over seeded random states: the
// divergence order chains, the collision/max-divergence extrapolation at each
// alpha, the Bures-dominates-trace-norm bound, the three smoothing
// conversions, conditional-entropy sandwich consistency, the purified
// achievability floor vs exhaustive extraction, the self-smoothing equality
// D2^{eps,M}(rho||rho) = 2 log(1-eps), and finiteness classification on
// rank-deficient references. Failures are recorded, never thrown.
std::vector<BoundReport> inequality_harness(std::uint64_t seed,
                                            const HarnessGrid& grid = {});

struct IidTrendRow {
    int n;
    double hmin_nats;       // measured-smoothed min-entropy of the n-fold state
    double reference_nats;  // n H + sqrt(n V) Phi^{-1}(eps)
};

// Tensor-power trend of the conditional min-entropy against the second-order
// reference curve; blockwise hockey-stick bisection keeps n <= 6 tractable.
// Reporting only -- no pass/fail is attached to the asymptotics.
std::vector<IidTrendRow> iid_trend_report(const CQState& rho, double eps, int n_max);

std::string iid_trend_csv(const std::vector<IidTrendRow>& rows, double eps);

// Inverse standard normal CDF (rational initializer polished by one Halley
// step on erfc); |error| < 1e-13 over (0,1).
double inverse_normal_cdf(double p);

}  // namespace smollision
