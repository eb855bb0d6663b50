// Inequality harness: every ordering and smoothing-conversion claim the
// library exposes, instantiated over a seeded grid of random states. Each
// check lands in one BoundReport; failures are recorded, never thrown, so a
// full run always yields the complete scoreboard.

#include "smollision/protocols.hpp"
#include "smollision/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace smollision {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_norm_of(const HermitianOperator& x) {
    return eig_hermitian(x).values.cwiseAbs().sum();
}

std::string alpha_tag(double alpha) {
    // 1.25 -> "125"; keeps report names free of dots.
    return std::to_string(static_cast<int>(std::lround(alpha * 100.0)));
}

// sigma with its smallest eigenvalue removed and the rest renormalized;
// mass receives the weight of rho caught in the new kernel.
HermitianOperator drop_smallest_eigenvalue(const HermitianOperator& sigma,
                                           const HermitianOperator& rho, double* mass) {
    const Spectrum es = eig_hermitian(sigma);
    const int d = sigma.dim();
    Matrix rebuilt = Matrix::Zero(d, d);
    double tr = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        rebuilt += es.values(i) * es.vectors.col(i) * es.vectors.col(i).adjoint();
        tr += es.values(i);
    }
    const Eigen::VectorXcd kernel = es.vectors.col(d - 1);
    *mass = (kernel.adjoint() * rho.mat() * kernel).real().value();
    return HermitianOperator(rebuilt / tr);
}

}  // namespace

std::vector<BoundReport> inequality_harness(std::uint64_t seed, const HarnessGrid& grid) {
    std::vector<BoundReport> reports;
    for (int i = 0; i < grid.instances; ++i) {
        Prng sub = Prng::substream(seed, static_cast<std::uint64_t>(i));
        const std::uint64_t s1 = sub.next_u64();
        const std::uint64_t s2 = sub.next_u64();
        const std::uint64_t s3 = sub.next_u64();
        const std::uint64_t s4 = sub.next_u64();
        const int d = grid.dims[i % grid.dims.size()];
        const double eps =
            grid.eps_list[(i / grid.dims.size()) % grid.eps_list.size()];
        const double mu = grid.mu_fraction * eps;
        const double delta = grid.delta_fraction * std::min(eps, 1.0 - eps);
        const std::string tag = "i" + std::to_string(i);
        std::map<std::string, double> base{{"seed", static_cast<double>(seed)},
                                           {"instance", static_cast<double>(i)},
                                           {"dim", static_cast<double>(d)},
                                           {"eps", eps},
                                           {"mu", mu},
                                           {"delta", delta}};

        const HermitianOperator rho = sample_density(d, s1);
        const HermitianOperator sigma = sample_density(d, s2);
        const CQState cq = sample_cq(d, 2, s3);
        const HermitianOperator hvar = sample_hermitian(d, s4);

        const double d2 =
            d2_smooth_measured_sdp(rho, sigma, eps, SdpSide::dual).value.nats;
        const double dmax_eps = dmax_smooth_measured(rho, sigma, eps).nats;
        const double dmax_epsdelta =
            dmax_smooth_measured(rho, sigma, eps + delta).nats;
        const double dmax_p = dmax_purified_sdp(rho, sigma, std::sqrt(eps)).nats;

        reports.push_back(make_report(
            tag + "-bounds1-link1", "order-chain-upper", d2,
            dmax_eps - std::log(1.0 / (1.0 - eps)), 1e-6, base));
        reports.push_back(make_report(
            tag + "-bounds1-link2", "order-chain-upper",
            dmax_eps - std::log(1.0 / (1.0 - eps)),
            dh_threshold(rho, sigma, 1.0 - eps).nats -
                std::log(1.0 / (eps * (1.0 - eps) * (1.0 - eps))),
            1e-7, base));
        reports.push_back(make_report(
            tag + "-bounds2", "order-chain-lower",
            dh_threshold(rho, sigma, 1.0 - eps - delta).nats -
                std::log(1.0 / (delta * delta)),
            d2, 1e-6, base));
        reports.push_back(make_report(
            tag + "-bounds3", "order-chain-lower",
            dmax_epsdelta - std::log((1.0 - delta) / delta), d2, 1e-6, base));

        for (double alpha : grid.alphas) {
            const bool measured = alpha == 2.0;
            const double d_alpha =
                measured ? measured_collision(rho, sigma)
                         : quantum_renyi(rho, sigma, alpha, RenyiFamily::sandwiched);
            const std::string prov = measured ? "exponent-interpolation-measured"
                                              : "exponent-interpolation-sandwiched";
            auto params = base;
            params["alpha"] = alpha;
            reports.push_back(make_report(
                tag + "-exponent-a" + alpha_tag(alpha) + "-interp", prov, d2,
                (alpha - 1.0) * d_alpha + (2.0 - alpha) * dmax_eps, 1e-6, params));
            reports.push_back(make_report(
                tag + "-exponent-a" + alpha_tag(alpha) + "-eps", prov, d2,
                d_alpha + (2.0 - alpha) / (alpha - 1.0) * std::log(1.0 / eps) -
                    (2.0 - alpha) * std::log(1.0 / (1.0 - eps)),
                1e-6, params));
        }

        reports.push_back(make_report(
            tag + "-variance-bures", "trace-norm-vs-bures", trace_norm_of(hvar),
            std::sqrt(bures_seminorm_sq(sigma, hvar)) * std::sqrt(sigma.trace()),
            1e-7, base));

        reports.push_back(make_report(tag + "-smoothing-trace", "smoothing-conversion",
                                      dmax_eps,
                                      dmax_trace_smoothed_sdp(rho, sigma, eps).nats,
                                      1e-6, base));
        reports.push_back(make_report(
            tag + "-smoothing-purified-lower", "smoothing-conversion", dmax_p,
            dmax_eps + std::log(1.0 / (1.0 - eps)), 1e-6, base));
        reports.push_back(make_report(
            tag + "-smoothing-purified-upper", "smoothing-conversion", dmax_epsdelta,
            dmax_p + std::log((eps + delta) * (1.0 - eps - delta) / delta), 1e-6,
            base));

        reports.push_back(make_report(
            tag + "-relax-ordering", "measured-vs-sandwiched",
            measured_collision(rho, sigma),
            quantum_renyi(rho, sigma, 2.0, RenyiFamily::sandwiched), 1e-7, base));
        reports.push_back(make_report(
            tag + "-relax-ordering-cq", "measured-vs-sandwiched",
            -conditional_entropy(cq, CondKind::d2_measured, CondVariant::down, 0.0),
            -conditional_entropy(cq, CondKind::sandwiched_alpha, CondVariant::down,
                                 0.0, 2.0),
            1e-7, base));

        const double h2_up =
            conditional_smooth_sdp(cq, CondProgram::h2_up, eps - mu).value.nats;
        const double achiev_floor = h2_up - std::log(1.0 / (4.0 * mu * mu));
        const double hmin_down =
            -dmax_smooth_measured_blocks(cq.p, cq.blocks, cq.reduced(), eps + delta)
                 .nats;
        reports.push_back(make_report(
            tag + "-sandwich-consistency", "achievability-vs-converse", achiev_floor,
            hmin_down + std::log((eps + delta) / delta), 1e-6, base));

        const double ell = extractable_randomness_exhaustive(cq, eps).ell_nats;
        reports.push_back(make_report(tag + "-achievability-entropy-floor",
                                      "extraction-floor", achiev_floor, ell, 1e-6,
                                      base));
        const double hmin_p_up =
            -hmin_purified_sdp(cq, std::sqrt(eps - mu), CondVariant::up).nats;
        reports.push_back(make_report(
            tag + "-achievability-purified-floor", "extraction-floor",
            hmin_p_up - std::log(1.0 / (4.0 * mu * mu * mu)), ell, 1e-6, base));

        {
            BoundReport r = make_report(
                tag + "-self-smoothing-equality", "self-smoothing",
                d2_smooth_measured_sdp(rho, rho, eps, SdpSide::dual).value.nats,
                2.0 * std::log(1.0 - eps), 1e-7, base);
            r.pass = std::abs(r.slack) <= r.pass_floor;
            reports.push_back(std::move(r));
        }
        {
            double mass = 0.0;
            const HermitianOperator sigma_def =
                drop_smallest_eigenvalue(sigma, rho, &mass);
            // The sup-side program keeps an interior when sigma is singular
            // (the reference only enters the objective there).
            const double val =
                d2_smooth_measured_sdp(rho, sigma_def, eps, SdpSide::primal).value.nats;
            auto params = base;
            params["kernel_mass"] = mass;
            params["value_nats"] = val;
            BoundReport r = make_report(tag + "-finiteness-classification",
                                        "support-gate", mass, eps, 1e-12, params);
            r.pass = (mass <= eps + 1e-12) == std::isfinite(val);
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

}  // namespace smollision
