#include "smollision/protocols.hpp"

#include "smollision/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <utility>

namespace smollision {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_norm(const HermitianOperator& x) {
    return eig_hermitian(x).values.cwiseAbs().sum();
}

// plus-norm of a classical-quantum block-diagonal operator given its blocks.
double plus_norm_blocks(const std::vector<HermitianOperator>& blocks) {
    double tr = 0.0;
    double tn = 0.0;
    for (const auto& b : blocks) {
        tr += b.trace();
        tn += trace_norm(b);
    }
    return 0.5 * std::abs(tr) + 0.5 * tn;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BoundReport make_report(std::string name, std::string provenance, double lhs, double rhs,
                        double pass_floor, std::map<std::string, double> params,
                        std::optional<double> std_error) {
    BoundReport r;
    r.name = std::move(name);
    r.provenance = std::move(provenance);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.pass_floor = pass_floor;
    if (std_error.has_value()) {
        // Noisy estimate: require three standard errors of clearance.
        r.pass = lhs + 3.0 * *std_error <= rhs + pass_floor;
    } else {
        r.pass = r.slack >= -pass_floor || (std::isinf(rhs) && rhs > 0.0);
    }
    r.std_error = std_error;
    r.params = std::move(params);
    return r;
}

std::string bound_report_csv_header() {
    return "# smollision-v1\nname,provenance,lhs,rhs,slack,std_error,pass,params";
}

std::string bound_report_csv_row(const BoundReport& r) {
    std::string row = r.name + "," + r.provenance + "," + format_double(r.lhs) + "," +
                      format_double(r.rhs) + "," + format_double(r.slack) + ",";
    if (r.std_error.has_value()) row += format_double(*r.std_error);
    row += ",";
    row += r.pass ? "1" : "0";
    row += ",";
    bool first = true;
    for (const auto& [k, v] : r.params) {
        if (!first) row += ";";
        first = false;
        row += k + "=" + format_double(v);
    }
    return row;
}

UnitaryEnsemble clifford_1q_ensemble() {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    Matrix h(2, 2), s(2, 2);
    h << inv_rt2, inv_rt2, inv_rt2, -inv_rt2;
    s << 1.0, 0.0, 0.0, Complex(0.0, 1.0);

    // Canonical representative modulo global phase: make the first entry of
    // nonnegligible magnitude real and positive.
    const auto canonical = [](Matrix u) {
        for (int i = 0; i < 4; ++i) {
            const Complex z = u(i / 2, i % 2);
            if (std::abs(z) > 1e-9) {
                u *= std::conj(z) / std::abs(z);
                break;
            }
        }
        return u;
    };
    const auto key = [](const Matrix& u) {
        std::array<long long, 8> k{};
        for (int i = 0; i < 4; ++i) {
            k[2 * i] = llround(u(i / 2, i % 2).real() * 1e9);
            k[2 * i + 1] = llround(u(i / 2, i % 2).imag() * 1e9);
        }
        return k;
    };

    std::set<std::array<long long, 8>> seen;
    std::vector<Matrix> members;
    std::queue<Matrix> frontier;
    const Matrix id = canonical(Matrix::Identity(2, 2));
    seen.insert(key(id));
    members.push_back(id);
    frontier.push(id);
    while (!frontier.empty()) {
        const Matrix u = frontier.front();
        frontier.pop();
        for (const Matrix& g : {h, s}) {
            const Matrix v = canonical(g * u);
            if (seen.insert(key(v)).second) {
                members.push_back(v);
                frontier.push(v);
            }
        }
    }
    if (members.size() != 24) {
        throw InvalidInput("clifford_1q_ensemble: closure has " +
                           std::to_string(members.size()) + " members, expected 24");
    }
    UnitaryEnsemble ens;
    ens.kind = EnsembleKind::clifford_1q_exact;
    ens.dim = 2;
    ens.members = std::move(members);
    return ens;
}

UnitaryEnsemble haar_ensemble(int dim, int samples, std::uint64_t seed) {
    if (dim < 1 || samples < 1) throw InvalidInput("haar_ensemble: bad dims");
    UnitaryEnsemble ens;
    ens.kind = EnsembleKind::haar_sample;
    ens.dim = dim;
    ens.seed = seed;
    ens.members.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        ens.members.push_back(
            sample_haar_unitary(dim, seed + 0x9e3779b97f4b7c15ULL * (i + 1)));
    }
    return ens;
}

double lhs_expected_distance(const CQState& rho, const HashFamily& fam) {
    const int nx = rho.classical_dim();
    if (fam.domain != nx) {
        throw InvalidInput("lhs_expected_distance: family domain mismatch");
    }
    std::vector<HermitianOperator> weighted;
    weighted.reserve(nx);
    for (int x = 0; x < nx; ++x) weighted.push_back(rho.weighted_block(x));
    const HermitianOperator rho_e = rho.reduced();
    const HermitianOperator target = rho_e * (1.0 / fam.range);

    double acc = 0.0;
    for (const auto& [f, w] : enumerate_family(fam)) {
        std::vector<HermitianOperator> diff = extraction_map(weighted, f);
        for (auto& b : diff) b = b + target * (-1.0);
        acc += w * plus_norm_blocks(diff);
    }
    return acc;
}

double leftover_bound_bures(const std::vector<HermitianOperator>& weighted_blocks,
                            const HermitianOperator& sigma_e, int zdim) {
    if (zdim < 1) throw InvalidInput("leftover_bound_bures: zdim < 1");
    double s = 0.0;
    for (const auto& b : weighted_blocks) {
        const double v = bures_seminorm_sq(sigma_e, b);
        if (std::isinf(v)) return kInf;
        s += v;
    }
    return 0.5 * std::sqrt(static_cast<double>(zdim - 1) * s);
}

BoundReport achievability_bound_smooth(const CQState& rho, const HermitianOperator& sigma_e,
                                       double eps, const HashFamily& fam,
                                       const sdp::SdpOptions& opts) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("achievability_bound_smooth: eps");
    const double lhs = lhs_expected_distance(rho, fam);
    const SolvedSdp sol = d2_smooth_blocks_sdp(rho, sigma_e, eps, opts);
    const double q2 = std::exp(sol.value.nats);
    const double rhs = eps + 0.5 * std::sqrt((fam.range - 1.0) * q2);
    std::map<std::string, double> params{
        {"eps", eps},
        {"zdim", static_cast<double>(fam.range)},
        {"xdim", static_cast<double>(rho.classical_dim())},
        {"edim", static_cast<double>(rho.quantum_dim())},
        {"family_kind", static_cast<double>(static_cast<int>(fam.kind))},
        {"family_members", static_cast<double>(fam.member_count)},
        {"q2", q2},
        {"sdp_gap", sol.gap},
    };
    return make_report("achievability", "achievability-smooth", lhs, rhs, 1e-6,
                       std::move(params));
}

BoundReport renyi_achievability_bound(const CQState& rho, double alpha,
                                      const HashFamily& fam,
                                      const sdp::SdpOptions& opts) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw InvalidInput("renyi_achievability_bound: alpha outside (1, 2]");
    }
    const double lhs = lhs_expected_distance(rho, fam);
    double h;
    std::string provenance;
    if (alpha == 2.0) {
        h = conditional_smooth_sdp(rho, CondProgram::h2_up, 0.0, opts).value.nats;
        provenance = "renyi-achievability-measured";
    } else {
        // No exact measured evaluator away from alpha = 2; the sandwiched
        // entropy is a lower bound on the measured one, so substituting it
        // only weakens (never invalidates) the claim under test.
        h = conditional_entropy(rho, CondKind::sandwiched_alpha, CondVariant::up, 0.0,
                                alpha);
        provenance = "renyi-achievability-sandwiched";
    }
    const double rhs =
        1.5 * std::exp(-((alpha - 1.0) / alpha) * (h - std::log(double(fam.range))));
    std::map<std::string, double> params{
        {"alpha", alpha},
        {"zdim", static_cast<double>(fam.range)},
        {"xdim", static_cast<double>(rho.classical_dim())},
        {"edim", static_cast<double>(rho.quantum_dim())},
        {"entropy_nats", h},
        {"family_members", static_cast<double>(fam.member_count)},
    };
    return make_report("renyi-achievability", provenance, lhs, rhs, 1e-6,
                       std::move(params));
}

ExtractableRandomness extractable_randomness_exhaustive(const CQState& rho, double eps) {
    const int nx = rho.classical_dim();
    if (nx > 8) throw TooLarge("extractable_randomness_exhaustive: |X| > 8");
    std::vector<HermitianOperator> weighted;
    weighted.reserve(nx);
    for (int x = 0; x < nx; ++x) weighted.push_back(rho.weighted_block(x));
    const HermitianOperator rho_e = rho.reduced();

    // |Z| may exceed |X| when eps is generous. Hashed mass occupies at most
    // |X| of the |Z| cells, so the distance is at least 1 - |X|/|Z|; once
    // that clears eps no function can pass and the search stops. The
    // enumeration budget |Z|^|X| <= 2^20 caps the range independently.
    int z_hi = nx;
    if (eps < 1.0) {
        z_hi = std::max(
            nx, static_cast<int>(std::floor(nx / (1.0 - eps) + 1e-9)));
    }
    for (int z = 2; z <= z_hi; ++z) {
        long double count = 1.0L;
        for (int i = 0; i < nx; ++i) count *= z;
        if (count > static_cast<long double>(1 << 20)) {
            z_hi = z - 1;
            break;
        }
    }

    ExtractableRandomness out;
    out.best_table.assign(nx, 0);
    out.per_zdim.push_back({1, 0.0});  // |Z| = 1 is uniform by construction
    for (int z = 2; z <= z_hi; ++z) {
        const Matrix target = rho_e.mat() / z;
        // Cells holding zero or one input dominate; precompute their norms.
        const double tn_empty = trace_norm(HermitianOperator(target));
        std::vector<double> tn_single(nx);
        for (int x = 0; x < nx; ++x) {
            tn_single[x] = trace_norm(HermitianOperator(weighted[x].mat() - target));
        }
        double best = kInf;
        std::vector<int> best_table;
        std::vector<int> table(nx, 0);
        std::vector<int> occupancy(z, 0);
        std::vector<int> lone(z, 0);
        while (true) {
            std::fill(occupancy.begin(), occupancy.end(), 0);
            for (int x = 0; x < nx; ++x) {
                if (++occupancy[table[x]] == 1) lone[table[x]] = x;
            }
            double tn = 0.0;
            for (int c = 0; c < z; ++c) {
                if (occupancy[c] == 0) {
                    tn += tn_empty;
                } else if (occupancy[c] == 1) {
                    tn += tn_single[lone[c]];
                } else {
                    Matrix m = -target;
                    for (int x = 0; x < nx; ++x) {
                        if (table[x] == c) m += weighted[x].mat();
                    }
                    tn += trace_norm(HermitianOperator(m));
                }
            }
            // The block-diagonal difference is traceless by construction
            // (the target is built from this state's own reduction).
            const double d = 0.5 * tn;
            if (d < best) {
                best = d;
                best_table = table;
            }
            int pos = 0;
            while (pos < nx && ++table[pos] == z) table[pos++] = 0;
            if (pos == nx) break;
        }
        out.per_zdim.push_back({z, best});
        if (best <= eps + 1e-12) {
            out.best_zdim = z;
            out.best_table = best_table;
            out.ell_nats = std::log(static_cast<double>(z));
        }
    }
    return out;
}

BoundReport converse_bound(const CQState& rho, double eps, double k) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("converse_bound: eps");
    if (!(k > 1.0 && k < 1.0 / eps)) throw InvalidInput("converse_bound: k outside (1, 1/eps)");
    const ExtractableRandomness ex = extractable_randomness_exhaustive(rho, eps);
    const double rhs_measured =
        -dmax_smooth_measured_blocks(rho.p, rho.blocks, rho.reduced(), k * eps).nats +
        std::log(k / (k - 1.0));
    const double rhs_purified =
        -hmin_purified_sdp(rho, std::sqrt(eps), CondVariant::down).nats +
        std::log(1.0 / (1.0 - eps));
    std::map<std::string, double> params{
        {"eps", eps},
        {"k", k},
        {"xdim", static_cast<double>(rho.classical_dim())},
        {"edim", static_cast<double>(rho.quantum_dim())},
        {"rhs_measured", rhs_measured},
        {"rhs_purified", rhs_purified},
        {"best_zdim", static_cast<double>(ex.best_zdim)},
    };
    return make_report("converse", "converse-extraction", ex.ell_nats,
                       std::min(rhs_measured, rhs_purified), 1e-6, std::move(params));
}

TwirlResult twirl_average(const HermitianOperator& k, int dim_a, int dim_s,
                          const UnitaryEnsemble& ens) {
    if (dim_a < 2 || dim_s < 1) throw InvalidInput("twirl_average: bad dims");
    if (ens.dim != dim_a) throw InvalidInput("twirl_average: ensemble dim mismatch");
    const int total = dim_a * dim_a * dim_s;
    if (k.dim() != total) throw InvalidInput("twirl_average: operator dim mismatch");
    const Matrix km = k.mat();
    const Matrix id_s = Matrix::Identity(dim_s, dim_s);

    Matrix avg = Matrix::Zero(total, total);
    for (const Matrix& u : ens.members) {
        const Matrix big = kron(kron(u, u), id_s);
        avg += big.adjoint() * km * big;
    }
    avg /= static_cast<double>(ens.members.size());

    // Partial traces over A (x) A', plain and swap-twisted.
    Matrix tr_k = Matrix::Zero(dim_s, dim_s);
    Matrix tr_fk = Matrix::Zero(dim_s, dim_s);
    for (int a = 0; a < dim_a; ++a) {
        for (int ap = 0; ap < dim_a; ++ap) {
            const int row = (a * dim_a + ap) * dim_s;
            const int row_swapped = (ap * dim_a + a) * dim_s;
            const int col = (a * dim_a + ap) * dim_s;
            tr_k += km.block(row, col, dim_s, dim_s);
            tr_fk += km.block(row_swapped, col, dim_s, dim_s);
        }
    }
    const double da = dim_a;
    const Matrix alpha_m = (tr_k - tr_fk / da) / (da * da - 1.0);
    const Matrix beta_m = (da * tr_fk - tr_k) / (da * (da * da - 1.0));

    Matrix swap = Matrix::Zero(dim_a * dim_a, dim_a * dim_a);
    for (int a = 0; a < dim_a; ++a) {
        for (int ap = 0; ap < dim_a; ++ap) swap(a * dim_a + ap, ap * dim_a + a) = 1.0;
    }
    const Matrix analytic =
        kron(Matrix::Identity(dim_a * dim_a, dim_a * dim_a), alpha_m) +
        kron(swap, beta_m);

    return TwirlResult{HermitianOperator(avg), HermitianOperator(analytic),
                       HermitianOperator(alpha_m), HermitianOperator(beta_m)};
}

BoundReport decoupling_bench(const HermitianOperator& rho_ae, int dim_a, int dim_e,
                             int dim_a1, int dim_a2, const HermitianOperator& sigma_e,
                             double eps, const UnitaryEnsemble& ens,
                             const sdp::SdpOptions& opts) {
    if (dim_a1 * dim_a2 != dim_a) throw InvalidInput("decoupling_bench: split mismatch");
    if (rho_ae.dim() != dim_a * dim_e) throw InvalidInput("decoupling_bench: state dim");
    if (sigma_e.dim() != dim_e) throw InvalidInput("decoupling_bench: sigma_e dim");
    if (ens.dim != dim_a) throw InvalidInput("decoupling_bench: ensemble dim");
    const bool exact = ens.kind == EnsembleKind::clifford_1q_exact;

    const HermitianOperator rho_e = partial_trace(rho_ae, dim_a, dim_e, 1);
    const HermitianOperator pi_a(Matrix::Identity(dim_a, dim_a) / dim_a);
    const HermitianOperator pi_a1(Matrix::Identity(dim_a1, dim_a1) / dim_a1);
    const HermitianOperator target = kron(pi_a1, rho_e);
    const HermitianOperator z = rho_ae + kron(pi_a, rho_e) * (-1.0);
    const HermitianOperator ref_full(kron(Matrix::Identity(dim_a, dim_a), sigma_e.mat()));
    const HermitianOperator ref_a1(
        kron(Matrix::Identity(dim_a1, dim_a1), sigma_e.mat()));
    const std::vector<int> dims{dim_a1, dim_a2, dim_e};
    const std::vector<bool> keep{true, false, true};
    const Matrix id_e = Matrix::Identity(dim_e, dim_e);

    const int n = static_cast<int>(ens.members.size());
    double dist_sum = 0.0, dist_sq = 0.0;
    double bures_sum = 0.0, bures_sq = 0.0;
    for (const Matrix& u : ens.members) {
        const Matrix big = kron(u, id_e);
        const HermitianOperator rotated(big * rho_ae.mat() * big.adjoint());
        const HermitianOperator out = partial_trace_multi(rotated, dims, keep);
        const double d = plus_norm(out + target * (-1.0));
        dist_sum += d;
        dist_sq += d * d;
        const HermitianOperator zu(big * z.mat() * big.adjoint());
        const double b =
            bures_seminorm_sq(ref_a1, partial_trace_multi(zu, dims, keep));
        bures_sum += b;
        bures_sq += b * b;
    }
    const double lhs = dist_sum / n;
    const double coeff_emp = bures_sum / n;
    std::optional<double> se;
    double coeff_se = 0.0;
    if (!exact) {
        se = std::sqrt(std::max(0.0, dist_sq / n - lhs * lhs) / n);
        coeff_se = std::sqrt(std::max(0.0, bures_sq / n - coeff_emp * coeff_emp) / n);
    }

    const SolvedSdp sol =
        d2_smooth_measured_sdp(rho_ae, ref_full, eps, SdpSide::dual, opts);
    const double q2 = std::exp(sol.value.nats);
    const double rhs = eps + 0.5 * std::sqrt(static_cast<double>(dim_a1) / dim_a2 * q2);

    const double coeff =
        dim_a2 * (static_cast<double>(dim_a1) * dim_a1 - 1.0) /
        (static_cast<double>(dim_a) * dim_a - 1.0);
    const double coeff_ref = coeff * bures_seminorm_sq(ref_full, z);
    bool coeff_ok;
    if (!std::isfinite(coeff_emp) || !std::isfinite(coeff_ref)) {
        coeff_ok = std::isinf(coeff_emp) && std::isinf(coeff_ref);
    } else if (exact) {
        coeff_ok = std::abs(coeff_emp - coeff_ref) <= 1e-12 * std::max(1.0, coeff_ref);
    } else {
        coeff_ok = std::abs(coeff_emp - coeff_ref) <= 3.0 * coeff_se + 1e-12;
    }

    std::map<std::string, double> params{
        {"eps", eps},
        {"dim_a1", static_cast<double>(dim_a1)},
        {"dim_a2", static_cast<double>(dim_a2)},
        {"dim_e", static_cast<double>(dim_e)},
        {"q2", q2},
        {"ensemble_members", static_cast<double>(n)},
        {"bures_second_moment", coeff_emp},
        {"bures_second_moment_ref", coeff_ref},
        {"bures_second_moment_se", coeff_se},
    };
    BoundReport r = make_report("decoupling", "decoupling-measured", lhs, rhs,
                                exact ? 1e-6 : 0.0, std::move(params), se);
    r.pass = r.pass && coeff_ok;
    return r;
}

std::vector<IidTrendRow> iid_trend_report(const CQState& rho, double eps, int n_max) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("iid_trend_report: eps");
    if (n_max < 1 || n_max > 6) throw TooLarge("iid_trend_report: n beyond 6");
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    if (std::pow(static_cast<double>(nx), n_max) > 4096.0 ||
        std::pow(static_cast<double>(de), n_max) > 64.0) {
        throw TooLarge("iid_trend_report: per-copy dims too large");
    }
    const HermitianOperator rho_e = rho.reduced();
    const EntropyVariance ev = relative_entropy_and_variance(
        rho.embed(), kron(HermitianOperator(Matrix::Identity(nx, nx)), rho_e));
    const double h = -ev.relative_entropy;
    const double inv_phi = inverse_normal_cdf(eps);

    std::vector<IidTrendRow> rows;
    std::vector<double> p = rho.p;
    std::vector<HermitianOperator> blocks = rho.blocks;
    HermitianOperator sigma_n = rho_e;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            std::vector<double> p2;
            std::vector<HermitianOperator> b2;
            p2.reserve(p.size() * nx);
            b2.reserve(blocks.size() * nx);
            for (std::size_t i = 0; i < p.size(); ++i) {
                for (int x = 0; x < nx; ++x) {
                    p2.push_back(p[i] * rho.p[x]);
                    b2.push_back(kron(blocks[i], rho.blocks[x]));
                }
            }
            p = std::move(p2);
            blocks = std::move(b2);
            sigma_n = kron(sigma_n, rho_e);
        }
        IidTrendRow row;
        row.n = n;
        row.hmin_nats = -dmax_smooth_measured_blocks(p, blocks, sigma_n, eps).nats;
        row.reference_nats = n * h + std::sqrt(n * ev.variance) * inv_phi;
        rows.push_back(row);
    }
    return rows;
}

std::string iid_trend_csv(const std::vector<IidTrendRow>& rows, double eps) {
    std::string csv = "# smollision-v1\n# eps=" + format_double(eps) +
                      "\nn,hmin_nats,reference_nats,residual\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.n) + "," + format_double(r.hmin_nats) + "," +
               format_double(r.reference_nats) + "," +
               format_double(r.hmin_nats - r.reference_nats) + "\n";
    }
    return csv;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("inverse_normal_cdf: p outside (0,1)");
    // Rational approximation (relative error ~1e-9), then one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

}  // namespace smollision
