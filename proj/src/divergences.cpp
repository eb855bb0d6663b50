#include "smollision/divergences.hpp"

#include "smollision/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace smollision {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> clamp_distribution(const std::vector<double>& p, const char* what) {
    std::vector<double> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i]) || p[i] < -1e-12) {
            throw InvalidInput(std::string(what) + ": entries must be nonnegative");
        }
        out[i] = std::max(0.0, p[i]);
    }
    return out;
}

// Overlap weights c_ij = |<v_i|w_j>|^2 between two eigenbases.
Eigen::MatrixXd overlap_weights(const Spectrum& a, const Spectrum& b) {
    const Matrix ov = a.vectors.adjoint() * b.vectors;
    return ov.cwiseAbs2();
}

// Mass of rho outside the support of sigma, given their spectra.
double off_support_mass(const Spectrum& sr, const Spectrum& ssig, int d) {
    const double tau_s = support_cutoff(ssig.values(0));
    const Eigen::MatrixXd c = overlap_weights(sr, ssig);
    double off = 0.0;
    for (int i = 0; i < d; ++i) {
        if (sr.values(i) <= 0.0) continue;
        for (int j = 0; j < d; ++j) {
            if (ssig.values(j) <= tau_s) off += sr.values(i) * c(i, j);
        }
    }
    return off;
}

}  // namespace

double renyi_classical(const std::vector<double>& p, const std::vector<double>& q,
                       double alpha) {
    if (p.size() != q.size() || p.empty()) {
        throw InvalidInput("renyi_classical: vectors must have equal nonzero length");
    }
    if (!(alpha >= 0.0)) throw InvalidInput("renyi_classical: alpha must be >= 0");
    const std::vector<double> pc = clamp_distribution(p, "renyi_classical p");
    const std::vector<double> qc = clamp_distribution(q, "renyi_classical q");
    const size_t n = pc.size();
    if (std::isinf(alpha)) {
        double best = -kInf;
        for (size_t i = 0; i < n; ++i) {
            if (pc[i] > 0.0) {
                if (qc[i] <= 0.0) return kInf;
                best = std::max(best, std::log(pc[i] / qc[i]));
            }
        }
        return best;
    }
    if (alpha == 1.0) {
        double d = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (pc[i] > 0.0) {
                if (qc[i] <= 0.0) return kInf;
                d += pc[i] * std::log(pc[i] / qc[i]);
            }
        }
        return d;
    }
    if (alpha == 0.0) {
        double mass = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (pc[i] > 0.0) mass += qc[i];
        }
        return -std::log(mass);
    }
    if (alpha > 1.0) {
        for (size_t i = 0; i < n; ++i) {
            if (pc[i] > 0.0 && qc[i] <= 0.0) return kInf;
        }
    }
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (pc[i] > 0.0 && qc[i] > 0.0) {
            acc += std::pow(pc[i], alpha) * std::pow(qc[i], 1.0 - alpha);
        }
    }
    return std::log(acc) / (alpha - 1.0);
}

double quantum_renyi(const HermitianOperator& rho, const HermitianOperator& sigma,
                     double alpha, RenyiFamily family) {
    if (rho.dim() != sigma.dim()) throw InvalidInput("quantum_renyi: dimension mismatch");
    if (!(alpha >= 0.0)) throw InvalidInput("quantum_renyi: alpha must be >= 0");
    const int d = rho.dim();
    const Spectrum sr = eig_hermitian(rho);
    const Spectrum ss = eig_hermitian(sigma);
    const double tau_r = support_cutoff(sr.values(0));
    const double tau_s = support_cutoff(ss.values(0));
    if (alpha > 1.0 && !std::isinf(alpha)) {
        if (off_support_mass(sr, ss, d) > support_cutoff(sr.values(0))) return kInf;
    }
    if (alpha == 1.0) {
        return relative_entropy_and_variance(rho, sigma).relative_entropy;
    }
    if (std::isinf(alpha)) {
        if (family == RenyiFamily::petz) {
            throw InvalidInput("quantum_renyi: petz family has no alpha = infinity limit here");
        }
        return dmax(rho, sigma);
    }
    if (family == RenyiFamily::petz) {
        const Eigen::MatrixXd c = overlap_weights(sr, ss);
        if (alpha == 0.0) {
            double mass = 0.0;
            for (int i = 0; i < d; ++i) {
                if (sr.values(i) <= tau_r) continue;
                for (int j = 0; j < d; ++j) {
                    if (ss.values(j) > tau_s) mass += ss.values(j) * c(i, j);
                }
            }
            return -std::log(mass);
        }
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
            if (sr.values(i) <= tau_r) continue;
            for (int j = 0; j < d; ++j) {
                if (ss.values(j) <= tau_s) continue;
                acc += std::pow(sr.values(i), alpha) * std::pow(ss.values(j), 1.0 - alpha) * c(i, j);
            }
        }
        return std::log(acc) / (alpha - 1.0);
    }
    // Sandwiched: Tr[(sigma^s rho sigma^s)^alpha] with s = (1-alpha)/(2 alpha),
    // powers taken on the support of sigma.
    const double s = (1.0 - alpha) / (2.0 * alpha);
    Matrix sig_pow = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        if (ss.values(j) > tau_s) {
            sig_pow += std::pow(ss.values(j), s) * ss.vectors.col(j) * ss.vectors.col(j).adjoint();
        }
    }
    const HermitianOperator k(sig_pow * rho.mat() * sig_pow);
    const Spectrum sk = eig_hermitian(k);
    const double tau_k = support_cutoff(sk.values(0));
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        if (sk.values(i) > tau_k) acc += std::pow(sk.values(i), alpha);
    }
    return std::log(acc) / (alpha - 1.0);
}

EntropyVariance relative_entropy_and_variance(const HermitianOperator& rho,
                                              const HermitianOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw InvalidInput("relative_entropy_and_variance: dimension mismatch");
    }
    const int d = rho.dim();
    const Spectrum sr = eig_hermitian(rho);
    const Spectrum ss = eig_hermitian(sigma);
    const double tau_r = support_cutoff(sr.values(0));
    const double tau_s = support_cutoff(ss.values(0));
    if (off_support_mass(sr, ss, d) > support_cutoff(sr.values(0))) {
        return {kInf, 0.0};
    }
    const Eigen::MatrixXd c = overlap_weights(sr, ss);
    double first = 0.0, second = 0.0;
    for (int i = 0; i < d; ++i) {
        if (sr.values(i) <= tau_r) continue;
        for (int j = 0; j < d; ++j) {
            if (ss.values(j) <= tau_s) continue;
            const double w = sr.values(i) * c(i, j);
            const double ll = std::log(sr.values(i)) - std::log(ss.values(j));
            first += w * ll;
            second += w * ll * ll;
        }
    }
    return {first, std::max(0.0, second - first * first)};
}

double dmax(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dmax: dimension mismatch");
    const int d = a.dim();
    const Spectrum sb = eig_hermitian(b);
    const double tau_b = support_cutoff(sb.values(0));
    if (sb.values(d - 1) < -tau_b) throw InvalidInput("dmax: second argument must be PSD");
    Matrix proj_perp = Matrix::Identity(d, d);
    Matrix inv_sqrt = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        if (sb.values(j) > tau_b) {
            proj_perp -= sb.vectors.col(j) * sb.vectors.col(j).adjoint();
            inv_sqrt += (1.0 / std::sqrt(sb.values(j))) * sb.vectors.col(j) * sb.vectors.col(j).adjoint();
        }
    }
    const Spectrum s_a = eig_hermitian(a);
    const double a_scale = std::max(std::abs(s_a.values(0)), std::abs(s_a.values(d - 1)));
    const Spectrum s_off = eig_hermitian(HermitianOperator(proj_perp * a.mat() * proj_perp));
    if (s_off.values(0) > 1e-10 * std::max(1.0, a_scale)) return kInf;
    const Spectrum s_in = eig_hermitian(HermitianOperator(inv_sqrt * a.mat() * inv_sqrt));
    if (s_in.values(0) <= 0.0) return -kInf;
    return std::log(s_in.values(0));
}

double hockey_stick(const HermitianOperator& rho, const HermitianOperator& sigma,
                    double gamma) {
    if (gamma < 0.0) throw InvalidInput("hockey_stick: gamma must be >= 0");
    return positive_part(rho - sigma * gamma).second;
}

namespace {

// Shared bisection for the smallest gamma with E(gamma) <= eps, where E is a
// nonincreasing hockey-stick curve. gamma_hi must satisfy E(gamma_hi) <= eps.
DivergenceValue hockey_stick_bisection(const std::function<double(double)>& e_of_gamma,
                                       double eps, double gamma_hi) {
    double lo = 0.0, hi = gamma_hi;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (e_of_gamma(mid) <= eps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    DivergenceValue out;
    out.nats = std::log(hi);
    out.gamma = hi;
    return out;
}

DivergenceValue dmax_smooth_from_curve(const std::function<double(double)>& e_of_gamma,
                                       double dmax_bracket, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw InvalidInput("smoothing parameter must lie in [0, 1)");
    }
    if (e_of_gamma(0.0) <= eps) {
        DivergenceValue out;
        out.nats = -kInf;
        out.gamma = 0.0;
        return out;
    }
    double gamma_hi;
    if (std::isfinite(dmax_bracket)) {
        gamma_hi = std::max(std::exp(dmax_bracket), 1e-300);
    } else {
        gamma_hi = 1.0;
        while (e_of_gamma(gamma_hi) > eps) {
            gamma_hi *= 2.0;
            if (gamma_hi > 1e12) {
                DivergenceValue out;
                out.nats = kInf;
                return out;
            }
        }
    }
    return hockey_stick_bisection(e_of_gamma, eps, gamma_hi);
}

}  // namespace

DivergenceValue dmax_smooth_measured(const HermitianOperator& rho,
                                     const HermitianOperator& sigma, double eps) {
    const auto curve = [&](double g) { return hockey_stick(rho, sigma, g); };
    return dmax_smooth_from_curve(curve, dmax(rho, sigma), eps);
}

DivergenceValue dmax_smooth_measured_blocks(const std::vector<double>& p,
                                            const std::vector<HermitianOperator>& blocks,
                                            const HermitianOperator& sigma_e,
                                            double eps) {
    if (p.size() != blocks.size() || p.empty()) {
        throw InvalidInput("dmax_smooth_measured_blocks: need one weight per block");
    }
    const auto curve = [&](double g) {
        double acc = 0.0;
        for (size_t x = 0; x < p.size(); ++x) {
            acc += positive_part(blocks[x] * p[x] - sigma_e * g).second;
        }
        return acc;
    };
    double bracket = -kInf;
    for (size_t x = 0; x < p.size(); ++x) {
        if (p[x] <= 0.0) continue;
        bracket = std::max(bracket, dmax(blocks[x] * p[x], sigma_e));
    }
    return dmax_smooth_from_curve(curve, bracket, eps);
}

DivergenceValue dh_threshold(const HermitianOperator& rho,
                             const HermitianOperator& sigma, double eps) {
    if (rho.dim() != sigma.dim()) throw InvalidInput("dh_threshold: dimension mismatch");
    if (!(eps >= 0.0 && eps < 1.0)) throw InvalidInput("dh_threshold: eps must lie in [0, 1)");
    const int d = rho.dim();
    const double target = 1.0 - eps;

    const Spectrum ssig = eig_hermitian(sigma);
    const double tau_s = support_cutoff(ssig.values(0));
    Matrix proj_perp = Matrix::Identity(d, d);
    for (int j = 0; j < d; ++j) {
        if (ssig.values(j) > tau_s) {
            proj_perp -= ssig.vectors.col(j) * ssig.vectors.col(j).adjoint();
        }
    }
    const double mass_perp = (proj_perp * rho.mat()).trace().real();
    if (mass_perp >= target - 1e-12) {
        DivergenceValue out;
        out.nats = kInf;
        const double c = mass_perp > 0.0 ? std::min(1.0, target / mass_perp) : 0.0;
        out.op_cert = HermitianOperator(c * proj_perp);
        return out;
    }

    // Mass of rho on strictly positive eigenvalues of rho - t*sigma. No
    // absolute cutoff here: the bisection must locate the t where an
    // eigenvalue crosses zero itself, and the tie band below absorbs the
    // leftover sign noise of exactly-zero modes (which carry no rho mass).
    const auto strict_mass = [&](double t) {
        const Spectrum s = eig_hermitian(rho - sigma * t);
        double acc = 0.0;
        for (int k = 0; k < d; ++k) {
            if (s.values(k) > 0.0) {
                acc += (s.vectors.col(k).adjoint() * rho.mat() * s.vectors.col(k))(0, 0).real();
            }
        }
        return acc;
    };

    double t_star = 0.0;
    double width = 0.0;
    if (strict_mass(0.0) > target) {
        double t_hi = 1.0;
        const double dm = dmax(rho, sigma);
        if (std::isfinite(dm)) t_hi = std::max(1.0, std::exp(dm));
        while (strict_mass(t_hi) > target) {
            t_hi *= 2.0;
            if (t_hi > 1e18) throw InvalidInput("dh_threshold: threshold search failed");
        }
        double t_lo = 0.0;
        int iter = 0;
        while (t_hi - t_lo > 1e-13 * std::max(1.0, t_hi) && iter++ < 300) {
            const double mid = 0.5 * (t_lo + t_hi);
            if (strict_mass(mid) > target) t_lo = mid; else t_hi = mid;
        }
        t_star = t_hi;
        width = t_hi - t_lo;
    }

    const Spectrum s = eig_hermitian(rho - sigma * t_star);
    const double sig_top = std::max(std::abs(ssig.values(0)), std::abs(ssig.values(d - 1)));
    double band = std::max(1e-12 * std::max(1.0, std::abs(s.values(0))),
                           10.0 * width * sig_top);
    Matrix p_pos = Matrix::Zero(d, d);
    Matrix p_tie = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        if (s.values(k) > band) {
            p_pos += s.vectors.col(k) * s.vectors.col(k).adjoint();
        } else if (s.values(k) >= -band) {
            p_tie += s.vectors.col(k) * s.vectors.col(k).adjoint();
        }
    }
    const double mass_pos = (p_pos * rho.mat()).trace().real();
    const double mass_tie = (p_tie * rho.mat()).trace().real();
    double c = 0.0;
    if (mass_tie > 1e-14) {
        c = std::clamp((target - mass_pos) / mass_tie, 0.0, 1.0);
    }
    const HermitianOperator m(p_pos + c * p_tie);
    const double beta = (m.mat() * sigma.mat()).trace().real();
    DivergenceValue out;
    out.op_cert = m;
    out.nats = beta > 1e-300 ? -std::log(beta) : kInf;
    return out;
}

DivergenceValue classical_smooth_collision(const std::vector<double>& p,
                                           const std::vector<double>& q, double eps) {
    if (p.size() != q.size() || p.empty()) {
        throw InvalidInput("classical_smooth_collision: vectors must have equal length");
    }
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw InvalidInput("classical_smooth_collision: eps must lie in [0, 1)");
    }
    const std::vector<double> pc = clamp_distribution(p, "classical_smooth_collision p");
    const std::vector<double> qc = clamp_distribution(q, "classical_smooth_collision q");
    const size_t n = pc.size();

    double mass_off = 0.0;
    double gamma_max = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (qc[i] <= 0.0) {
            mass_off += pc[i];
        } else {
            gamma_max = std::max(gamma_max, pc[i] / qc[i]);
        }
    }
    DivergenceValue out;
    if (mass_off > eps + 1e-12) {
        out.nats = kInf;
        return out;
    }

    const auto excess = [&](double g) {
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) acc += std::max(0.0, pc[i] - g * qc[i]);
        return acc;
    };
    double gamma = gamma_max;
    if (excess(0.0) > eps) {
        double lo = 0.0, hi = gamma_max;
        for (int iter = 0; iter < 120 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (excess(mid) <= eps) hi = mid; else lo = mid;
        }
        // Exact solve on the linear segment the bisection landed in.
        const double mid = 0.5 * (lo + hi);
        double num = mass_off - eps, den = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (qc[i] > 0.0 && pc[i] - mid * qc[i] > 0.0) {
                num += pc[i];
                den += qc[i];
            }
        }
        gamma = den > 0.0 ? num / den : gamma_max;
        if (!(gamma >= lo && gamma <= hi)) gamma = hi;
    }

    std::vector<double> smoothed(n);
    double collision = 0.0;
    for (size_t i = 0; i < n; ++i) {
        smoothed[i] = std::min(pc[i], gamma * qc[i]);
        if (qc[i] > 0.0) collision += smoothed[i] * smoothed[i] / qc[i];
    }
    out.nats = std::log(collision);
    out.gamma = gamma;
    out.dist_cert = std::move(smoothed);
    return out;
}

double measured_collision(const HermitianOperator& rho, const HermitianOperator& sigma) {
    return std::log(bures_seminorm_sq(sigma, rho));
}

namespace {

Matrix expi_hermitian(const HermitianOperator& h, double scale) {
    const Spectrum s = eig_hermitian(h);
    Matrix out = Matrix::Zero(h.dim(), h.dim());
    for (int k = 0; k < h.dim(); ++k) {
        const Complex phase = std::polar(1.0, scale * s.values(k));
        out += phase * s.vectors.col(k) * s.vectors.col(k).adjoint();
    }
    return out;
}

double measured_value_in_basis(const HermitianOperator& rho, const HermitianOperator& sigma,
                               double alpha, const Matrix& basis) {
    const int d = rho.dim();
    std::vector<double> p(d), q(d);
    for (int i = 0; i < d; ++i) {
        p[i] = std::max(0.0, (basis.col(i).adjoint() * rho.mat() * basis.col(i))(0, 0).real());
        // Floor q to keep numerical kernel noise from producing spurious
        // near-infinite values; raising q only lowers the divergence, so the
        // result stays a valid lower bound.
        q[i] = std::max(1e-15, (basis.col(i).adjoint() * sigma.mat() * basis.col(i))(0, 0).real());
    }
    return renyi_classical(p, q, alpha);
}

}  // namespace

MeasuredLowerBound measured_renyi_lower_bound(const HermitianOperator& rho,
                                              const HermitianOperator& sigma,
                                              double alpha, int budget,
                                              std::uint64_t seed) {
    if (rho.dim() != sigma.dim()) {
        throw InvalidInput("measured_renyi_lower_bound: dimension mismatch");
    }
    const int d = rho.dim();
    std::vector<Matrix> candidates;
    candidates.push_back(eig_hermitian(rho).vectors);
    candidates.push_back(eig_hermitian(sigma).vectors);
    if (const auto z = lyapunov_solve(sigma, rho); z.has_value()) {
        candidates.push_back(eig_hermitian(*z).vectors);
    }
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        candidates.push_back(eig_hermitian(rho - sigma * t).vectors);
    }
    const int random_starts = std::max(2, budget / 8);
    for (int k = 0; k < random_starts; ++k) {
        candidates.push_back(sample_haar_unitary(d, Prng::substream(seed, 1000 + k).next_u64()));
    }

    MeasuredLowerBound best{-kInf, candidates.front()};
    for (const auto& u : candidates) {
        const double v = measured_value_in_basis(rho, sigma, alpha, u);
        if (v > best.nats) best = {v, u};
    }

    Prng gen(seed);
    double step = 0.2;
    int stale = 0;
    for (int it = 0; it < budget; ++it) {
        Matrix g(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) g(i, j) = gen.next_complex_gaussian();
        }
        const HermitianOperator h(0.5 * (g + g.adjoint()));
        const Matrix u_try = best.basis * expi_hermitian(h, step);
        const double v = measured_value_in_basis(rho, sigma, alpha, u_try);
        if (v > best.nats + 1e-14) {
            best = {v, u_try};
            stale = 0;
        } else if (++stale > 12) {
            step = std::max(1e-4, step * 0.5);
            stale = 0;
        }
    }
    return best;
}

}  // namespace smollision
