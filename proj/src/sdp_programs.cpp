#include "smollision/sdp_programs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace smollision {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using sdp::Constraint;
using sdp::SdpProblem;

// Constraint-entry helpers: contribute scale * Re X(i,j) or scale * Im X(i,j)
// of a Hermitian block to the left-hand side.
void add_re(Constraint& con, int blk, int i, int j, double scale) {
    if (i == j) {
        con.entries.push_back({blk, i, i, Complex(scale, 0.0)});
        return;
    }
    if (i > j) std::swap(i, j);
    con.entries.push_back({blk, i, j, Complex(scale / 2.0, 0.0)});
}

void add_im(Constraint& con, int blk, int i, int j, double scale) {
    if (i == j) return;
    if (i > j) {
        std::swap(i, j);
        scale = -scale;
    }
    con.entries.push_back({blk, i, j, Complex(0.0, scale / 2.0)});
}

// Pin X(off_r + i, off_c + j) = target(i, j) for i <= j of a diagonal region.
void pin_region(SdpProblem& p, int blk, int off, const Matrix& target) {
    const int d = static_cast<int>(target.rows());
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Constraint& re = p.new_constraint(target(i, j).real());
            add_re(re, blk, off + i, off + j, 1.0);
            if (i != j) {
                Constraint& im = p.new_constraint(target(i, j).imag());
                add_im(im, blk, off + i, off + j, 1.0);
            }
        }
    }
}

// Constraints forcing the top-right block of a 2d Schur block to be
// Hermitian: B(i,j) = conj(B(j,i)) with B(i,j) = G(i, d + j).
void require_corner_hermitian(SdpProblem& p, int blk, int d) {
    for (int i = 0; i < d; ++i) {
        Constraint& diag = p.new_constraint(0.0);
        add_im(diag, blk, i, d + i, 1.0);
        for (int j = i + 1; j < d; ++j) {
            Constraint& re = p.new_constraint(0.0);
            add_re(re, blk, i, d + j, 1.0);
            add_re(re, blk, j, d + i, -1.0);
            Constraint& im = p.new_constraint(0.0);
            add_im(im, blk, i, d + j, 1.0);
            add_im(im, blk, j, d + i, 1.0);
        }
    }
}

// Link the (already Hermitian) top-right corner of a Schur block to a slack
// block: slack = sign * B + shift * I (upper triangle only).
void link_corner(SdpProblem& p, int g_blk, int d, int slack_blk, double sign,
                 int shift_lin) {
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Constraint& re = p.new_constraint(0.0);
            add_re(re, slack_blk, i, j, 1.0);
            add_re(re, g_blk, i, d + j, -sign);
            if (i == j && shift_lin >= 0) re.lin.push_back({shift_lin, -1.0});
            if (i != j) {
                Constraint& im = p.new_constraint(0.0);
                add_im(im, slack_blk, i, j, 1.0);
                add_im(im, g_blk, i, d + j, -sign);
            }
        }
    }
}

// Tr of a block as constraint entries.
void add_trace(Constraint& con, int blk, int d, double scale) {
    for (int i = 0; i < d; ++i) add_re(con, blk, i, i, scale);
}

// Tr(X * w) of a Hermitian block against a fixed Hermitian weight w.
void add_weighted_trace(Constraint& con, int blk, const Matrix& w, double scale) {
    const int d = static_cast<int>(w.rows());
    for (int i = 0; i < d; ++i) {
        add_re(con, blk, i, i, scale * w(i, i).real());
        for (int j = i + 1; j < d; ++j) {
            add_re(con, blk, i, j, 2.0 * scale * w(i, j).real());
            add_im(con, blk, i, j, 2.0 * scale * w(i, j).imag());
        }
    }
}

// Cost matrix for the term 2 * scale * Tr[B rho] with B the top-right corner
// of a 2d Schur block: K = [[0, scale*rho], [scale*rho, 0]].
Matrix corner_cost(const Matrix& rho, double scale) {
    const int d = static_cast<int>(rho.rows());
    Matrix k = Matrix::Zero(2 * d, 2 * d);
    k.topRightCorner(d, d) = scale * rho;
    k.bottomLeftCorner(d, d) = scale * rho.adjoint();
    return k;
}

double off_support_mass(const HermitianOperator& rho, const HermitianOperator& sigma) {
    const Spectrum es = eig_hermitian(sigma);
    const double cutoff = support_cutoff(es.values.size() ? es.values(0) : 0.0);
    double mass = 0.0;
    for (int i = 0; i < sigma.dim(); ++i) {
        if (es.values(i) > cutoff) continue;
        const Eigen::VectorXcd v = es.vectors.col(i);
        mass += (v.adjoint() * rho.mat() * v).real().value();
    }
    return mass;
}

HermitianOperator corner_of(const Matrix& g, int d) {
    const Matrix b = g.block(0, d, d, d);
    return HermitianOperator(0.5 * (b + b.adjoint()));
}

// Round a solver iterate to an exactly valid subnormalized state: clip the
// spectrum at zero and rescale into the trace ball.
HermitianOperator clean_subnormalized(const HermitianOperator& a) {
    HermitianOperator pos = positive_part(a).first;
    const double tr = pos.trace();
    if (tr > 1.0) pos = pos * (1.0 / tr);
    return pos;
}

void require_converged(const sdp::SdpSolution& sol, const char* what) {
    if (sol.status == sdp::SdpStatus::optimal) return;
    if (sol.status == sdp::SdpStatus::max_iterations &&
        std::max({sol.gap, sol.primal_residual, sol.dual_residual}) <= 1e-4) {
        return;
    }
    throw std::runtime_error(std::string(what) + ": solve did not converge");
}

// Blockwise collision program: maximize sum_x 2 Tr B_x (p_x rho_x) - 2 eps t
// minus either sum_x Tr C_x sigma_e (fixed reference) or the epigraph bound
// k >= ||sum_x C_x||_inf (reference optimized away). Null sigma_e selects the
// epigraph form.
SdpProblem formulate_h2_blocks(const CQState& rho, const HermitianOperator* sigma_e,
                               double eps) {
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    SdpProblem p;
    std::vector<int> g(nx);
    const int t = eps > 0.0 ? p.add_lin() : -1;
    const int k = sigma_e == nullptr ? p.add_lin() : -1;
    if (t >= 0) p.add_cost_lin(t, 2.0 * eps);
    if (k >= 0) p.add_cost_lin(k, 1.0);
    for (int x = 0; x < nx; ++x) {
        g[x] = p.add_block(2 * de);
        Matrix cost = corner_cost(rho.weighted_block(x).mat(), -1.0);
        if (sigma_e != nullptr) cost.topLeftCorner(de, de) = sigma_e->mat();
        p.add_cost(g[x], cost);
        pin_region(p, g[x], de, Matrix::Identity(de, de));
        require_corner_hermitian(p, g[x], de);
        const int v = p.add_block(de);
        link_corner(p, g[x], de, v, 1.0, -1);
        if (t >= 0) {
            const int u = p.add_block(de);
            link_corner(p, g[x], de, u, -1.0, t);
        }
    }
    if (k >= 0) {
        // k I - sum_x C_x >= 0 via slack block.
        const int kb = p.add_block(de);
        for (int i = 0; i < de; ++i) {
            for (int j = i; j < de; ++j) {
                Constraint& re = p.new_constraint(0.0);
                add_re(re, kb, i, j, 1.0);
                for (int x = 0; x < nx; ++x) add_re(re, g[x], i, j, 1.0);
                if (i == j) re.lin.push_back({k, -1.0});
                if (i != j) {
                    Constraint& im = p.new_constraint(0.0);
                    add_im(im, kb, i, j, 1.0);
                    for (int x = 0; x < nx; ++x) add_im(im, g[x], i, j, 1.0);
                }
            }
        }
    }
    return p;
}

}  // namespace

sdp::SdpProblem formulate_d2_smooth(const HermitianOperator& rho,
                                    const HermitianOperator& sigma, double eps,
                                    SdpSide side) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("formulate_d2_smooth: eps in [0,1)");
    if (rho.dim() != sigma.dim()) throw InvalidInput("formulate_d2_smooth: dim mismatch");
    const int d = rho.dim();
    SdpProblem p;
    if (side == SdpSide::primal) {
        // max 2 Tr B rho - 2 eps t - Tr C sigma over B >= 0, B <= t I,
        // (C B; B I) >= 0; minimized as the negation.
        const int g = p.add_block(2 * d);
        const int v = p.add_block(d);
        Matrix k = corner_cost(rho.mat(), -1.0);
        k.topLeftCorner(d, d) = sigma.mat();
        p.add_cost(g, k);
        pin_region(p, g, d, Matrix::Identity(d, d));
        require_corner_hermitian(p, g, d);
        link_corner(p, g, d, v, 1.0, -1);
        if (eps > 0.0) {
            const int u = p.add_block(d);
            const int t = p.add_lin();
            p.add_cost_lin(t, 2.0 * eps);
            link_corner(p, g, d, u, -1.0, t);
        }
    } else {
        // min Tr T over (sigma Z; Z^dag T) >= 0 with Herm(Z) = rho - P,
        // P >= 0, Tr P <= eps.
        const int g = p.add_block(2 * d);
        Matrix k = Matrix::Zero(2 * d, 2 * d);
        k.bottomRightCorner(d, d) = Matrix::Identity(d, d);
        p.add_cost(g, k);
        pin_region(p, g, 0, sigma.mat());
        const int pb = eps > 0.0 ? p.add_block(d) : -1;
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                Constraint& re = p.new_constraint(rho.mat()(i, j).real());
                add_re(re, g, i, d + j, 0.5);
                add_re(re, g, j, d + i, 0.5);
                if (pb >= 0) add_re(re, pb, i, j, 1.0);
                if (i != j) {
                    Constraint& im = p.new_constraint(rho.mat()(i, j).imag());
                    add_im(im, g, i, d + j, 0.5);
                    add_im(im, g, j, d + i, -0.5);
                    if (pb >= 0) add_im(im, pb, i, j, 1.0);
                }
            }
        }
        if (pb >= 0) {
            const int u = p.add_lin();
            Constraint& tr = p.new_constraint(eps);
            add_trace(tr, pb, d, 1.0);
            tr.lin.push_back({u, 1.0});
        }
    }
    return p;
}

SolvedSdp d2_smooth_measured_sdp(const HermitianOperator& rho,
                                 const HermitianOperator& sigma, double eps,
                                 SdpSide side, const sdp::SdpOptions& opts) {
    SolvedSdp out;
    if (off_support_mass(rho, sigma) > eps + 1e-9) {
        out.value.nats = kInf;
        out.status = side == SdpSide::primal ? sdp::SdpStatus::unbounded
                                             : sdp::SdpStatus::primal_infeasible;
        return out;
    }
    const double sgn = side == SdpSide::primal ? -0.5 : 0.5;
    sdp::SdpSolution sol =
        sdp::sdp_solve(formulate_d2_smooth(rho, sigma, eps, side), opts);
    double unit = 1.0;  // q-units of the solved program relative to the input
    if (eps == 0.0) {
        // With the W <= I cap inactive the optimizer grows with the collision
        // value itself (B ~ J^{-1}(rho), C ~ B^2 on the sup side, T ~ q on the
        // inf side), and the spread between those entries and the pinned
        // identity corner caps the reachable gap.  The program is
        // quadratically homogeneous in rho, so a second solve with
        // rho/sqrt(q) puts the optimum at unit scale; undo it on the way out.
        const double q1 = sgn * (sol.primal_objective + sol.dual_objective);
        if (q1 > 0.0 && (q1 < 0.1 || q1 > 10.0)) {
            const double c = std::sqrt(q1);
            sdp::SdpSolution re = sdp::sdp_solve(
                formulate_d2_smooth(rho * (1.0 / c), sigma, 0.0, side), opts);
            const double s1 = std::max({sol.gap, sol.primal_residual, sol.dual_residual});
            const double s2 = std::max({re.gap, re.primal_residual, re.dual_residual});
            if (re.status != sdp::SdpStatus::primal_infeasible &&
                re.status != sdp::SdpStatus::unbounded && s2 < s1) {
                sol = std::move(re);
                unit = q1;
            }
        }
    }
    require_converged(sol, "d2_smooth_measured_sdp");
    out.status = sol.status;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    const int d = rho.dim();
    const double q = unit * sgn * (sol.primal_objective + sol.dual_objective);
    out.value.nats = q > 0.0 ? std::log(q) : -kInf;
    if (side == SdpSide::primal) {
        out.primal_objective = -unit * sol.primal_objective;
        out.dual_objective = -unit * sol.dual_objective;
        if (eps > 0.0) {
            const double t = std::max(sol.x_lin[0], 1e-300);
            out.value.gamma = t;
            out.value.op_cert = corner_of(sol.x_blocks[0], d) * (1.0 / t);
        } else {
            // Unsmoothed: any positive rescaling of B is a valid W direction;
            // normalize so that W <= I.
            HermitianOperator b = corner_of(sol.x_blocks[0], d);
            const Spectrum es = eig_hermitian(b);
            const double top = es.values.size() ? es.values(0) : 0.0;
            out.value.op_cert = top > 1e-300 ? b * (1.0 / top) : b;
        }
    } else {
        out.primal_objective = unit * sol.primal_objective;
        out.dual_objective = unit * sol.dual_objective;
        HermitianOperator r = corner_of(sol.x_blocks[0], d);  // R = Herm(Z)
        out.value.op_cert = unit == 1.0 ? r : r * std::sqrt(unit);
    }
    return out;
}

sdp::SdpProblem formulate_dmax_smooth(const HermitianOperator& rho,
                                      const HermitianOperator& sigma, double eps,
                                      SdpSide side) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("formulate_dmax_smooth: eps in [0,1)");
    if (rho.dim() != sigma.dim()) throw InvalidInput("formulate_dmax_smooth: dim mismatch");
    const int d = rho.dim();
    SdpProblem p;
    if (side == SdpSide::primal) {
        // min lambda s.t. R <= lambda sigma, R <= rho, Tr(rho - R) <= eps,
        // with R = rho - P2 eliminated.
        const int p1 = p.add_block(d);
        const int p2 = eps > 0.0 ? p.add_block(d) : -1;
        const int lam = p.add_lin();
        p.add_cost_lin(lam, 1.0);
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                Constraint& re = p.new_constraint(-rho.mat()(i, j).real());
                add_re(re, p1, i, j, 1.0);
                if (p2 >= 0) add_re(re, p2, i, j, -1.0);
                re.lin.push_back({lam, -sigma.mat()(i, j).real()});
                if (i != j) {
                    Constraint& im = p.new_constraint(-rho.mat()(i, j).imag());
                    add_im(im, p1, i, j, 1.0);
                    if (p2 >= 0) add_im(im, p2, i, j, -1.0);
                    im.lin.push_back({lam, -sigma.mat()(i, j).imag()});
                }
            }
        }
        if (p2 >= 0) {
            const int u = p.add_lin();
            Constraint& tr = p.new_constraint(eps);
            add_trace(tr, p2, d, 1.0);
            tr.lin.push_back({u, 1.0});
        }
    } else {
        // max Tr B rho - eps t s.t. 0 <= B <= t I, Tr B sigma <= 1.
        const int b = p.add_block(d);
        p.add_cost(b, -rho.mat());
        if (eps > 0.0) {
            const int u = p.add_block(d);
            const int t = p.add_lin();
            p.add_cost_lin(t, eps);
            for (int i = 0; i < d; ++i) {
                for (int j = i; j < d; ++j) {
                    Constraint& re = p.new_constraint(0.0);
                    add_re(re, u, i, j, 1.0);
                    add_re(re, b, i, j, 1.0);
                    if (i == j) re.lin.push_back({t, -1.0});
                    if (i != j) {
                        Constraint& im = p.new_constraint(0.0);
                        add_im(im, u, i, j, 1.0);
                        add_im(im, b, i, j, 1.0);
                    }
                }
            }
        }
        const int v = p.add_lin();
        Constraint& tr = p.new_constraint(1.0);
        add_weighted_trace(tr, b, sigma.mat(), 1.0);
        tr.lin.push_back({v, 1.0});
    }
    return p;
}

SolvedSdp dmax_smooth_measured_sdp(const HermitianOperator& rho,
                                   const HermitianOperator& sigma, double eps,
                                   SdpSide side, const sdp::SdpOptions& opts) {
    SolvedSdp out;
    if (off_support_mass(rho, sigma) > eps + 1e-9) {
        out.value.nats = kInf;
        out.status = side == SdpSide::primal ? sdp::SdpStatus::primal_infeasible
                                             : sdp::SdpStatus::unbounded;
        return out;
    }
    const sdp::SdpProblem p = formulate_dmax_smooth(rho, sigma, eps, side);
    const sdp::SdpSolution sol = sdp::sdp_solve(p, opts);
    require_converged(sol, "dmax_smooth_measured_sdp");
    out.status = sol.status;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    if (side == SdpSide::primal) {
        out.primal_objective = sol.primal_objective;
        out.dual_objective = sol.dual_objective;
        const double lam = 0.5 * (sol.primal_objective + sol.dual_objective);
        out.value.nats = lam > 0.0 ? std::log(lam) : -kInf;
        out.value.gamma = lam;
        if (eps > 0.0) {
            out.value.op_cert = HermitianOperator(rho.mat() - sol.x_blocks[1]);
        } else {
            out.value.op_cert = rho;
        }
    } else {
        out.primal_objective = -sol.primal_objective;
        out.dual_objective = -sol.dual_objective;
        const double val = -0.5 * (sol.primal_objective + sol.dual_objective);
        out.value.nats = val > 0.0 ? std::log(val) : -kInf;
        out.value.op_cert = HermitianOperator(sol.x_blocks[0]);
        if (eps > 0.0) out.value.gamma = sol.x_lin[0];  // t
    }
    return out;
}

SolvedSdp dh_sdp(const HermitianOperator& rho, const HermitianOperator& sigma,
                 double eps, const sdp::SdpOptions& opts) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("dh_sdp: eps in [0,1)");
    if (rho.dim() != sigma.dim()) throw InvalidInput("dh_sdp: dim mismatch");
    const int d = rho.dim();
    SdpProblem p;
    const int m = p.add_block(d);
    const int v = p.add_block(d);
    p.add_cost(m, sigma.mat());
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Constraint& re = p.new_constraint(i == j ? 1.0 : 0.0);
            add_re(re, v, i, j, 1.0);
            add_re(re, m, i, j, 1.0);
            if (i != j) {
                Constraint& im = p.new_constraint(0.0);
                add_im(im, v, i, j, 1.0);
                add_im(im, m, i, j, 1.0);
            }
        }
    }
    Constraint& tr = p.new_constraint(1.0 - eps);
    add_weighted_trace(tr, m, rho.mat(), 1.0);
    if (eps > 0.0) {
        const int w = p.add_lin();
        tr.lin.push_back({w, -1.0});
    }
    const sdp::SdpSolution sol = sdp::sdp_solve(p, opts);
    require_converged(sol, "dh_sdp");
    SolvedSdp out;
    out.status = sol.status;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    out.primal_objective = sol.primal_objective;
    out.dual_objective = sol.dual_objective;
    const double beta = 0.5 * (sol.primal_objective + sol.dual_objective);
    out.value.nats = beta > 1e-300 ? -std::log(beta) : kInf;
    out.value.op_cert = HermitianOperator(sol.x_blocks[0]);
    return out;
}

sdp::SdpProblem formulate_conditional_smooth(const CQState& rho, CondProgram which,
                                             double eps) {
    if (eps < 0.0 || eps >= 1.0) {
        throw InvalidInput("formulate_conditional_smooth: eps in [0,1)");
    }
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    const HermitianOperator rho_e = rho.reduced();
    if (which == CondProgram::h2_up) return formulate_h2_blocks(rho, nullptr, eps);
    if (which == CondProgram::h2_down) return formulate_h2_blocks(rho, &rho_e, eps);
    SdpProblem p;
    {
        // hmin: min Tr S (up) or min lambda with S = lambda rho_E (down),
        // s.t. p_x rho_x <= S + Q_x, Q_x >= 0, sum Tr Q_x <= eps.
        const bool up = which == CondProgram::hmin_up;
        const int s = up ? p.add_block(de) : -1;
        const int lam = up ? -1 : p.add_lin();
        if (up) {
            p.add_cost(s, Matrix::Identity(de, de));
        } else {
            p.add_cost_lin(lam, 1.0);
        }
        std::vector<int> q(nx, -1);
        for (int x = 0; x < nx; ++x) {
            if (eps > 0.0) q[x] = p.add_block(de);
            const int w = p.add_block(de);
            const Matrix target = -rho.weighted_block(x).mat();
            for (int i = 0; i < de; ++i) {
                for (int j = i; j < de; ++j) {
                    Constraint& re = p.new_constraint(target(i, j).real());
                    add_re(re, w, i, j, 1.0);
                    if (q[x] >= 0) add_re(re, q[x], i, j, -1.0);
                    if (up) {
                        add_re(re, s, i, j, -1.0);
                    } else {
                        re.lin.push_back({lam, -rho_e.mat()(i, j).real()});
                    }
                    if (i != j) {
                        Constraint& im = p.new_constraint(target(i, j).imag());
                        add_im(im, w, i, j, 1.0);
                        if (q[x] >= 0) add_im(im, q[x], i, j, -1.0);
                        if (up) {
                            add_im(im, s, i, j, -1.0);
                        } else {
                            im.lin.push_back({lam, -rho_e.mat()(i, j).imag()});
                        }
                    }
                }
            }
        }
        if (eps > 0.0) {
            const int u = p.add_lin();
            Constraint& tr = p.new_constraint(eps);
            for (int x = 0; x < nx; ++x) add_trace(tr, q[x], de, 1.0);
            tr.lin.push_back({u, 1.0});
        }
    }
    return p;
}

SolvedSdp conditional_smooth_sdp(const CQState& rho, CondProgram which, double eps,
                                 const sdp::SdpOptions& opts) {
    const sdp::SdpProblem p = formulate_conditional_smooth(rho, which, eps);
    const sdp::SdpSolution sol = sdp::sdp_solve(p, opts);
    require_converged(sol, "conditional_smooth_sdp");
    SolvedSdp out;
    out.status = sol.status;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    if (which == CondProgram::h2_up || which == CondProgram::h2_down) {
        out.primal_objective = -sol.primal_objective;
        out.dual_objective = -sol.dual_objective;
        const double q = -0.5 * (sol.primal_objective + sol.dual_objective);
        out.value.nats = q > 0.0 ? -std::log(q) : kInf;
    } else {
        out.primal_objective = sol.primal_objective;
        out.dual_objective = sol.dual_objective;
        const double v = 0.5 * (sol.primal_objective + sol.dual_objective);
        out.value.nats = v > 0.0 ? -std::log(v) : kInf;
        if (which == CondProgram::hmin_up) {
            out.value.op_cert = HermitianOperator(sol.x_blocks[0]);  // S
        }
    }
    return out;
}

SolvedSdp d2_smooth_blocks_sdp(const CQState& rho, const HermitianOperator& sigma_e,
                               double eps, const sdp::SdpOptions& opts) {
    SolvedSdp out;
    double mass = 0.0;
    for (int x = 0; x < rho.classical_dim(); ++x) {
        mass += rho.p[x] * off_support_mass(rho.blocks[x], sigma_e);
    }
    if (mass > eps + 1e-9) {
        out.value.nats = kInf;
        out.status = sdp::SdpStatus::unbounded;
        return out;
    }
    const sdp::SdpProblem p = formulate_h2_blocks(rho, &sigma_e, eps);
    const sdp::SdpSolution sol = sdp::sdp_solve(p, opts);
    require_converged(sol, "d2_smooth_blocks_sdp");
    out.status = sol.status;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    out.primal_objective = -sol.primal_objective;
    out.dual_objective = -sol.dual_objective;
    const double q = -0.5 * (sol.primal_objective + sol.dual_objective);
    out.value.nats = q > 0.0 ? std::log(q) : -kInf;
    return out;
}

double guessing_probability_t(const CQState& rho, double t) {
    if (t < 0.0 || t > 1.0) throw InvalidInput("guessing_probability_t: t in [0,1]");
    if (t <= 1e-9) return 0.0;
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    SdpProblem p;
    std::vector<int> m(nx);
    for (int x = 0; x < nx; ++x) {
        m[x] = p.add_block(de);
        p.add_cost(m[x], -rho.weighted_block(x).mat());
        const int u = p.add_block(de);
        for (int i = 0; i < de; ++i) {
            for (int j = i; j < de; ++j) {
                Constraint& re = p.new_constraint(i == j ? t : 0.0);
                add_re(re, u, i, j, 1.0);
                add_re(re, m[x], i, j, 1.0);
                if (i != j) {
                    Constraint& im = p.new_constraint(0.0);
                    add_im(im, u, i, j, 1.0);
                    add_im(im, m[x], i, j, 1.0);
                }
            }
        }
    }
    const int v = p.add_block(de);
    for (int i = 0; i < de; ++i) {
        for (int j = i; j < de; ++j) {
            Constraint& re = p.new_constraint(i == j ? 1.0 : 0.0);
            add_re(re, v, i, j, 1.0);
            for (int x = 0; x < nx; ++x) add_re(re, m[x], i, j, 1.0);
            if (i != j) {
                Constraint& im = p.new_constraint(0.0);
                add_im(im, v, i, j, 1.0);
                for (int x = 0; x < nx; ++x) add_im(im, m[x], i, j, 1.0);
            }
        }
    }
    const sdp::SdpSolution sol = sdp::sdp_solve(p);
    require_converged(sol, "guessing_probability_t");
    return -0.5 * (sol.primal_objective + sol.dual_objective);
}

double smoothed_guessing_sup(const CQState& rho, double eps) {
    const auto g = [&](double t) { return guessing_probability_t(rho, t) - eps * t; };
    double best_t = 0.0, best = 0.0;
    std::vector<double> vals(101);
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        vals[i] = g(t);
        if (vals[i] > best) {
            best = vals[i];
            best_t = t;
        }
    }
    // golden-section refinement on the bracket around the best vertex
    double lo = std::max(0.0, best_t - 0.01), hi = std::min(1.0, best_t + 0.01);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = g(a), fb = g(b);
    for (int it = 0; it < 30; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = g(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = g(a);
        }
    }
    return std::max({best, fa, fb});
}

namespace {

// Shared scaffolding for the purified-smoothing programs: a fidelity Schur
// block per classical symbol with Re Tr Z constrained from below.
struct PurifiedLayout {
    SdpProblem p;
    std::vector<int> g;  // 2 d Schur blocks
    int dim = 0;
};

PurifiedLayout purified_base(const std::vector<HermitianOperator>& weighted_blocks,
                             double eps) {
    PurifiedLayout lay;
    const int d = weighted_blocks[0].dim();
    lay.dim = d;
    for (const auto& w : weighted_blocks) {
        const int g = lay.p.add_block(2 * d);
        lay.g.push_back(g);
        pin_region(lay.p, g, 0, w.mat());
    }
    {  // sum_x Re Tr Z_x >= sqrt(1 - eps^2)
        const int u = eps > 0.0 ? lay.p.add_lin() : -1;
        Constraint& fid =
            lay.p.new_constraint(std::sqrt(std::max(0.0, 1.0 - eps * eps)));
        for (int g : lay.g) {
            for (int i = 0; i < d; ++i) add_re(fid, g, i, d + i, 1.0);
        }
        if (u >= 0) fid.lin.push_back({u, -1.0});
    }
    {  // Tr rho' <= 1 over the bottom-right corners
        const int u1 = lay.p.add_lin();
        Constraint& tr = lay.p.new_constraint(1.0);
        for (int g : lay.g) {
            for (int i = 0; i < d; ++i) add_re(tr, g, d + i, d + i, 1.0);
        }
        tr.lin.push_back({u1, 1.0});
    }
    return lay;
}

}  // namespace

DivergenceValue dmax_purified_sdp(const HermitianOperator& rho,
                                  const HermitianOperator& sigma, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("dmax_purified_sdp: eps in [0,1)");
    if (eps == 0.0) {
        // The purified ball degenerates to {rho}; the program would have no
        // interior, so evaluate the unsmoothed divergence directly.
        DivergenceValue out;
        out.nats = dmax(rho, sigma);
        out.op_cert = rho;
        return out;
    }
    PurifiedLayout lay = purified_base({rho}, eps);
    const int d = lay.dim;
    const int lam = lay.p.add_lin();
    lay.p.add_cost_lin(lam, 1.0);
    const int l = lay.p.add_block(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Constraint& re = lay.p.new_constraint(0.0);
            add_re(re, l, i, j, 1.0);
            add_re(re, lay.g[0], d + i, d + j, 1.0);
            re.lin.push_back({lam, -sigma.mat()(i, j).real()});
            if (i != j) {
                Constraint& im = lay.p.new_constraint(0.0);
                add_im(im, l, i, j, 1.0);
                add_im(im, lay.g[0], d + i, d + j, 1.0);
                im.lin.push_back({lam, -sigma.mat()(i, j).imag()});
            }
        }
    }
    const sdp::SdpSolution sol = sdp::sdp_solve(lay.p);
    DivergenceValue out;
    if (sol.status == sdp::SdpStatus::primal_infeasible) {
        out.nats = kInf;
        return out;
    }
    require_converged(sol, "dmax_purified_sdp");
    const double lv = 0.5 * (sol.primal_objective + sol.dual_objective);
    out.nats = lv > 0.0 ? std::log(lv) : -kInf;
    out.gamma = lv;
    out.op_cert =
        clean_subnormalized(HermitianOperator(sol.x_blocks[0].block(d, d, d, d)));
    return out;
}

DivergenceValue hmin_purified_sdp(const CQState& rho, double eps, CondVariant variant) {
    if (eps < 0.0 || eps >= 1.0) throw InvalidInput("hmin_purified_sdp: eps in [0,1)");
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    if (eps == 0.0) {
        DivergenceValue out;
        if (variant == CondVariant::down) {
            const HermitianOperator rho_e = rho.reduced();
            out.nats = -kInf;
            for (int x = 0; x < nx; ++x) {
                out.nats = std::max(out.nats, dmax(rho.weighted_block(x), rho_e));
            }
        } else {
            out.nats =
                -conditional_smooth_sdp(rho, CondProgram::hmin_up, 0.0).value.nats;
        }
        out.op_cert = rho.embed();
        return out;
    }
    std::vector<HermitianOperator> weighted;
    for (int x = 0; x < nx; ++x) weighted.push_back(rho.weighted_block(x));
    PurifiedLayout lay = purified_base(weighted, eps);
    const HermitianOperator rho_e = rho.reduced();
    int y = -1, lam = -1;
    if (variant == CondVariant::up) {
        y = lay.p.add_block(de);
        lay.p.add_cost(y, Matrix::Identity(de, de));
    } else {
        lam = lay.p.add_lin();
        lay.p.add_cost_lin(lam, 1.0);
    }
    for (int x = 0; x < nx; ++x) {
        const int l = lay.p.add_block(de);
        for (int i = 0; i < de; ++i) {
            for (int j = i; j < de; ++j) {
                Constraint& re = lay.p.new_constraint(0.0);
                add_re(re, l, i, j, 1.0);
                add_re(re, lay.g[x], de + i, de + j, 1.0);
                if (y >= 0) add_re(re, y, i, j, -1.0);
                if (lam >= 0) re.lin.push_back({lam, -rho_e.mat()(i, j).real()});
                if (i != j) {
                    Constraint& im = lay.p.new_constraint(0.0);
                    add_im(im, l, i, j, 1.0);
                    add_im(im, lay.g[x], de + i, de + j, 1.0);
                    if (y >= 0) add_im(im, y, i, j, -1.0);
                    if (lam >= 0) im.lin.push_back({lam, -rho_e.mat()(i, j).imag()});
                }
            }
        }
    }
    const sdp::SdpSolution sol = sdp::sdp_solve(lay.p);
    DivergenceValue out;
    if (sol.status == sdp::SdpStatus::primal_infeasible) {
        out.nats = kInf;
        return out;
    }
    require_converged(sol, "hmin_purified_sdp");
    const double v = 0.5 * (sol.primal_objective + sol.dual_objective);
    out.nats = v > 0.0 ? std::log(v) : -kInf;
    // rho' embedded as the CQ operator it certifies.
    Matrix rp = Matrix::Zero(nx * de, nx * de);
    for (int x = 0; x < nx; ++x) {
        rp.block(x * de, x * de, de, de) = sol.x_blocks[x].block(de, de, de, de);
    }
    out.op_cert = clean_subnormalized(HermitianOperator(rp));
    return out;
}

DivergenceValue dmax_trace_smoothed_sdp(const HermitianOperator& rho,
                                        const HermitianOperator& sigma, double eps) {
    if (eps < 0.0 || eps >= 1.0) {
        throw InvalidInput("dmax_trace_smoothed_sdp: eps in [0,1)");
    }
    const int d = rho.dim();
    SdpProblem prob;
    const int pp = prob.add_block(d);
    const int nn = prob.add_block(d);
    const int ll = prob.add_block(d);
    const int mm = prob.add_block(d);
    const int lam = prob.add_lin();
    const int r = prob.add_lin();
    prob.add_cost_lin(lam, 1.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            // L = lambda sigma - rho + P - N >= 0
            Constraint& re1 = prob.new_constraint(-rho.mat()(i, j).real());
            add_re(re1, ll, i, j, 1.0);
            add_re(re1, pp, i, j, -1.0);
            add_re(re1, nn, i, j, 1.0);
            re1.lin.push_back({lam, -sigma.mat()(i, j).real()});
            // M = rho - P + N >= 0
            Constraint& re2 = prob.new_constraint(rho.mat()(i, j).real());
            add_re(re2, mm, i, j, 1.0);
            add_re(re2, pp, i, j, 1.0);
            add_re(re2, nn, i, j, -1.0);
            if (i != j) {
                Constraint& im1 = prob.new_constraint(-rho.mat()(i, j).imag());
                add_im(im1, ll, i, j, 1.0);
                add_im(im1, pp, i, j, -1.0);
                add_im(im1, nn, i, j, 1.0);
                im1.lin.push_back({lam, -sigma.mat()(i, j).imag()});
                Constraint& im2 = prob.new_constraint(rho.mat()(i, j).imag());
                add_im(im2, mm, i, j, 1.0);
                add_im(im2, pp, i, j, 1.0);
                add_im(im2, nn, i, j, -1.0);
            }
        }
    }
    {  // Tr rho' <= 1
        const int u = prob.add_lin();
        Constraint& c = prob.new_constraint(1.0 - rho.trace());
        add_trace(c, pp, d, -1.0);
        add_trace(c, nn, d, 1.0);
        c.lin.push_back({u, 1.0});
    }
    {  // (Tr P + Tr N)/2 + r/2 <= eps
        const int u = prob.add_lin();
        Constraint& c = prob.new_constraint(eps);
        add_trace(c, pp, d, 0.5);
        add_trace(c, nn, d, 0.5);
        c.lin.push_back({r, 0.5});
        c.lin.push_back({u, 1.0});
    }
    {  // r >= +-(Tr P - Tr N)
        const int u3 = prob.add_lin();
        Constraint& c3 = prob.new_constraint(0.0);
        add_trace(c3, pp, d, -1.0);
        add_trace(c3, nn, d, 1.0);
        c3.lin.push_back({r, 1.0});
        c3.lin.push_back({u3, -1.0});
        const int u4 = prob.add_lin();
        Constraint& c4 = prob.new_constraint(0.0);
        add_trace(c4, pp, d, 1.0);
        add_trace(c4, nn, d, -1.0);
        c4.lin.push_back({r, 1.0});
        c4.lin.push_back({u4, -1.0});
    }
    const sdp::SdpSolution sol = sdp::sdp_solve(prob);
    DivergenceValue out;
    if (sol.status == sdp::SdpStatus::primal_infeasible) {
        out.nats = kInf;
        return out;
    }
    require_converged(sol, "dmax_trace_smoothed_sdp");
    const double lv = 0.5 * (sol.primal_objective + sol.dual_objective);
    out.nats = lv > 0.0 ? std::log(lv) : -kInf;
    out.gamma = lv;
    out.op_cert = clean_subnormalized(
        HermitianOperator(rho.mat() - sol.x_blocks[0] + sol.x_blocks[1]));
    return out;
}

namespace {

// --- conditional_entropy dispatch ---------------------------------------

double sandwiched_cq(const CQState& rho, const HermitianOperator& sigma,
                     double alpha) {
    // D_alpha(rho_XE || I (x) sigma) via per-block quantum values.
    if (alpha == 1.0) {
        double d = 0.0;
        for (int x = 0; x < rho.classical_dim(); ++x) {
            if (rho.p[x] <= 0.0) continue;
            const double dx =
                relative_entropy_and_variance(rho.blocks[x], sigma).relative_entropy;
            if (std::isinf(dx)) return kInf;
            d += rho.p[x] * (std::log(rho.p[x]) + dx);
        }
        return d;
    }
    double q = 0.0;
    for (int x = 0; x < rho.classical_dim(); ++x) {
        if (rho.p[x] <= 0.0) continue;
        const double dx = quantum_renyi(rho.blocks[x], sigma, alpha,
                                        RenyiFamily::sandwiched);
        if (std::isinf(dx)) {
            if (alpha > 1.0) return kInf;
            continue;  // alpha < 1: exp((alpha-1) * inf) = 0
        }
        q += std::pow(rho.p[x], alpha) * std::exp((alpha - 1.0) * dx);
    }
    if (q <= 0.0) return alpha > 1.0 ? -kInf : kInf;
    return std::log(q) / (alpha - 1.0);
}

double petz_cq(const CQState& rho, const HermitianOperator& sigma, double alpha) {
    if (alpha == 1.0) return sandwiched_cq(rho, sigma, alpha);
    double q = 0.0;
    for (int x = 0; x < rho.classical_dim(); ++x) {
        if (rho.p[x] <= 0.0) continue;
        const double dx = quantum_renyi(rho.blocks[x], sigma, alpha, RenyiFamily::petz);
        if (std::isinf(dx)) {
            if (alpha > 1.0) return kInf;
            continue;
        }
        q += std::pow(rho.p[x], alpha) * std::exp((alpha - 1.0) * dx);
    }
    if (q <= 0.0) return alpha > 1.0 ? -kInf : kInf;
    return std::log(q) / (alpha - 1.0);
}

// Compact Nelder-Mead over R^n.
RealVector nelder_mead(const std::function<double(const RealVector&)>& f,
                       const RealVector& x0, double scale, int iters) {
    const int n = static_cast<int>(x0.size());
    std::vector<RealVector> xs;
    std::vector<double> fs;
    xs.push_back(x0);
    fs.push_back(f(x0));
    for (int i = 0; i < n; ++i) {
        RealVector x = x0;
        x(i) += scale;
        xs.push_back(x);
        fs.push_back(f(x));
    }
    std::vector<int> ord(n + 1);
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        if (fs[ord[n]] - fs[ord[0]] < 1e-13) break;
        RealVector centroid = RealVector::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[ord[i]];
        centroid /= n;
        const int worst = ord[n];
        const RealVector refl = centroid + (centroid - xs[worst]);
        const double fr = f(refl);
        if (fr < fs[ord[0]]) {
            const RealVector exp2 = centroid + 2.0 * (centroid - xs[worst]);
            const double fe = f(exp2);
            if (fe < fr) {
                xs[worst] = exp2;
                fs[worst] = fe;
            } else {
                xs[worst] = refl;
                fs[worst] = fr;
            }
        } else if (fr < fs[ord[n - 1]]) {
            xs[worst] = refl;
            fs[worst] = fr;
        } else {
            const RealVector contr = centroid + 0.5 * (xs[worst] - centroid);
            const double fc = f(contr);
            if (fc < fs[worst]) {
                xs[worst] = contr;
                fs[worst] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[ord[i]] = xs[ord[0]] + 0.5 * (xs[ord[i]] - xs[ord[0]]);
                    fs[ord[i]] = f(xs[ord[i]]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (fs[i] < fs[best]) best = i;
    }
    return xs[best];
}

// Parametrize a density matrix by the entries of a lower-triangular factor.
HermitianOperator params_to_density(const RealVector& v, int d) {
    Matrix l = Matrix::Zero(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            if (i == j) {
                l(i, j) = v(idx++);
            } else {
                l(i, j) = Complex(v(idx), v(idx + 1));
                idx += 2;
            }
        }
    }
    Matrix s = l * l.adjoint();
    s += 1e-12 * Matrix::Identity(d, d);
    s /= s.trace().real();
    return HermitianOperator(s);
}

RealVector density_to_params(const HermitianOperator& s, int d) {
    Matrix a = s.mat() + 1e-10 * Matrix::Identity(d, d);
    const Eigen::LLT<Matrix> llt(a);
    const Matrix l = llt.matrixL();
    RealVector v(d * d);
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            if (i == j) {
                v(idx++) = l(i, j).real();
            } else {
                v(idx++) = l(i, j).real();
                v(idx++) = l(i, j).imag();
            }
        }
    }
    return v;
}

// Normalized (sum_x p_x^alpha rho_x^alpha)^{1/alpha}: the exact optimizer of
// the order-alpha Petz minimization over sigma_E. log_tr receives
// log Tr[(sum_x p_x^alpha rho_x^alpha)^{1/alpha}] when non-null.
HermitianOperator sibson_state(const CQState& rho, double alpha, double* log_tr) {
    const int d = rho.quantum_dim();
    Matrix m = Matrix::Zero(d, d);
    for (int x = 0; x < rho.classical_dim(); ++x) {
        if (rho.p[x] <= 0.0) continue;
        const Spectrum es = eig_hermitian(rho.blocks[x]);
        for (int i = 0; i < d; ++i) {
            if (es.values(i) > 0.0) {
                m += std::pow(rho.p[x] * es.values(i), alpha) * es.vectors.col(i) *
                     es.vectors.col(i).adjoint();
            }
        }
    }
    const Spectrum es = eig_hermitian(HermitianOperator(m));
    Matrix root = Matrix::Zero(d, d);
    double tr = 0.0;
    for (int i = 0; i < d; ++i) {
        if (es.values(i) > 0.0) {
            const double r = std::pow(es.values(i), 1.0 / alpha);
            root += r * es.vectors.col(i) * es.vectors.col(i).adjoint();
            tr += r;
        }
    }
    if (log_tr) *log_tr = tr > 0.0 ? std::log(tr) : -kInf;
    if (tr <= 0.0) return HermitianOperator(Matrix::Identity(d, d) * (1.0 / d));
    return HermitianOperator(root * (1.0 / tr));
}

// inf over states sigma_E of D(rho_XE || I (x) sigma_E) for a smooth
// per-sigma evaluator, by Nelder-Mead from several seeds.
double minimize_over_sigma(const CQState& rho, double alpha,
                           const std::function<double(const HermitianOperator&)>& f) {
    const int d = rho.quantum_dim();
    std::vector<HermitianOperator> seeds;
    seeds.push_back(rho.reduced());
    seeds.push_back(HermitianOperator(Matrix::Identity(d, d) * (1.0 / d)));
    seeds.push_back(sibson_state(rho, alpha, nullptr));
    double best = kInf;
    const auto obj = [&](const RealVector& v) {
        const double val = f(params_to_density(v, d));
        return std::isfinite(val) ? val : 1e100;
    };
    for (const auto& seed : seeds) {
        best = std::min(best, f(seed));
        const RealVector opt = nelder_mead(obj, density_to_params(seed, d), 0.05, 400);
        best = std::min(best, obj(opt));
    }
    return best;
}

// Classicalize E by measuring in the rho_E eigenbasis; returns the joint
// distribution and the reference weights (eigenvalues of rho_E).
void classicalize(const CQState& rho, std::vector<double>& joint,
                  std::vector<double>& ref, std::vector<HermitianOperator>& diag_blocks) {
    const int nx = rho.classical_dim();
    const int de = rho.quantum_dim();
    const Spectrum es = eig_hermitian(rho.reduced());
    joint.assign(nx * de, 0.0);
    ref.assign(nx * de, 0.0);
    diag_blocks.clear();
    for (int x = 0; x < nx; ++x) {
        Matrix b = Matrix::Zero(de, de);
        for (int e = 0; e < de; ++e) {
            const Eigen::VectorXcd v = es.vectors.col(e);
            const double pe =
                std::max(0.0, (v.adjoint() * rho.blocks[x].mat() * v).real().value());
            joint[x * de + e] = rho.p[x] * pe;
            ref[x * de + e] = es.values(e);
            b(e, e) = pe;
        }
        diag_blocks.push_back(HermitianOperator(b));
    }
}

}  // namespace

double conditional_entropy(const CQState& rho, CondKind kind, CondVariant variant,
                           double eps, double alpha) {
    const HermitianOperator rho_e = rho.reduced();
    const int nx = rho.classical_dim();
    switch (kind) {
        case CondKind::dmax: {
            if (variant == CondVariant::down) {
                double worst = -kInf;
                for (int x = 0; x < nx; ++x) {
                    worst = std::max(worst, dmax(rho.weighted_block(x), rho_e));
                }
                return -worst;
            }
            return conditional_smooth_sdp(rho, CondProgram::hmin_up, 0.0).value.nats;
        }
        case CondKind::dmax_smooth_measured: {
            if (variant == CondVariant::down) {
                return -dmax_smooth_measured_blocks(rho.p, rho.blocks, rho_e, eps).nats;
            }
            return conditional_smooth_sdp(rho, CondProgram::hmin_up, eps).value.nats;
        }
        case CondKind::d2_measured: {
            if (variant == CondVariant::down) {
                double q = 0.0;
                for (int x = 0; x < nx; ++x) {
                    if (rho.p[x] <= 0.0) continue;
                    const double b = bures_seminorm_sq(rho_e, rho.blocks[x]);
                    if (std::isinf(b)) return -kInf;
                    q += rho.p[x] * rho.p[x] * b;
                }
                return -std::log(q);
            }
            return conditional_smooth_sdp(rho, CondProgram::h2_up, 0.0).value.nats;
        }
        case CondKind::d2_smooth_measured: {
            return conditional_smooth_sdp(
                       rho, variant == CondVariant::down ? CondProgram::h2_down
                                                         : CondProgram::h2_up,
                       eps)
                .value.nats;
        }
        case CondKind::h2_classicalized: {
            std::vector<double> joint, ref;
            std::vector<HermitianOperator> diag_blocks;
            classicalize(rho, joint, ref, diag_blocks);
            if (variant == CondVariant::down) {
                return -classical_smooth_collision(joint, ref, eps).nats;
            }
            const CQState classical(rho.p, diag_blocks);
            return conditional_smooth_sdp(classical, CondProgram::h2_up, eps).value.nats;
        }
        case CondKind::sandwiched_alpha: {
            if (variant == CondVariant::down) return -sandwiched_cq(rho, rho_e, alpha);
            return -minimize_over_sigma(rho, alpha, [&](const HermitianOperator& s) {
                return sandwiched_cq(rho, s, alpha);
            });
        }
        case CondKind::petz_alpha: {
            if (variant == CondVariant::down) return -petz_cq(rho, rho_e, alpha);
            if (alpha == 1.0) {
                return -minimize_over_sigma(rho, alpha, [&](const HermitianOperator& s) {
                    return petz_cq(rho, s, alpha);
                });
            }
            double log_tr = 0.0;
            sibson_state(rho, alpha, &log_tr);
            return -(alpha / (alpha - 1.0)) * log_tr;
        }
    }
    throw InvalidInput("conditional_entropy: unknown kind");
}

}  // namespace smollision
