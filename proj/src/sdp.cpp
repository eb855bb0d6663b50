#include "smollision/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace smollision::sdp {

int SdpProblem::add_block(int dim) {
    block_dims.push_back(dim);
    cost.push_back(Matrix::Zero(dim, dim));
    return static_cast<int>(block_dims.size()) - 1;
}

int SdpProblem::add_lin() {
    cost_lin.push_back(0.0);
    return lin_dim++;
}

Constraint& SdpProblem::new_constraint(double rhs) {
    constraints.push_back(Constraint{});
    constraints.back().rhs = rhs;
    return constraints.back();
}

void SdpProblem::add_cost(int block, const Matrix& c) {
    cost[block] += c;
}

void SdpProblem::add_cost_lin(int index, double c) {
    cost_lin[index] += c;
}

void SdpProblem::pin_block(int block, const Matrix& target) {
    const int d = block_dims[block];
    for (int i = 0; i < d; ++i) {
        Constraint& con = new_constraint(target(i, i).real());
        con.entries.push_back({block, i, i, 1.0});
        for (int j = i + 1; j < d; ++j) {
            Constraint& cre = new_constraint(2.0 * target(i, j).real());
            cre.entries.push_back({block, i, j, 1.0});
            Constraint& cim = new_constraint(2.0 * target(i, j).imag());
            cim.entries.push_back({block, i, j, Complex(0.0, 1.0)});
        }
    }
}

namespace {

using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

struct SparseSym {
    // (i, j, v) with i <= j; represents v at (i,j) and (j,i).
    std::vector<std::tuple<int, int, double>> entries;
};

struct RealProblem {
    std::vector<int> dims;
    int lin_dim = 0;
    std::vector<RMatrix> cost;
    RVector cost_lin;
    // constraint -> block -> sparse part (only touched blocks present)
    std::vector<std::vector<std::pair<int, SparseSym>>> parts;
    std::vector<std::vector<std::pair<int, double>>> lin_parts;
    RVector rhs;
};

void add_real_entry(std::vector<std::pair<int, SparseSym>>& parts, int block, int i,
                    int j, double v) {
    if (v == 0.0) return;
    if (i > j) std::swap(i, j);
    for (auto& [b, sp] : parts) {
        if (b == block) {
            for (auto& [ei, ej, ev] : sp.entries) {
                if (ei == i && ej == j) {
                    ev += v;
                    return;
                }
            }
            sp.entries.push_back({i, j, v});
            return;
        }
    }
    parts.push_back({block, SparseSym{{{i, j, v}}}});
}

RMatrix embed_dense(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    RMatrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = 0.5 * a.real();
    out.bottomRightCorner(n, n) = 0.5 * a.real();
    out.topRightCorner(n, n) = -0.5 * a.imag();
    out.bottomLeftCorner(n, n) = 0.5 * a.imag();
    return out;
}

RealProblem build_real(const SdpProblem& prob) {
    RealProblem rp;
    for (int d : prob.block_dims) rp.dims.push_back(2 * d);
    rp.lin_dim = prob.lin_dim;
    for (size_t b = 0; b < prob.cost.size(); ++b) {
        rp.cost.push_back(embed_dense(prob.cost[b]));
    }
    rp.cost_lin = Eigen::Map<const RVector>(prob.cost_lin.data(),
                                            static_cast<Eigen::Index>(prob.cost_lin.size()));
    const int m = static_cast<int>(prob.constraints.size());
    rp.parts.resize(m);
    rp.lin_parts.resize(m);
    rp.rhs.resize(m);
    for (int i = 0; i < m; ++i) {
        const Constraint& con = prob.constraints[i];
        rp.rhs(i) = con.rhs;
        rp.lin_parts[i] = con.lin;
        for (const ConstraintEntry& e : con.entries) {
            const int n = prob.block_dims[e.block];
            const double re = 0.5 * e.coeff.real();
            const double im = 0.5 * e.coeff.imag();
            if (e.row == e.col) {
                add_real_entry(rp.parts[i], e.block, e.row, e.row, re);
                add_real_entry(rp.parts[i], e.block, n + e.row, n + e.row, re);
            } else {
                add_real_entry(rp.parts[i], e.block, e.row, e.col, re);
                add_real_entry(rp.parts[i], e.block, n + e.row, n + e.col, re);
                add_real_entry(rp.parts[i], e.block, e.row, n + e.col, -im);
                add_real_entry(rp.parts[i], e.block, e.col, n + e.row, im);
            }
        }
    }
    return rp;
}

// The iteration runs in extended precision end to end.  Near convergence the
// NT scaling W has norm ~ 1/sqrt(mu) in the directions where x stays large
// while s vanishes (pinned blocks force whole blocks into that regime), so
// products like W*A*W amplify unit roundoff by ~1/mu; with double arithmetic
// that caps the reachable gap around 1e-7 on such programs.  The blocks here
// are small enough that long double costs nothing measurable.
long double sparse_inner(const SparseSym& a, const LMatrix& y) {
    long double acc = 0.0L;
    for (const auto& [i, j, v] : a.entries) {
        const long double vl = v;
        acc += (i == j) ? vl * y(i, i) : 2.0L * vl * y(i, j);
    }
    return acc;
}

void sparse_add_to(const SparseSym& a, long double scale, LMatrix& out) {
    for (const auto& [i, j, v] : a.entries) {
        out(i, j) += scale * static_cast<long double>(v);
        if (i != j) out(j, i) += scale * static_cast<long double>(v);
    }
}

// W * A * W for sparse symmetric A and dense symmetric W.
LMatrix scale_sparse(const SparseSym& a, const LMatrix& w) {
    LMatrix out = LMatrix::Zero(w.rows(), w.cols());
    for (const auto& [i, j, v] : a.entries) {
        const long double vl = v;
        out.noalias() += vl * (w.col(i) * w.col(j).transpose());
        if (i != j) out.noalias() += vl * (w.col(j) * w.col(i).transpose());
    }
    return out;
}

struct BlockState {
    std::vector<LMatrix> mats;
    LVector lin;
};

struct Scaling {
    std::vector<LMatrix> w;        // NT scaling point, W S W = X
    std::vector<LMatrix> w_half;   // W^{1/2}
    std::vector<LMatrix> v_basis;  // eigenbasis of V = W^{1/2} S W^{1/2}
    std::vector<LVector> v_vals;
    std::vector<LMatrix> s_inv;
    LVector w_lin;  // sqrt(x/s)
};

// Every cost and constraint matrix produced by build_real commutes with the
// complex-structure conjugation J [[a,b],[c,d]] J^T = [[d,-c],[-b,a]], so the
// exact iterates stay in the [[Re,-Im],[Im,Re]] subspace and averaging with
// the conjugate only strips roundoff.  Without this, noise accumulates in the
// zero-curvature directions the embedding introduces (where x stays O(1)
// while s vanishes) and the scaled steps lose feasibility near convergence.
void project_complex(LMatrix& z) {
    const int n = static_cast<int>(z.rows()) / 2;
    const LMatrix tl = 0.5L * (z.topLeftCorner(n, n) + z.bottomRightCorner(n, n));
    const LMatrix tr = 0.5L * (z.topRightCorner(n, n) - z.bottomLeftCorner(n, n));
    z.topLeftCorner(n, n) = tl;
    z.bottomRightCorner(n, n) = tl;
    z.topRightCorner(n, n) = tr;
    z.bottomLeftCorner(n, n) = -tr;
}

long double max_step(const LMatrix& x, const LMatrix& dx) {
    Eigen::LLT<LMatrix> llt(x);
    LMatrix l = llt.matrixL();
    const LMatrix t = l.triangularView<Eigen::Lower>().solve(
        l.triangularView<Eigen::Lower>().solve(dx).transpose());
    Eigen::SelfAdjointEigenSolver<LMatrix> es(t, Eigen::EigenvaluesOnly);
    const long double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-16L) return std::numeric_limits<long double>::infinity();
    return -1.0L / lmin;
}

struct Residuals {
    LVector rp;
    std::vector<LMatrix> rd;
    LVector rd_lin;
    long double mu;
};

SdpSolution solve_real(const RealProblem& rp, const SdpOptions& opts) {
    const int m = static_cast<int>(rp.rhs.size());
    const int nb = static_cast<int>(rp.dims.size());
    long double nu = rp.lin_dim;
    for (int d : rp.dims) nu += d;
    std::vector<LMatrix> cost;
    cost.reserve(nb);
    for (const RMatrix& c : rp.cost) cost.push_back(c.cast<long double>());
    const LVector cost_lin = rp.cost_lin.cast<long double>();
    const LVector rhs = rp.rhs.cast<long double>();

    // block -> constraints touching it
    std::vector<std::vector<int>> touching(nb);
    for (int i = 0; i < m; ++i) {
        for (const auto& [b, sp] : rp.parts[i]) touching[b].push_back(i);
    }
    std::vector<std::vector<int>> lin_touching(rp.lin_dim);
    for (int i = 0; i < m; ++i) {
        for (const auto& [k, v] : rp.lin_parts[i]) lin_touching[k].push_back(i);
    }
    const auto part_of = [&](int con, int blk) -> const SparseSym* {
        for (const auto& [b, sp] : rp.parts[con]) {
            if (b == blk) return &sp;
        }
        return nullptr;
    };

    long double c_norm = 0.0L;
    for (const auto& c : cost) c_norm += c.squaredNorm();
    c_norm = std::sqrt(c_norm + cost_lin.squaredNorm());
    const long double b_norm = rhs.norm();
    const long double b_max = m > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0L;

    BlockState x, s;
    const long double omega_x = std::min(1e6L, std::max(10.0L, 2.0L * b_max));
    const long double omega_s = std::min(1e6L, std::max(10.0L, 2.0L * c_norm));
    for (int d : rp.dims) {
        x.mats.push_back(omega_x * LMatrix::Identity(d, d));
        s.mats.push_back(omega_s * LMatrix::Identity(d, d));
    }
    x.lin = LVector::Constant(rp.lin_dim, omega_x);
    s.lin = LVector::Constant(rp.lin_dim, omega_s);
    LVector y = LVector::Zero(m);

    const auto apply_a = [&](const BlockState& z) {
        LVector out(m);
        for (int i = 0; i < m; ++i) {
            long double acc = 0.0L;
            for (const auto& [b, sp] : rp.parts[i]) acc += sparse_inner(sp, z.mats[b]);
            for (const auto& [k, v] : rp.lin_parts[i]) acc += v * z.lin(k);
            out(i) = acc;
        }
        return out;
    };
    const auto apply_at = [&](const LVector& yy) {
        BlockState out;
        for (int d : rp.dims) out.mats.push_back(LMatrix::Zero(d, d));
        out.lin = LVector::Zero(rp.lin_dim);
        for (int i = 0; i < m; ++i) {
            if (yy(i) == 0.0L) continue;
            for (const auto& [b, sp] : rp.parts[i]) sparse_add_to(sp, yy(i), out.mats[b]);
            for (const auto& [k, v] : rp.lin_parts[i]) out.lin(k) += yy(i) * v;
        }
        return out;
    };
    const auto compute_residuals = [&]() {
        Residuals r;
        r.rp = rhs - apply_a(x);
        const BlockState aty = apply_at(y);
        r.rd.resize(nb);
        for (int b = 0; b < nb; ++b) r.rd[b] = cost[b] - s.mats[b] - aty.mats[b];
        r.rd_lin = cost_lin - s.lin - aty.lin;
        long double comp = x.lin.dot(s.lin);
        for (int b = 0; b < nb; ++b) comp += (x.mats[b].array() * s.mats[b].array()).sum();
        r.mu = comp / nu;
        return r;
    };

    SdpSolution best;
    long double best_score = std::numeric_limits<long double>::infinity();
    int last_improvement = 0;
    double cur_gap = 0.0, cur_rp = 0.0, cur_rd = 0.0;
    const auto record = [&](const Residuals& r, int iter) {
        long double pobj = cost_lin.dot(x.lin);
        for (int b = 0; b < nb; ++b) pobj += (cost[b].array() * x.mats[b].array()).sum();
        const long double dobj = rhs.dot(y);
        const long double denom = 1.0L + std::abs(pobj) + std::abs(dobj);
        const long double relgap = (r.mu * nu) / denom;
        const long double relp = r.rp.norm() / (1.0L + b_norm);
        long double rd_norm = r.rd_lin.squaredNorm();
        for (int b = 0; b < nb; ++b) rd_norm += r.rd[b].squaredNorm();
        const long double reld = std::sqrt(rd_norm) / (1.0L + c_norm);
        const long double score = std::max({relgap, relp, reld});
        cur_gap = static_cast<double>(relgap);
        cur_rp = static_cast<double>(relp);
        cur_rd = static_cast<double>(reld);
        if (score < best_score) {
            best_score = score;
            last_improvement = iter;
            // Report the Lagrangian-corrected objectives: residual infeasibility
            // biases <C,X> by roughly y.rp (and b.y by <rd,x>), which can exceed
            // the duality gap by the size of the multipliers.  The corrected
            // pair brackets the optimum to first order in the residuals.
            long double xdotrd = x.lin.dot(r.rd_lin);
            for (int b = 0; b < nb; ++b) {
                xdotrd += (x.mats[b].array() * r.rd[b].array()).sum();
            }
            best.primal_objective = static_cast<double>(pobj + y.dot(r.rp));
            best.dual_objective = static_cast<double>(dobj + xdotrd);
            best.gap = static_cast<double>(relgap);
            best.primal_residual = static_cast<double>(relp);
            best.dual_residual = static_cast<double>(reld);
            best.iterations = iter;
            best.x_blocks.clear();
            for (int b = 0; b < nb; ++b) {
                const int n = rp.dims[b] / 2;
                const LMatrix& xr = x.mats[b];
                Matrix xc(n, n);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        xc(i, j) =
                            Complex(static_cast<double>(0.5L * (xr(i, j) + xr(n + i, n + j))),
                                    static_cast<double>(0.5L * (xr(n + i, j) - xr(i, n + j))));
                    }
                }
                best.x_blocks.push_back(xc);
            }
            best.x_lin.resize(rp.lin_dim);
            for (int k = 0; k < rp.lin_dim; ++k) {
                best.x_lin[k] = static_cast<double>(x.lin(k));
            }
            best.y.resize(m);
            for (int i = 0; i < m; ++i) best.y[i] = static_cast<double>(y(i));
        }
        return score;
    };

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const Residuals res = compute_residuals();
        const long double score = record(res, iter);
        if (opts.verbose) {
            std::printf("  it %3d  mu %9.3e  gap %9.3e  rp %9.3e  rd %9.3e\n", iter,
                        static_cast<double>(res.mu), cur_gap, cur_rp, cur_rd);
        }
        if (score <= opts.tol) {
            best.status = SdpStatus::optimal;
            return best;
        }
        if (!std::isfinite(score) || !std::isfinite(res.mu)) break;
        if (iter - last_improvement > 40) break;  // stalled at numerical floor

        // Primal infeasibility: y approaches a dual improving ray.
        const long double by = rhs.dot(y);
        if (by > 1e-6L * (1.0L + b_norm)) {
            long double cert = 0.0L;
            for (int b = 0; b < nb; ++b) cert += (cost[b] - res.rd[b]).squaredNorm();
            cert += (cost_lin - res.rd_lin).squaredNorm();
            cert = std::sqrt(cert);
            if (by / std::max(cert, 1e-300L) > 1e8L) {
                best.status = SdpStatus::primal_infeasible;
                return best;
            }
        }
        // Dual infeasibility: X approaches a primal improving ray.
        {
            long double pobj = cost_lin.dot(x.lin);
            for (int b = 0; b < nb; ++b) pobj += (cost[b].array() * x.mats[b].array()).sum();
            const long double ax_norm = (rhs - res.rp).norm();
            if (pobj < -1e-6L * (1.0L + c_norm) && -pobj / std::max(ax_norm, 1e-300L) > 1e8L) {
                best.status = SdpStatus::unbounded;
                return best;
            }
        }

        // Nesterov-Todd scaling per block.
        Scaling sc;
        bool scaling_ok = true;
        for (int b = 0; b < nb; ++b) {
            Eigen::LLT<LMatrix> lltx(x.mats[b]);
            if (lltx.info() != Eigen::Success) { scaling_ok = false; break; }
            const LMatrix l = lltx.matrixL();
            Eigen::SelfAdjointEigenSolver<LMatrix> es(l.transpose() * s.mats[b] * l);
            if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0L) {
                scaling_ok = false;
                break;
            }
            const LMatrix w = l * es.eigenvectors() *
                              es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                              es.eigenvectors().transpose() * l.transpose();
            Eigen::SelfAdjointEigenSolver<LMatrix> ew(w);
            const LMatrix w_half = ew.eigenvectors() *
                                   ew.eigenvalues().cwiseMax(0.0L).cwiseSqrt().asDiagonal() *
                                   ew.eigenvectors().transpose();
            const LMatrix v = w_half * s.mats[b] * w_half;
            Eigen::SelfAdjointEigenSolver<LMatrix> ev(v);
            sc.w.push_back(w);
            sc.w_half.push_back(w_half);
            sc.v_basis.push_back(ev.eigenvectors());
            sc.v_vals.push_back(ev.eigenvalues());
            Eigen::LLT<LMatrix> llts(s.mats[b]);
            sc.s_inv.push_back(llts.solve(LMatrix::Identity(rp.dims[b], rp.dims[b])));
        }
        if (!scaling_ok) break;
        sc.w_lin = (x.lin.array() / s.lin.array()).sqrt();

        // Schur complement M_ij = sum_b <A_i, W A_j W> + sum_k a_ik w_k^2 a_jk.
        LMatrix schur = LMatrix::Zero(m, m);
        for (int b = 0; b < nb; ++b) {
            for (int j : touching[b]) {
                const LMatrix yj = scale_sparse(*part_of(j, b), sc.w[b]);
                for (int i : touching[b]) {
                    if (i > j) continue;
                    schur(i, j) += sparse_inner(*part_of(i, b), yj);
                }
            }
        }
        for (int k = 0; k < rp.lin_dim; ++k) {
            const long double w2 = sc.w_lin(k) * sc.w_lin(k);
            for (int j : lin_touching[k]) {
                long double aj = 0.0L;
                for (const auto& [kk, v] : rp.lin_parts[j]) {
                    if (kk == k) aj = v;
                }
                for (int i : lin_touching[k]) {
                    if (i > j) continue;
                    long double ai = 0.0L;
                    for (const auto& [kk, v] : rp.lin_parts[i]) {
                        if (kk == k) ai = v;
                    }
                    schur(i, j) += ai * w2 * aj;
                }
            }
        }
        schur.triangularView<Eigen::StrictlyLower>() =
            schur.triangularView<Eigen::StrictlyUpper>().transpose();

        Eigen::LDLT<LMatrix> ldlt(schur);
        if (ldlt.info() != Eigen::Success) {
            schur.diagonal().array() += 1e-14L * (1.0L + schur.diagonal().maxCoeff());
            ldlt.compute(schur);
            if (ldlt.info() != Eigen::Success) break;
        }
        const auto solve_kkt = [&](const LVector& r) {
            LVector dy = ldlt.solve(r);
            dy += ldlt.solve(r - schur * dy);
            return dy;
        };

        // A(W R_d W) is shared by the predictor and corrector right-hand sides.
        std::vector<LMatrix> wrdw(nb);
        for (int b = 0; b < nb; ++b) wrdw[b] = sc.w[b] * res.rd[b] * sc.w[b];
        LVector a_wrdw(m);
        for (int i = 0; i < m; ++i) {
            long double acc = 0.0L;
            for (const auto& [b, sp] : rp.parts[i]) acc += sparse_inner(sp, wrdw[b]);
            for (const auto& [k, v] : rp.lin_parts[i]) {
                acc += v * sc.w_lin(k) * sc.w_lin(k) * res.rd_lin(k);
            }
            a_wrdw(i) = acc;
        }

        const auto direction = [&](const BlockState& r_c) {
            // M dy = r_p - A(R_c) + A(W R_d W); dS = R_d - A^T(dy);
            // dX = R_c - W dS W.
            LVector a_rc(m);
            for (int i = 0; i < m; ++i) {
                long double acc = 0.0L;
                for (const auto& [b, sp] : rp.parts[i]) acc += sparse_inner(sp, r_c.mats[b]);
                for (const auto& [k, v] : rp.lin_parts[i]) acc += v * r_c.lin(k);
                a_rc(i) = acc;
            }
            const LVector dy = solve_kkt(res.rp - a_rc + a_wrdw);
            const BlockState aty = apply_at(dy);
            BlockState ds, dx;
            ds.lin = res.rd_lin - aty.lin;
            dx.lin = r_c.lin.array() - sc.w_lin.array().square() * ds.lin.array();
            for (int b = 0; b < nb; ++b) {
                ds.mats.push_back(res.rd[b] - aty.mats[b]);
                dx.mats.push_back(r_c.mats[b] - sc.w[b] * ds.mats[b] * sc.w[b]);
            }
            return std::tuple<LVector, BlockState, BlockState>(dy, dx, ds);
        };

        const auto boundary = [&](const BlockState& z, const BlockState& dz) {
            long double a = std::numeric_limits<long double>::infinity();
            for (int b = 0; b < nb; ++b) a = std::min(a, max_step(z.mats[b], dz.mats[b]));
            for (int k = 0; k < rp.lin_dim; ++k) {
                if (dz.lin(k) < 0.0L) a = std::min(a, -z.lin(k) / dz.lin(k));
            }
            return a;
        };

        // Predictor aims at mu = 0.
        BlockState rc_aff;
        for (int b = 0; b < nb; ++b) rc_aff.mats.push_back(-x.mats[b]);
        rc_aff.lin = -x.lin;
        const auto [dy_aff, dx_aff, ds_aff] = direction(rc_aff);
        const long double ap_aff = std::min(1.0L, boundary(x, dx_aff));
        const long double ad_aff = std::min(1.0L, boundary(s, ds_aff));
        long double comp_aff = ((x.lin + ap_aff * dx_aff.lin).array() *
                                (s.lin + ad_aff * ds_aff.lin).array()).sum();
        for (int b = 0; b < nb; ++b) {
            comp_aff += ((x.mats[b] + ap_aff * dx_aff.mats[b]).array() *
                         (s.mats[b] + ad_aff * ds_aff.mats[b]).array()).sum();
        }
        const long double mu_aff = std::max(0.0L, comp_aff) / nu;
        const long double sigma =
            std::clamp(std::pow(mu_aff / res.mu, 3.0L), 1e-12L, 1.0L);

        // Corrector retargets sigma*mu with the second-order term evaluated in
        // the scaled space.
        BlockState rc;
        rc.lin.resize(rp.lin_dim);
        for (int k = 0; k < rp.lin_dim; ++k) {
            rc.lin(k) = sigma * res.mu / s.lin(k) - x.lin(k) -
                        dx_aff.lin(k) * ds_aff.lin(k) / s.lin(k);
        }
        for (int b = 0; b < nb; ++b) {
            const int d = rp.dims[b];
            const LMatrix& p_inv = sc.w_half[b];
            // P = W^{-1/2}: apply via solves with W^{1/2}.
            const LMatrix dxt = sc.w_half[b].ldlt().solve(
                sc.w_half[b].ldlt().solve(dx_aff.mats[b]).transpose());
            const LMatrix dst = sc.w_half[b] * ds_aff.mats[b] * sc.w_half[b];
            const LMatrix h = 0.5L * (dxt * dst + dst * dxt);
            const LMatrix ht = sc.v_basis[b].transpose() * h * sc.v_basis[b];
            LMatrix t(d, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    t(i, j) = 2.0L * ht(i, j) / (sc.v_vals[b](i) + sc.v_vals[b](j));
                }
            }
            const LMatrix corr = p_inv * (sc.v_basis[b] * t * sc.v_basis[b].transpose()) * p_inv;
            rc.mats.push_back(sigma * res.mu * sc.s_inv[b] - x.mats[b] - corr);
        }
        const auto [dy, dx, ds] = direction(rc);

        long double ap = std::min(1.0L, (long double)opts.step_fraction * boundary(x, dx));
        long double ad = std::min(1.0L, (long double)opts.step_fraction * boundary(s, ds));
        // Keep iterates strictly feasible for the cone.
        for (int tries = 0; tries < 30; ++tries) {
            bool ok = true;
            for (int b = 0; b < nb && ok; ++b) {
                Eigen::LLT<LMatrix> chk(LMatrix(x.mats[b] + ap * dx.mats[b]));
                if (chk.info() != Eigen::Success) ok = false;
            }
            if (rp.lin_dim > 0 && (x.lin + ap * dx.lin).minCoeff() <= 0.0L) ok = false;
            if (ok) break;
            ap *= 0.8L;
        }
        for (int tries = 0; tries < 30; ++tries) {
            bool ok = true;
            for (int b = 0; b < nb && ok; ++b) {
                Eigen::LLT<LMatrix> chk(LMatrix(s.mats[b] + ad * ds.mats[b]));
                if (chk.info() != Eigen::Success) ok = false;
            }
            if (rp.lin_dim > 0 && (s.lin + ad * ds.lin).minCoeff() <= 0.0L) ok = false;
            if (ok) break;
            ad *= 0.8L;
        }

        for (int b = 0; b < nb; ++b) {
            x.mats[b] += ap * dx.mats[b];
            x.mats[b] = 0.5L * (x.mats[b] + x.mats[b].transpose()).eval();
            project_complex(x.mats[b]);
            s.mats[b] += ad * ds.mats[b];
            s.mats[b] = 0.5L * (s.mats[b] + s.mats[b].transpose()).eval();
            project_complex(s.mats[b]);
        }
        x.lin += ap * dx.lin;
        s.lin += ad * ds.lin;
        y += ad * dy;
    }

    const Residuals res = compute_residuals();
    record(res, best.iterations);
    best.status = best_score <= opts.tol ? SdpStatus::optimal : SdpStatus::max_iterations;
    return best;
}

}  // namespace

SdpSolution sdp_solve(const SdpProblem& prob, const SdpOptions& opts) {
    const RealProblem rp = build_real(prob);
    SdpSolution sol = solve_real(rp, opts);
    if (sol.status == SdpStatus::primal_infeasible || sol.status == SdpStatus::unbounded) {
        return sol;
    }
    const double score1 = std::max({sol.gap, sol.primal_residual, sol.dual_residual});
    const double mag =
        std::max(std::abs(sol.primal_objective), std::abs(sol.dual_objective));
    // The stopping rule measures the gap relative to 1 + |objective|, so a
    // program whose optimum sits far from unit scale stops with a looser
    // absolute answer than the same program with a normalized cost.  When the
    // first pass lands well away from 1, re-solve once with the cost rescaled
    // and keep whichever run is tighter in the original units.
    if (score1 > 1e-2 || !(mag > 0.0) || (mag >= 0.1 && mag <= 10.0)) return sol;
    const double s = 1.0 / mag;
    RealProblem scaled = rp;
    for (RMatrix& c : scaled.cost) c *= s;
    scaled.cost_lin *= s;
    SdpSolution re = solve_real(scaled, opts);
    if (re.status == SdpStatus::primal_infeasible || re.status == SdpStatus::unbounded) {
        return sol;
    }
    const double denom_scaled =
        1.0 + std::abs(re.primal_objective) + std::abs(re.dual_objective);
    re.primal_objective /= s;
    re.dual_objective /= s;
    for (double& v : re.y) v /= s;
    const double denom =
        1.0 + std::abs(re.primal_objective) + std::abs(re.dual_objective);
    re.gap *= denom_scaled / (s * denom);
    double c_norm = 0.0;
    for (const auto& c : rp.cost) c_norm += c.squaredNorm();
    c_norm = std::sqrt(c_norm + rp.cost_lin.squaredNorm());
    re.dual_residual *= (1.0 + s * c_norm) / (s * (1.0 + c_norm));
    const double score2 = std::max({re.gap, re.primal_residual, re.dual_residual});
    if (score2 >= score1) return sol;
    re.status = score2 <= opts.tol ? SdpStatus::optimal : SdpStatus::max_iterations;
    return re;
}

SdpProblem real_embed(const SdpProblem& prob) {
    const RealProblem rp = build_real(prob);
    SdpProblem out;
    for (int d : rp.dims) out.add_block(d);
    for (int k = 0; k < rp.lin_dim; ++k) out.add_lin();
    for (size_t b = 0; b < rp.cost.size(); ++b) {
        out.cost[b] = rp.cost[b].cast<Complex>();
    }
    for (int k = 0; k < rp.lin_dim; ++k) out.cost_lin[k] = rp.cost_lin(k);
    for (size_t i = 0; i < rp.parts.size(); ++i) {
        Constraint& con = out.new_constraint(rp.rhs(static_cast<Eigen::Index>(i)));
        for (const auto& [b, sp] : rp.parts[i]) {
            for (const auto& [r, c, v] : sp.entries) {
                con.entries.push_back({b, r, c, Complex(v, 0.0)});
            }
        }
        con.lin = rp.lin_parts[i];
    }
    return out;
}

namespace {

bool is_real_problem(const SdpProblem& p) {
    for (const auto& c : p.cost) {
        if (c.imag().cwiseAbs().maxCoeff() > 0.0) return false;
    }
    for (const auto& con : p.constraints) {
        for (const auto& e : con.entries) {
            if (e.coeff.imag() != 0.0) return false;
        }
    }
    return true;
}

}  // namespace

void export_sdpa(const SdpProblem& prob, const std::string& path) {
    // Export the real-embedded problem: F0 = C, F_i = A_i, objective vector b.
    const SdpProblem re = is_real_problem(prob) ? prob : real_embed(prob);
    std::ofstream out(path);
    if (!out) throw InvalidInput("export_sdpa: cannot write " + path);
    const int m = static_cast<int>(re.constraints.size());
    const int nblocks = static_cast<int>(re.block_dims.size()) + (re.lin_dim > 0 ? 1 : 0);
    out << m << "\n" << nblocks << "\n";
    for (size_t b = 0; b < re.block_dims.size(); ++b) {
        out << re.block_dims[b] << (b + 1 < re.block_dims.size() || re.lin_dim > 0 ? " " : "");
    }
    if (re.lin_dim > 0) out << -re.lin_dim;
    out << "\n";
    char buf[64];
    for (int i = 0; i < m; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", re.constraints[i].rhs);
        out << buf << (i + 1 < m ? " " : "");
    }
    out << "\n";
    const int lin_block = static_cast<int>(re.block_dims.size()) + 1;
    const auto emit = [&](int matno, int blk, int i, int j, double v) {
        if (v == 0.0) return;
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << matno << " " << blk << " " << i + 1 << " " << j + 1 << " " << buf << "\n";
    };
    for (size_t b = 0; b < re.cost.size(); ++b) {
        for (int i = 0; i < re.block_dims[b]; ++i) {
            for (int j = i; j < re.block_dims[b]; ++j) {
                emit(0, static_cast<int>(b) + 1, i, j, re.cost[b](i, j).real());
            }
        }
    }
    for (int k = 0; k < re.lin_dim; ++k) emit(0, lin_block, k, k, re.cost_lin[k]);
    for (int c = 0; c < m; ++c) {
        for (const auto& e : re.constraints[c].entries) {
            const int i = std::min(e.row, e.col);
            const int j = std::max(e.row, e.col);
            emit(c + 1, e.block + 1, i, j, e.coeff.real());
        }
        for (const auto& [k, v] : re.constraints[c].lin) emit(c + 1, lin_block, k, k, v);
    }
}

SdpProblem import_sdpa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("import_sdpa: cannot open " + path);
    std::string line;
    const auto next_data_line = [&]() {
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '"' || line[0] == '*') continue;
            return true;
        }
        return false;
    };
    if (!next_data_line()) throw InvalidInput("import_sdpa: truncated file");
    const int m = std::stoi(line);
    if (!next_data_line()) throw InvalidInput("import_sdpa: truncated file");
    const int nblocks = std::stoi(line);
    if (!next_data_line()) throw InvalidInput("import_sdpa: truncated file");
    std::vector<int> sizes;
    {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            for (char& ch : tok) {
                if (ch == '(' || ch == ')' || ch == ',' || ch == '{' || ch == '}') ch = ' ';
            }
            std::istringstream ts(tok);
            int v;
            while (ts >> v) sizes.push_back(v);
        }
    }
    if (static_cast<int>(sizes.size()) != nblocks) {
        throw InvalidInput("import_sdpa: block count mismatch");
    }
    SdpProblem prob;
    std::vector<int> block_map(nblocks, -1);  // file block -> problem block
    int lin_block = -1;
    for (int b = 0; b < nblocks; ++b) {
        if (sizes[b] < 0) {
            if (lin_block >= 0) throw InvalidInput("import_sdpa: multiple diagonal blocks");
            lin_block = b;
            for (int k = 0; k < -sizes[b]; ++k) prob.add_lin();
        } else {
            block_map[b] = prob.add_block(sizes[b]);
        }
    }
    if (!next_data_line()) throw InvalidInput("import_sdpa: truncated file");
    {
        std::istringstream ss(line);
        for (int i = 0; i < m; ++i) {
            double v;
            if (!(ss >> v)) throw InvalidInput("import_sdpa: rhs vector too short");
            prob.new_constraint(v);
        }
    }
    int matno, blk, ii, jj;
    double val;
    while (in >> matno >> blk >> ii >> jj >> val) {
        if (matno < 0 || matno > m || blk < 1 || blk > nblocks) {
            throw InvalidInput("import_sdpa: entry out of range");
        }
        const int b = blk - 1;
        if (b == lin_block) {
            if (ii != jj) throw InvalidInput("import_sdpa: off-diagonal LP entry");
            if (matno == 0) {
                prob.add_cost_lin(ii - 1, val);
            } else {
                prob.constraints[matno - 1].lin.push_back({ii - 1, val});
            }
        } else {
            const int pb = block_map[b];
            if (matno == 0) {
                Matrix c = Matrix::Zero(prob.block_dims[pb], prob.block_dims[pb]);
                c(ii - 1, jj - 1) = val;
                if (ii != jj) c(jj - 1, ii - 1) = val;
                prob.add_cost(pb, c);
            } else {
                prob.constraints[matno - 1].entries.push_back(
                    {pb, ii - 1, jj - 1, Complex(val, 0.0)});
            }
        }
    }
    return prob;
}

}  // namespace smollision::sdp
