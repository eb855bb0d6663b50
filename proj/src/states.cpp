#include "smollision/states.hpp"

#include "smollision/rng.hpp"

#include <Eigen/QR>

#include <cmath>

namespace smollision {

DensityMatrix::DensityMatrix(const HermitianOperator& op, bool normalized)
    : op_(op), normalized_(normalized) {
    const Spectrum s = eig_hermitian(op);
    const double tau = support_cutoff(s.values(0));
    if (s.values(op.dim() - 1) < -tau) {
        throw InvalidInput("density matrix must be positive semidefinite");
    }
    const double tr = op.trace();
    if (tr < -1e-9 || tr > 1.0 + 1e-9) {
        throw InvalidInput("density matrix trace must lie in [0, 1]");
    }
    if (normalized && std::abs(tr - 1.0) > 1e-9) {
        throw InvalidInput("normalized density matrix must have unit trace");
    }
}

CQState::CQState(std::vector<double> p_in, std::vector<HermitianOperator> blocks_in)
    : p(std::move(p_in)), blocks(std::move(blocks_in)) {
    if (p.empty() || p.size() != blocks.size()) {
        throw InvalidInput("cq state needs one block per classical symbol");
    }
    double sum = 0.0;
    for (double w : p) {
        if (w < -1e-12) throw InvalidInput("cq weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidInput("cq weights must sum to 1");
    }
    const int d = blocks[0].dim();
    for (const auto& b : blocks) {
        if (b.dim() != d) throw InvalidInput("cq blocks must share a dimension");
        if (std::abs(b.trace() - 1.0) > 1e-9) {
            throw InvalidInput("cq blocks must have unit trace");
        }
    }
}

HermitianOperator CQState::embed() const {
    const int dx = classical_dim();
    const int de = quantum_dim();
    Matrix out = Matrix::Zero(dx * de, dx * de);
    for (int x = 0; x < dx; ++x) {
        out.block(x * de, x * de, de, de) = p[x] * blocks[x].mat();
    }
    return HermitianOperator(out);
}

HermitianOperator CQState::reduced() const {
    const int de = quantum_dim();
    Matrix out = Matrix::Zero(de, de);
    for (int x = 0; x < classical_dim(); ++x) {
        out += p[x] * blocks[x].mat();
    }
    return HermitianOperator(out);
}

HermitianOperator CQState::weighted_block(int x) const {
    return blocks[x] * p[x];
}

CQState extract_cq(const HermitianOperator& rho, int dim_x, int dim_e) {
    if (rho.dim() != dim_x * dim_e) {
        throw InvalidInput("extract_cq: dimension mismatch");
    }
    for (int x = 0; x < dim_x; ++x) {
        for (int y = 0; y < dim_x; ++y) {
            if (x == y) continue;
            const Matrix blk = rho.mat().block(x * dim_e, y * dim_e, dim_e, dim_e);
            if (blk.cwiseAbs().maxCoeff() > 1e-10) {
                throw NotBlockDiagonal("state has off-diagonal classical blocks");
            }
        }
    }
    std::vector<double> p(dim_x);
    std::vector<HermitianOperator> blocks;
    blocks.reserve(dim_x);
    for (int x = 0; x < dim_x; ++x) {
        const Matrix blk = rho.mat().block(x * dim_e, x * dim_e, dim_e, dim_e);
        const double w = blk.trace().real();
        p[x] = w;
        if (w <= 1e-12) {
            blocks.push_back(HermitianOperator::identity(dim_e) * (1.0 / dim_e));
        } else {
            blocks.push_back(HermitianOperator(blk / w));
        }
    }
    return CQState(std::move(p), std::move(blocks));
}

HermitianOperator partial_trace(const HermitianOperator& rho, int dim_a, int dim_b,
                                int keep) {
    return partial_trace_multi(rho, {dim_a, dim_b}, {keep == 0, keep == 1});
}

HermitianOperator partial_trace_multi(const HermitianOperator& rho,
                                      const std::vector<int>& dims,
                                      const std::vector<bool>& keep) {
    int total = 1;
    int kept = 1;
    for (size_t f = 0; f < dims.size(); ++f) {
        total *= dims[f];
        if (keep[f]) kept *= dims[f];
    }
    if (total != rho.dim() || keep.size() != dims.size()) {
        throw InvalidInput("partial_trace_multi: dimension mismatch");
    }
    const int nf = static_cast<int>(dims.size());
    Matrix out = Matrix::Zero(kept, kept);
    std::vector<int> idx(nf, 0), jdx(nf, 0);
    for (int i = 0; i < total; ++i) {
        int rem = i;
        for (int f = nf - 1; f >= 0; --f) {
            idx[f] = rem % dims[f];
            rem /= dims[f];
        }
        for (int j = 0; j < total; ++j) {
            rem = j;
            for (int f = nf - 1; f >= 0; --f) {
                jdx[f] = rem % dims[f];
                rem /= dims[f];
            }
            bool traced_match = true;
            for (int f = 0; f < nf; ++f) {
                if (!keep[f] && idx[f] != jdx[f]) { traced_match = false; break; }
            }
            if (!traced_match) continue;
            int r = 0, c = 0;
            for (int f = 0; f < nf; ++f) {
                if (keep[f]) {
                    r = r * dims[f] + idx[f];
                    c = c * dims[f] + jdx[f];
                }
            }
            out(r, c) += rho.mat()(i, j);
        }
    }
    return HermitianOperator(out);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(kron(a.mat(), b.mat()));
}

Channel::Channel(std::vector<Matrix> kraus_in, bool trace_preserving_in)
    : kraus(std::move(kraus_in)), trace_preserving(trace_preserving_in) {
    if (kraus.empty()) throw InvalidInput("channel needs at least one Kraus operator");
    const Eigen::Index din = kraus[0].cols();
    Matrix acc = Matrix::Zero(din, din);
    for (const auto& k : kraus) {
        if (k.cols() != din) throw InvalidInput("Kraus operators must share input dimension");
        acc += k.adjoint() * k;
    }
    const Matrix gap = Matrix::Identity(din, din) - acc;
    if (trace_preserving) {
        if (gap.cwiseAbs().maxCoeff() > 1e-9) {
            throw InvalidInput("channel is not trace preserving");
        }
    } else {
        const Spectrum s = eig_hermitian(HermitianOperator(gap));
        if (s.values(din - 1) < -1e-9) {
            throw InvalidInput("channel increases trace");
        }
    }
}

HermitianOperator apply_channel(const Channel& ch, const HermitianOperator& rho) {
    if (rho.dim() != ch.dim_in()) throw InvalidInput("apply_channel: dimension mismatch");
    Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.kraus) {
        out += k * rho.mat() * k.adjoint();
    }
    return HermitianOperator(out);
}

namespace {

Matrix ginibre(int rows, int cols, Prng& gen) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            g(i, j) = gen.next_complex_gaussian();
        }
    }
    return g;
}

}  // namespace

HermitianOperator sample_hermitian(int dim, std::uint64_t seed) {
    Prng gen(seed);
    const Matrix g = ginibre(dim, dim, gen);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

HermitianOperator sample_density(int dim, std::uint64_t seed) {
    Prng gen(seed);
    const Matrix g = ginibre(dim, dim, gen);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return HermitianOperator(w);
}

HermitianOperator sample_pure(int dim, std::uint64_t seed) {
    Prng gen(seed);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gen.next_complex_gaussian();
    v /= v.norm();
    return HermitianOperator(v * v.adjoint());
}

std::vector<double> sample_distribution(int n, std::uint64_t seed) {
    Prng gen(seed);
    std::vector<double> p(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = -std::log(gen.next_double());
        sum += p[i];
    }
    for (int i = 0; i < n; ++i) p[i] /= sum;
    return p;
}

CQState sample_cq(int dim_x, int dim_e, std::uint64_t seed) {
    std::vector<double> p = sample_distribution(dim_x, Prng::substream(seed, 0).next_u64());
    std::vector<HermitianOperator> blocks;
    blocks.reserve(dim_x);
    for (int x = 0; x < dim_x; ++x) {
        blocks.push_back(sample_density(dim_e, Prng::substream(seed, 1 + x).next_u64()));
    }
    return CQState(std::move(p), std::move(blocks));
}

Matrix sample_haar_unitary(int dim, std::uint64_t seed) {
    Prng gen(seed);
    const Matrix g = ginibre(dim, dim, gen);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

Channel sample_channel(int dim, int env_dim, std::uint64_t seed) {
    if (env_dim < 1 || env_dim > 2) throw InvalidInput("sample_channel: env_dim must be 1 or 2");
    Prng gen(seed);
    const Matrix g = ginibre(dim * env_dim, dim, gen);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Matrix v(dim * env_dim, dim);
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        v.col(j) = q.col(j) * ((a > 0.0) ? d / a : Complex(1.0, 0.0));
    }
    // Row (o, e) of the isometry is indexed o * env_dim + e.
    std::vector<Matrix> kraus;
    for (int e = 0; e < env_dim; ++e) {
        Matrix k(dim, dim);
        for (int o = 0; o < dim; ++o) {
            k.row(o) = v.row(o * env_dim + e);
        }
        kraus.push_back(k);
    }
    return Channel(std::move(kraus), true);
}

}  // namespace smollision
