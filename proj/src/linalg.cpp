#include "smollision/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace smollision {

namespace {

void check_finite(const Matrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
                throw InvalidInput("matrix has non-finite entries");
            }
        }
    }
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidInput("matrix must be square and non-empty");
    }
    check_finite(a);
    mat_ = 0.5 * (a + a.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    return HermitianOperator(mat_ + other.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    return HermitianOperator(mat_ - other.mat_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
    return HermitianOperator(mat_ * s);
}

Spectrum eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
    if (solver.info() != Eigen::Success) {
        throw InvalidInput("eigendecomposition failed to converge");
    }
    const int d = h.dim();
    Spectrum s;
    s.values.resize(d);
    s.vectors.resize(d, d);
    // Eigen returns ascending order; reverse to descending.
    for (int k = 0; k < d; ++k) {
        s.values(k) = solver.eigenvalues()(d - 1 - k);
        s.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
    }
    // Deterministic phase: first component of magnitude > 1e-12 made real
    // positive.
    for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i) {
            const Complex v = s.vectors(i, k);
            if (std::abs(v) > 1e-12) {
                s.vectors.col(k) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return s;
}

std::pair<HermitianOperator, double> positive_part(const HermitianOperator& h) {
    const Spectrum s = eig_hermitian(h);
    const double tau = support_cutoff(s.values(0));
    Matrix out = Matrix::Zero(h.dim(), h.dim());
    double tr = 0.0;
    for (int k = 0; k < h.dim(); ++k) {
        if (s.values(k) > tau) {
            out += s.values(k) * s.vectors.col(k) * s.vectors.col(k).adjoint();
            tr += s.values(k);
        }
    }
    return {HermitianOperator(out), tr};
}

double plus_norm(const HermitianOperator& x) {
    const Spectrum s = eig_hermitian(x);
    double abs_sum = 0.0;
    double tr = 0.0;
    for (int k = 0; k < x.dim(); ++k) {
        abs_sum += std::abs(s.values(k));
        tr += s.values(k);
    }
    return 0.5 * std::abs(tr) + 0.5 * abs_sum;
}

FidelityResult fidelity_purified(const HermitianOperator& rho,
                                 const HermitianOperator& rho_prime) {
    if (rho.dim() != rho_prime.dim()) {
        throw InvalidInput("fidelity_purified: dimension mismatch");
    }
    const Spectrum sr = eig_hermitian(rho);
    const Spectrum sp = eig_hermitian(rho_prime);
    const double tau_r = support_cutoff(sr.values(0));
    const double tau_p = support_cutoff(sp.values(0));
    if (sr.values(rho.dim() - 1) < -tau_r || sp.values(rho.dim() - 1) < -tau_p) {
        throw InvalidInput("fidelity_purified: inputs must be positive semidefinite");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-9) {
        throw InvalidInput("fidelity_purified: first argument must have unit trace");
    }
    if (rho_prime.trace() > rho.trace() + 1e-9) {
        throw InvalidInput("fidelity_purified: second argument must have trace <= 1");
    }
    Matrix sqrt_rho = Matrix::Zero(rho.dim(), rho.dim());
    for (int k = 0; k < rho.dim(); ++k) {
        if (sr.values(k) > tau_r) {
            sqrt_rho += std::sqrt(sr.values(k)) * sr.vectors.col(k) * sr.vectors.col(k).adjoint();
        }
    }
    const HermitianOperator m(sqrt_rho * rho_prime.mat() * sqrt_rho);
    const Spectrum sm = eig_hermitian(m);
    double root_f = 0.0;
    for (int k = 0; k < rho.dim(); ++k) {
        if (sm.values(k) > 0.0) {
            root_f += std::sqrt(sm.values(k));
        }
    }
    FidelityResult out;
    out.fidelity = root_f * root_f;
    out.purified_distance = std::sqrt(std::max(0.0, 1.0 - out.fidelity));
    return out;
}

std::optional<HermitianOperator> lyapunov_solve(const HermitianOperator& sigma,
                                                const HermitianOperator& x) {
    if (sigma.dim() != x.dim()) {
        throw InvalidInput("lyapunov_solve: dimension mismatch");
    }
    const int d = sigma.dim();
    const Spectrum ss = eig_hermitian(sigma);
    const double tau = support_cutoff(ss.values(0));
    if (ss.values(d - 1) < -tau) {
        throw InvalidInput("lyapunov_solve: sigma must be positive semidefinite");
    }
    const Matrix xt = ss.vectors.adjoint() * x.mat() * ss.vectors;
    double x_scale = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            x_scale = std::max(x_scale, std::abs(xt(i, j)));
        }
    }
    const double x_tol = 1e-10 * std::max(1.0, x_scale);
    Matrix zt = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double si = ss.values(i) > tau ? ss.values(i) : 0.0;
        for (int j = 0; j < d; ++j) {
            const double sj = ss.values(j) > tau ? ss.values(j) : 0.0;
            if (si + sj > 0.0) {
                zt(i, j) = 2.0 * xt(i, j) / (si + sj);
            } else if (std::abs(xt(i, j)) > x_tol) {
                return std::nullopt;  // kernel-kernel component: X off range
            }
        }
    }
    return HermitianOperator(ss.vectors * zt * ss.vectors.adjoint());
}

double bures_seminorm_sq(const HermitianOperator& sigma,
                         const HermitianOperator& x) {
    const auto z = lyapunov_solve(sigma, x);
    if (!z.has_value()) {
        return std::numeric_limits<double>::infinity();
    }
    return (x.mat() * z->mat()).trace().real();
}

}  // namespace smollision
