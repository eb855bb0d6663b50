// Dense Hermitian linear algebra used by every other module: deterministic
// eigendecompositions, spectral cutoffs, the positive-part norm, Uhlmann
// fidelity, and the sigma-weighted Bures seminorm via the Lyapunov equation
// sigma*Z + Z*sigma = 2X.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

namespace smollision {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotBlockDiagonal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectral cutoff rule used everywhere a kernel/support split is needed:
// an eigenvalue lambda of a matrix whose largest eigenvalue is lambda_max
// counts as zero iff lambda <= 1e-10 * max(1, lambda_max).
inline double support_cutoff(double lambda_max) {
    return 1e-10 * std::max(1.0, lambda_max);
}

class HermitianOperator {
public:
    // Symmetrizes the input as (A + A^dag)/2; rejects non-finite entries and
    // non-square shapes.
    explicit HermitianOperator(const Matrix& a);

    static HermitianOperator zero(int dim);
    static HermitianOperator identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }
    double trace() const { return mat_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator operator*(double s) const;

private:
    Matrix mat_;
};

// Eigenvalues in descending order; eigenvectors as matching columns with a
// deterministic phase (first component of magnitude > 1e-12 made real
// positive).
struct Spectrum {
    RealVector values;
    Matrix vectors;
};

Spectrum eig_hermitian(const HermitianOperator& h);

// Projection onto the strictly positive spectral part, with eigenvalues at or
// below the support cutoff dropped. Returns the projected operator and its
// trace.
std::pair<HermitianOperator, double> positive_part(const HermitianOperator& h);

// ||X||_+ = |Tr X|/2 + ||X||_1/2; equals Tr X_+ for traceless X and the
// subnormalized-state distance 1/2||rho - rho'||_1 + 1/2(Tr rho - Tr rho')
// when applied to rho - rho' with Tr rho' <= Tr rho.
double plus_norm(const HermitianOperator& x);

// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) rho' sqrt(rho)))^2 and purified
// distance P = sqrt(1 - F). Requires rho, rho' >= 0 up to cutoff,
// Tr rho = 1 within 1e-9, and Tr rho' <= Tr rho within 1e-9.
struct FidelityResult {
    double fidelity;
    double purified_distance;
};
FidelityResult fidelity_purified(const HermitianOperator& rho,
                                 const HermitianOperator& rho_prime);

// Solves sigma*Z + Z*sigma = 2X for Hermitian Z on the support of sigma.
// Returns nullopt iff X has a kernel-kernel component above cutoff, i.e.
// X is not in the range of the map Z -> (sigma*Z + Z*sigma)/2.
std::optional<HermitianOperator> lyapunov_solve(const HermitianOperator& sigma,
                                                const HermitianOperator& x);

// ||X||^2_{B,sigma} = Tr[X * lyapunov_solve(sigma, X)]; +infinity when X is
// not in range.
double bures_seminorm_sq(const HermitianOperator& sigma,
                         const HermitianOperator& x);

}  // namespace smollision
