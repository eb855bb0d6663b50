// Density matrices, classical-quantum states with explicit block structure,
// quantum channels in Kraus form, and seeded random instance generators.
// Composite indices always order the classical / first factor as the major
// index: (x, e) -> x * d_E + e.

#pragma once

#include "smollision/linalg.hpp"

#include <cstdint>
#include <vector>

namespace smollision {

class DensityMatrix {
public:
    // Validates positivity up to cutoff and trace in [0, 1 + 1e-9]; when
    // `normalized` the trace must be 1 within 1e-9.
    explicit DensityMatrix(const HermitianOperator& op, bool normalized = true);

    const HermitianOperator& op() const { return op_; }
    int dim() const { return op_.dim(); }
    bool normalized() const { return normalized_; }

private:
    HermitianOperator op_;
    bool normalized_;
};

struct CQState {
    std::vector<double> p;                   // weights, sum 1 within 1e-9
    std::vector<HermitianOperator> blocks;   // unit-trace conditional states

    CQState(std::vector<double> p_in, std::vector<HermitianOperator> blocks_in);

    int classical_dim() const { return static_cast<int>(p.size()); }
    int quantum_dim() const { return blocks.empty() ? 0 : blocks[0].dim(); }

    // rho_XE = sum_x p(x) |x><x| (x) rho_x on dimension |X| * d_E.
    HermitianOperator embed() const;
    // rho_E = sum_x p(x) rho_x.
    HermitianOperator reduced() const;
    // Weighted block p(x) rho_x.
    HermitianOperator weighted_block(int x) const;
};

// Inverse of CQState::embed. Throws NotBlockDiagonal if any off-diagonal
// classical block has an entry of magnitude > 1e-10. Blocks of classical
// weight <= 1e-12 are stored as maximally mixed with weight as found.
CQState extract_cq(const HermitianOperator& rho, int dim_x, int dim_e);

// Partial trace over a two-factor product; keep = 0 keeps the first factor.
HermitianOperator partial_trace(const HermitianOperator& rho, int dim_a, int dim_b,
                                int keep);

// Partial trace over an arbitrary factorization; keep[i] selects the factors
// that remain, in their original order.
HermitianOperator partial_trace_multi(const HermitianOperator& rho,
                                      const std::vector<int>& dims,
                                      const std::vector<bool>& keep);

Matrix kron(const Matrix& a, const Matrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

struct Channel {
    std::vector<Matrix> kraus;
    bool trace_preserving;  // sum K^dag K = I within 1e-9 (<= I when false)

    Channel(std::vector<Matrix> kraus_in, bool trace_preserving_in = true);

    int dim_in() const { return static_cast<int>(kraus[0].cols()); }
    int dim_out() const { return static_cast<int>(kraus[0].rows()); }
};

HermitianOperator apply_channel(const Channel& ch, const HermitianOperator& rho);

// Random instances. All draws are deterministic functions of the seed.
HermitianOperator sample_hermitian(int dim, std::uint64_t seed);
// Ginibre construction G G^dag / Tr.
HermitianOperator sample_density(int dim, std::uint64_t seed);
HermitianOperator sample_pure(int dim, std::uint64_t seed);
// Dirichlet(1, ..., 1) weights with independent Ginibre blocks.
CQState sample_cq(int dim_x, int dim_e, std::uint64_t seed);
std::vector<double> sample_distribution(int n, std::uint64_t seed);
// Haar unitary via QR of a Ginibre matrix with the R-diagonal phase fix.
Matrix sample_haar_unitary(int dim, std::uint64_t seed);
// Channel from a random isometry into dim * env_dim, tracing out the
// environment; env_dim in {1, 2}.
Channel sample_channel(int dim, int env_dim, std::uint64_t seed);

}  // namespace smollision
