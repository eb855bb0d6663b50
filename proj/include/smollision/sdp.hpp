// Dense semidefinite programming in equality standard form
//
//   minimize    sum_b <C_b, X_b> + c_lin . x
//   subject to  sum_b <A_{i,b}, X_b> + a_{i,lin} . x = rhs_i,   i = 1..m
//               X_b >= 0 (complex Hermitian blocks), x >= 0 (orthant)
//
// solved by an infeasible-start primal-dual interior-point iteration with
// Nesterov-Todd scaling and Mehrotra predictor-corrector steps. Complex
// Hermitian blocks are handled through the real-symmetric doubling embedding
// [[Re, -Im], [Im, Re]] with the objective rescaled so the reported values
// match the complex program.

#pragma once

#include "smollision/linalg.hpp"

#include <string>
#include <vector>

namespace smollision::sdp {

struct ConstraintEntry {
    int block;
    int row;
    int col;
    Complex coeff;  // contributes coeff * E_rc + conj(coeff) * E_cr (row != col)
};

struct Constraint {
    std::vector<ConstraintEntry> entries;
    std::vector<std::pair<int, double>> lin;  // (orthant index, coefficient)
    double rhs = 0.0;
};

struct SdpProblem {
    std::vector<int> block_dims;
    int lin_dim = 0;
    std::vector<Matrix> cost;  // Hermitian, one per block
    std::vector<double> cost_lin;
    std::vector<Constraint> constraints;

    int add_block(int dim);
    int add_lin();
    Constraint& new_constraint(double rhs);
    void add_cost(int block, const Matrix& c);
    void add_cost_lin(int index, double c);

    // Appends the d*d real constraints pinning a block to a fixed Hermitian
    // matrix: X_blk(i,i) = target(i,i), 2 Re X_blk(i,j) and 2 Im X_blk(i,j)
    // for i < j.
    void pin_block(int block, const Matrix& target);
};

enum class SdpStatus {
    optimal,
    primal_infeasible,
    unbounded,
    max_iterations,
};

struct SdpSolution {
    SdpStatus status = SdpStatus::max_iterations;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    std::vector<Matrix> x_blocks;  // complex Hermitian primal solution
    std::vector<double> x_lin;
    std::vector<double> y;
    double gap = 0.0;             // relative complementarity gap
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
};

struct SdpOptions {
    double tol = 1e-8;
    int max_iterations = 200;
    double step_fraction = 0.98;
    bool verbose = false;
};

SdpSolution sdp_solve(const SdpProblem& prob, const SdpOptions& opts = {});

// Real-symmetric doubling embedding of every complex block (dimension 2n,
// coefficients scaled by 1/2 so inner products match the complex program).
// Blocks that are already real pass through unchanged only in value, not in
// shape: every block is doubled for uniformity.
SdpProblem real_embed(const SdpProblem& prob);

// SDPA sparse format (.dat-s) export/import of the real-embedded problem.
// The file stores F0 = C, F_i = A_i and the objective vector b, i.e. the data
// of min <C,X> s.t. <A_i,X> = b_i over X >= 0 (the equality-constrained side
// of the SDPA pair). import_sdpa(export_sdpa(p)) round-trips the embedding.
void export_sdpa(const SdpProblem& prob, const std::string& path);
SdpProblem import_sdpa(const std::string& path);

}  // namespace smollision::sdp
