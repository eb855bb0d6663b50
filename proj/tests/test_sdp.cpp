#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/sdp.hpp"
#include "smollision/states.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace smollision;
using namespace smollision::sdp;

namespace {

// min <diag(1,2), X> s.t. Tr X = 1, X >= 0.
SdpProblem toy_problem() {
    SdpProblem p;
    const int b = p.add_block(2);
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 2.0;
    p.add_cost(b, c);
    Constraint& tr = p.new_constraint(1.0);
    tr.entries.push_back({b, 0, 0, 1.0});
    tr.entries.push_back({b, 1, 1, 1.0});
    return p;
}

}  // namespace

TEST_CASE("toy trace-one program") {
    const SdpSolution sol = sdp_solve(toy_problem());
    REQUIRE(sol.status == SdpStatus::optimal);
    CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sol.dual_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sol.gap <= 1e-7);
    CHECK(sol.x_blocks[0](0, 0).real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("largest eigenvalue as an epigraph program") {
    // min t s.t. t I - rho >= 0, modeled as block X = t I - rho by pinning
    // X + rho to t I: constraints X_ij + rho_ij = t delta_ij.
    for (int k = 0; k < 5; ++k) {
        const HermitianOperator rho = sample_hermitian(3, 900 + k);
        SdpProblem p;
        const int slack = p.add_block(3);
        const int tvar = p.add_lin();
        p.add_cost_lin(tvar, 1.0);
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                const Complex target = rho.mat()(i, j);
                if (i == j) {
                    Constraint& c = p.new_constraint(-target.real());
                    c.entries.push_back({slack, i, i, 1.0});
                    c.lin.push_back({tvar, -1.0});
                } else {
                    Constraint& cre = p.new_constraint(-2.0 * target.real());
                    cre.entries.push_back({slack, i, j, 1.0});
                    Constraint& cim = p.new_constraint(-2.0 * target.imag());
                    cim.entries.push_back({slack, i, j, Complex(0.0, 1.0)});
                    (void)cre;
                    (void)cim;
                }
            }
        }
        const SdpSolution sol = sdp_solve(p);
        REQUIRE(sol.status == SdpStatus::optimal);
        const double lmax = eig_hermitian(rho).values[0];
        CHECK(sol.primal_objective == doctest::Approx(lmax).epsilon(1e-6));
    }
}

TEST_CASE("complex blocks match the complex program") {
    // Pin a genuinely complex density matrix and minimize a complex cost:
    // value must be <C, rho> computed in complex arithmetic.
    const HermitianOperator rho = sample_density(3, 321);
    const HermitianOperator cost = sample_hermitian(3, 322);
    SdpProblem p;
    const int b = p.add_block(3);
    p.add_cost(b, cost.mat());
    p.pin_block(b, rho.mat());
    const SdpSolution sol = sdp_solve(p);
    REQUIRE(sol.status == SdpStatus::optimal);
    const double expect = (cost.mat() * rho.mat()).trace().real();
    CHECK(sol.primal_objective == doctest::Approx(expect).epsilon(1e-7));
    CHECK((sol.x_blocks[0] - rho.mat()).norm() <= 1e-6);
}

TEST_CASE("infeasibility is detected, not mis-reported") {
    // Tr X = -1 with X >= 0 has no feasible point.
    SdpProblem p = toy_problem();
    p.constraints[0].rhs = -1.0;
    const SdpSolution sol = sdp_solve(p);
    CHECK(sol.status == SdpStatus::primal_infeasible);
}

TEST_CASE("sdpa export/import round trip") {
    const SdpProblem p = real_embed(toy_problem());
    const std::string path = "roundtrip.dat-s";
    export_sdpa(p, path);
    const SdpProblem q = import_sdpa(path);

    REQUIRE(q.block_dims.size() == p.block_dims.size());
    for (size_t i = 0; i < p.block_dims.size(); ++i) CHECK(q.block_dims[i] == p.block_dims[i]);
    REQUIRE(q.constraints.size() == p.constraints.size());

    // Re-export must be byte identical: same structure, same numbers.
    const std::string path2 = "roundtrip2.dat-s";
    export_sdpa(q, path2);
    std::ifstream a(path), b(path2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());

    // And the imported problem solves to the same value.
    const SdpSolution sol_p = sdp_solve(p);
    const SdpSolution sol_q = sdp_solve(q);
    REQUIRE(sol_p.status == SdpStatus::optimal);
    REQUIRE(sol_q.status == SdpStatus::optimal);
    CHECK(sol_p.primal_objective == doctest::Approx(sol_q.primal_objective).epsilon(1e-9));

    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("solution certificates satisfy the declared residuals") {
    const SdpSolution sol = sdp_solve(toy_problem());
    REQUIRE(sol.status == SdpStatus::optimal);
    CHECK(sol.primal_residual <= 1e-8);
    CHECK(sol.dual_residual <= 1e-8);
    // Primal block is PSD up to tolerance.
    const Eigen::SelfAdjointEigenSolver<Matrix> es(sol.x_blocks[0]);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}
