#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/linalg.hpp"
#include "smollision/states.hpp"

#include <cmath>
#include <complex>

using namespace smollision;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

HermitianOperator plus_state() {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return HermitianOperator(m);
}

}  // namespace

TEST_CASE("hermitian constructor symmetrizes and validates") {
    Matrix m(2, 2);
    m << 1.0, Complex(0.0, 2.0), 0.0, 3.0;
    HermitianOperator h(m);
    CHECK((h.mat() - h.mat().adjoint()).norm() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(h.mat()(0, 1) == Complex(0.0, 1.0));
    CHECK(h.trace() == doctest::Approx(4.0));

    Matrix bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(HermitianOperator(bad), InvalidInput);
    Matrix nan2 = Matrix::Zero(2, 2);
    nan2(0, 0) = std::nan("");
    CHECK_THROWS_AS(HermitianOperator(nan2), InvalidInput);
}

TEST_CASE("eig_hermitian is descending, orthonormal, phase-fixed") {
    const HermitianOperator h = sample_hermitian(5, 13);
    const Spectrum s = eig_hermitian(h);
    for (int i = 0; i + 1 < 5; ++i) CHECK(s.values[i] >= s.values[i + 1]);
    CHECK((s.vectors.adjoint() * s.vectors - Matrix::Identity(5, 5)).norm() <= 1e-12);
    Matrix rebuilt = s.vectors * s.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                     s.vectors.adjoint();
    CHECK((rebuilt - h.mat()).norm() <= 1e-11);
    for (int c = 0; c < 5; ++c) {
        for (int r = 0; r < 5; ++r) {
            const Complex v = s.vectors(r, c);
            if (std::abs(v) > 1e-12) {
                CHECK(std::abs(v.imag()) <= 1e-12);
                CHECK(v.real() > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("positive_part drops the negative and near-zero spectrum") {
    const auto [pos, tr] = positive_part(HermitianOperator(diag2(1.0, -2.0)));
    CHECK(tr == doctest::Approx(1.0));
    CHECK((pos.mat() - diag2(1.0, 0.0)).norm() <= 1e-12);

    // Below the support cutoff counts as zero.
    const auto [tiny, tr2] = positive_part(HermitianOperator(diag2(1.0, 1e-14)));
    CHECK(tr2 == doctest::Approx(1.0));
    CHECK(std::abs(tiny.mat()(1, 1)) == 0.0);
}

TEST_CASE("plus_norm matches |Tr|/2 + ||.||_1/2 and the positive part") {
    const HermitianOperator x(diag2(0.3, -0.1));
    CHECK(plus_norm(x) == doctest::Approx(0.2 / 2 + 0.4 / 2));

    // Traceless: plus norm = Tr X_+.
    const HermitianOperator y(diag2(0.25, -0.25));
    CHECK(plus_norm(y) == doctest::Approx(0.25));

    // Subnormalized-state distance semantics: rho - rho' with Tr rho' < 1.
    const HermitianOperator rho(diag2(0.5, 0.5));
    const HermitianOperator rhop(diag2(0.4, 0.3));
    const double direct = plus_norm(rho - rhop);
    CHECK(direct == doctest::Approx(0.5 * 0.3 + 0.5 * 0.3));
}

TEST_CASE("fidelity and purified distance on pure states") {
    const auto same = fidelity_purified(plus_state(), plus_state());
    CHECK(same.fidelity == doctest::Approx(1.0));
    CHECK(same.purified_distance == doctest::Approx(0.0));

    const HermitianOperator zero(diag2(1.0, 0.0));
    const auto cross = fidelity_purified(plus_state(), zero);
    CHECK(cross.fidelity == doctest::Approx(0.5));
    CHECK(cross.purified_distance == doctest::Approx(std::sqrt(0.5)));

    Matrix neg = diag2(1.5, -0.5);
    CHECK_THROWS_AS(fidelity_purified(HermitianOperator(neg), zero), InvalidInput);
}

TEST_CASE("lyapunov_solve inverts sigma*Z + Z*sigma = 2X") {
    const HermitianOperator sigma = sample_density(4, 21);
    const HermitianOperator x = sample_hermitian(4, 22);
    const auto z = lyapunov_solve(sigma, x);
    REQUIRE(z.has_value());
    const Matrix lhs = sigma.mat() * z->mat() + z->mat() * sigma.mat();
    CHECK((lhs - 2.0 * x.mat()).norm() <= 1e-9);

    // sigma = I: the map is the identity.
    const auto zi = lyapunov_solve(HermitianOperator::identity(3), sample_hermitian(3, 5));
    REQUIRE(zi.has_value());
    CHECK((zi->mat() - sample_hermitian(3, 5).mat()).norm() <= 1e-12);
}

TEST_CASE("lyapunov_solve kernel classification") {
    const HermitianOperator sigma(diag2(1.0, 0.0));

    // Kernel-kernel component: unsolvable.
    CHECK(!lyapunov_solve(sigma, HermitianOperator(diag2(0.0, 1.0))).has_value());
    CHECK(bures_seminorm_sq(sigma, HermitianOperator(diag2(0.0, 1.0))) ==
          std::numeric_limits<double>::infinity());

    // Support-kernel cross term only: solvable, Z_01 = 2 X_01.
    Matrix cross = Matrix::Zero(2, 2);
    cross(0, 1) = 0.3;
    cross(1, 0) = 0.3;
    const auto z = lyapunov_solve(sigma, HermitianOperator(cross));
    REQUIRE(z.has_value());
    CHECK(std::abs(z->mat()(0, 1) - Complex(0.6, 0.0)) <= 1e-12);
}

TEST_CASE("bures seminorm closed forms") {
    // sigma = I: ||X||^2 = Tr X^2.
    const HermitianOperator x = sample_hermitian(3, 7);
    CHECK(bures_seminorm_sq(HermitianOperator::identity(3), x) ==
          doctest::Approx((x.mat() * x.mat()).trace().real()).epsilon(1e-10));

    // Commuting diagonal case: sum 2 |x_ij|^2 / (s_i + s_j).
    const HermitianOperator sigma(diag2(2.0 / 3.0, 1.0 / 3.0));
    double expect = 0.0;
    const Matrix xm = sample_hermitian(2, 9).mat();
    const double s[2] = {2.0 / 3.0, 1.0 / 3.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) expect += 2.0 * std::norm(xm(i, j)) / (s[i] + s[j]);
    CHECK(bures_seminorm_sq(sigma, HermitianOperator(xm)) ==
          doctest::Approx(expect).epsilon(1e-10));

    // The measured collision oracle instance: <+| J^{-1}_sigma(|+><+|) |+> = 17/8.
    CHECK(bures_seminorm_sq(sigma, plus_state()) == doctest::Approx(17.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("trace norm dominated by weighted Bures norm times sqrt(Tr sigma)") {
    // ||H||_1 <= ||H||_{B,sigma} sqrt(Tr sigma) on random instances.
    for (int k = 0; k < 20; ++k) {
        const HermitianOperator sigma = sample_density(3, 100 + k);
        const HermitianOperator h = sample_hermitian(3, 200 + k);
        const Spectrum s = eig_hermitian(h);
        const double tn = s.values.array().abs().sum();
        const double rhs = std::sqrt(bures_seminorm_sq(sigma, h)) * std::sqrt(sigma.trace());
        CHECK(tn <= rhs + 1e-9);
    }
}
