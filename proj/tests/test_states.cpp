#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/states.hpp"

#include <cmath>

using namespace smollision;

TEST_CASE("density matrix validation") {
    Matrix ok = Matrix::Zero(2, 2);
    ok(0, 0) = 0.7;
    ok(1, 1) = 0.3;
    CHECK_NOTHROW(DensityMatrix(HermitianOperator(ok)));

    Matrix neg = ok;
    neg(1, 1) = -0.3;
    CHECK_THROWS_AS(DensityMatrix(HermitianOperator(neg)), InvalidInput);

    Matrix sub = ok * 0.5;
    CHECK_THROWS_AS(DensityMatrix(HermitianOperator(sub), true), InvalidInput);
    CHECK_NOTHROW(DensityMatrix(HermitianOperator(sub), false));
}

TEST_CASE("cq state embed/reduced/extract round trip") {
    const CQState cq = sample_cq(3, 2, 41);
    CHECK(cq.classical_dim() == 3);
    CHECK(cq.quantum_dim() == 2);

    const HermitianOperator rho = cq.embed();
    CHECK(rho.dim() == 6);
    CHECK(rho.trace() == doctest::Approx(1.0));

    // reduced == partial trace of the embedding over the classical factor.
    const HermitianOperator red = partial_trace(rho, 3, 2, 1);
    CHECK((red.mat() - cq.reduced().mat()).norm() <= 1e-12);

    // weighted blocks sum to the reduction.
    Matrix acc = Matrix::Zero(2, 2);
    for (int x = 0; x < 3; ++x) acc += cq.weighted_block(x).mat();
    CHECK((acc - cq.reduced().mat()).norm() <= 1e-12);

    const CQState back = extract_cq(rho, 3, 2);
    for (int x = 0; x < 3; ++x) {
        CHECK(back.p[x] == doctest::Approx(cq.p[x]).epsilon(1e-12));
        CHECK((back.weighted_block(x).mat() - cq.weighted_block(x).mat()).norm() <= 1e-10);
    }

    // A genuinely coherent off-diagonal classical block is rejected.
    Matrix coherent = rho.mat();
    coherent(0, 2) = 0.2;
    coherent(2, 0) = 0.2;
    CHECK_THROWS_AS(extract_cq(HermitianOperator(coherent), 3, 2), NotBlockDiagonal);
}

TEST_CASE("partial trace conventions") {
    const HermitianOperator a = sample_density(2, 1);
    const HermitianOperator b = sample_density(3, 2);
    const HermitianOperator ab = kron(a, b);
    CHECK(ab.trace() == doctest::Approx(1.0));

    CHECK((partial_trace(ab, 2, 3, 0).mat() - a.mat()).norm() <= 1e-12);
    CHECK((partial_trace(ab, 2, 3, 1).mat() - b.mat()).norm() <= 1e-12);

    const HermitianOperator c = sample_density(2, 3);
    const HermitianOperator abc = kron(ab, c);
    const HermitianOperator keep_ac =
        partial_trace_multi(abc, {2, 3, 2}, {true, false, true});
    CHECK((keep_ac.mat() - kron(a, c).mat()).norm() <= 1e-12);
    const HermitianOperator keep_b =
        partial_trace_multi(abc, {2, 3, 2}, {false, true, false});
    CHECK((keep_b.mat() - b.mat()).norm() <= 1e-12);
}

TEST_CASE("channels preserve trace and positivity") {
    for (int k = 0; k < 10; ++k) {
        const Channel ch = sample_channel(3, 2, 500 + k);
        Matrix acc = Matrix::Zero(3, 3);
        for (const auto& kr : ch.kraus) acc += kr.adjoint() * kr;
        CHECK((acc - Matrix::Identity(3, 3)).norm() <= 1e-9);

        const HermitianOperator rho = sample_density(3, 600 + k);
        const HermitianOperator out = apply_channel(ch, rho);
        CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-9));
        const Spectrum s = eig_hermitian(out);
        CHECK(s.values.minCoeff() >= -1e-10);
    }
}

TEST_CASE("samplers are deterministic in the seed") {
    CHECK((sample_density(4, 77).mat() - sample_density(4, 77).mat()).norm() == 0.0);
    CHECK((sample_density(4, 77).mat() - sample_density(4, 78).mat()).norm() > 1e-3);

    const Matrix u = sample_haar_unitary(3, 9);
    CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() <= 1e-12);

    const auto p = sample_distribution(5, 11);
    double sum = 0.0;
    for (double v : p) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    const HermitianOperator pure = sample_pure(3, 15);
    CHECK(pure.trace() == doctest::Approx(1.0));
    CHECK((pure.mat() * pure.mat() - pure.mat()).norm() <= 1e-10);
}

TEST_CASE("cq sampler produces normalized blocks") {
    const CQState cq = sample_cq(4, 3, 123);
    double sum = 0.0;
    for (int x = 0; x < 4; ++x) {
        sum += cq.p[x];
        CHECK(cq.blocks[x].trace() == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}
