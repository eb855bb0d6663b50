#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/divergences.hpp"
#include "smollision/states.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace smollision;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

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

HermitianOperator diag_op(const std::vector<double>& v) {
    Matrix m = Matrix::Zero(v.size(), v.size());
    for (size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return HermitianOperator(m);
}

}  // namespace

TEST_CASE("classical renyi divergence") {
    const std::vector<double> p{0.75, 0.25};
    const std::vector<double> q{0.5, 0.5};
    const double kl = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
    CHECK(renyi_classical(p, q, 1.0) == doctest::Approx(kl).epsilon(1e-12));
    CHECK(renyi_classical(p, q, 2.0) ==
          doctest::Approx(std::log(0.75 * 0.75 / 0.5 + 0.25 * 0.25 / 0.5)).epsilon(1e-12));
    CHECK(renyi_classical(p, q, kInf) == doctest::Approx(std::log(1.5)).epsilon(1e-12));
    CHECK(renyi_classical(p, p, 2.0) == doctest::Approx(0.0));

    // Support violation diverges for alpha > 1.
    CHECK(renyi_classical({1.0, 0.0}, {0.0, 1.0}, 2.0) == kInf);
}

TEST_CASE("quantum renyi families") {
    const HermitianOperator rho = sample_density(3, 51);
    const HermitianOperator sigma = sample_density(3, 52);

    // alpha = 1 is the Umegaki relative entropy for both families.
    const Spectrum sr = eig_hermitian(rho);
    const Spectrum ss = eig_hermitian(sigma);
    Matrix log_rho = Matrix::Zero(3, 3), log_sigma = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
        log_rho += std::log(sr.values[i]) * sr.vectors.col(i) * sr.vectors.col(i).adjoint();
        log_sigma += std::log(ss.values[i]) * ss.vectors.col(i) * ss.vectors.col(i).adjoint();
    }
    const double umegaki = (rho.mat() * (log_rho - log_sigma)).trace().real();
    CHECK(quantum_renyi(rho, sigma, 1.0, RenyiFamily::petz) ==
          doctest::Approx(umegaki).epsilon(1e-9));
    CHECK(quantum_renyi(rho, sigma, 1.0, RenyiFamily::sandwiched) ==
          doctest::Approx(umegaki).epsilon(1e-9));
    CHECK(relative_entropy_and_variance(rho, sigma).relative_entropy ==
          doctest::Approx(umegaki).epsilon(1e-9));

    // Sandwiched at alpha = infinity is dmax.
    CHECK(quantum_renyi(rho, sigma, kInf, RenyiFamily::sandwiched) ==
          doctest::Approx(dmax(rho, sigma)).epsilon(1e-9));

    // Sandwiched never exceeds Petz.
    for (double alpha : {0.5, 1.5, 2.0, 3.0}) {
        CHECK(quantum_renyi(rho, sigma, alpha, RenyiFamily::sandwiched) <=
              quantum_renyi(rho, sigma, alpha, RenyiFamily::petz) + 1e-9);
    }

    // Frozen: sandwiched order-2 of a pure state against I/2.
    CHECK(quantum_renyi(HermitianOperator(diag2(1.0, 0.0)), HermitianOperator(diag2(0.5, 0.5)),
                        2.0, RenyiFamily::sandwiched) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));

    // Diagonal instances reduce to the classical divergence.
    const std::vector<double> p{0.6, 0.3, 0.1};
    const std::vector<double> q{0.2, 0.5, 0.3};
    for (double alpha : {0.5, 1.5, 2.0}) {
        CHECK(quantum_renyi(diag_op(p), diag_op(q), alpha, RenyiFamily::petz) ==
              doctest::Approx(renyi_classical(p, q, alpha)).epsilon(1e-10));
        CHECK(quantum_renyi(diag_op(p), diag_op(q), alpha, RenyiFamily::sandwiched) ==
              doctest::Approx(renyi_classical(p, q, alpha)).epsilon(1e-10));
    }
}

TEST_CASE("relative entropy variance on diagonal instances") {
    const std::vector<double> p{0.7, 0.2, 0.1};
    const std::vector<double> q{0.3, 0.4, 0.3};
    const auto ev = relative_entropy_and_variance(diag_op(p), diag_op(q));
    double h = 0.0, v = 0.0;
    for (int i = 0; i < 3; ++i) h += p[i] * std::log(p[i] / q[i]);
    for (int i = 0; i < 3; ++i) {
        const double t = std::log(p[i] / q[i]) - h;
        v += p[i] * t * t;
    }
    CHECK(ev.relative_entropy == doctest::Approx(h).epsilon(1e-10));
    CHECK(ev.variance == doctest::Approx(v).epsilon(1e-9));
}

TEST_CASE("dmax and hockey stick basics") {
    const HermitianOperator rho = sample_density(3, 61);
    CHECK(dmax(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(dmax(diag_op({0.5, 0.5}), diag_op({0.25, 0.75})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(dmax(plus_state(), HermitianOperator(diag2(1.0, 0.0))) == kInf);

    CHECK(hockey_stick(rho, rho, 0.0) == doctest::Approx(1.0));
    CHECK(hockey_stick(rho, rho, 0.4) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(hockey_stick(rho, rho, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
    // Non-increasing and convex in gamma.
    double prev = hockey_stick(rho, sample_density(3, 62), 0.0);
    for (double g : {0.5, 1.0, 2.0, 4.0}) {
        const double cur = hockey_stick(rho, sample_density(3, 62), g);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("measured smooth max divergence frozen values") {
    // E_gamma(|+><+| || |0><0|) = eps at gamma = 2.4 for eps = 0.6.
    const DivergenceValue v =
        dmax_smooth_measured(plus_state(), HermitianOperator(diag2(1.0, 0.0)), 0.6);
    CHECK(v.nats == doctest::Approx(std::log(2.4)).epsilon(1e-9));
    REQUIRE(v.gamma.has_value());
    CHECK(*v.gamma == doctest::Approx(2.4).epsilon(1e-8));

    // Self-smoothing: log(1 - eps).
    const HermitianOperator rho = sample_density(3, 71);
    CHECK(dmax_smooth_measured(rho, rho, 0.3).nats ==
          doctest::Approx(std::log(0.7)).epsilon(1e-9));

    // Uniform qubit against the unnormalized identity: log((1 - eps)/2).
    CHECK(dmax_smooth_measured(diag_op({0.5, 0.5}), HermitianOperator::identity(2), 0.25).nats ==
          doctest::Approx(std::log(0.375)).epsilon(1e-9));

    // Monotone non-increasing in eps.
    const HermitianOperator sigma = sample_density(3, 72);
    double prev = dmax_smooth_measured(rho, sigma, 0.05).nats;
    for (double eps : {0.1, 0.2, 0.4, 0.6}) {
        const double cur = dmax_smooth_measured(rho, sigma, eps).nats;
        CHECK(cur <= prev + 1e-9);
        prev = cur;
    }
}

TEST_CASE("hypothesis testing divergence and its certificate") {
    // Frozen: deterministic vs maximally mixed at eps = 1/2.
    const DivergenceValue v =
        dh_threshold(HermitianOperator(diag2(1.0, 0.0)), HermitianOperator(diag2(0.5, 0.5)), 0.5);
    CHECK(v.nats == doctest::Approx(std::log(4.0)).epsilon(1e-10));

    // Certificate re-evaluates: Tr M rho = 1 - eps, -log Tr M sigma = value.
    const HermitianOperator rho = sample_density(3, 81);
    const HermitianOperator sigma = sample_density(3, 82);
    for (double eps : {0.1, 0.3, 0.6}) {
        const DivergenceValue d = dh_threshold(rho, sigma, eps);
        REQUIRE(d.op_cert.has_value());
        const Matrix m = d.op_cert->mat();
        const Spectrum sm = eig_hermitian(*d.op_cert);
        CHECK(sm.values.minCoeff() >= -1e-10);
        CHECK(sm.values.maxCoeff() <= 1.0 + 1e-10);
        CHECK((m * rho.mat()).trace().real() == doctest::Approx(1.0 - eps).epsilon(1e-9));
        CHECK(-std::log((m * sigma.mat()).trace().real()) ==
              doctest::Approx(d.nats).epsilon(1e-9));
    }

    // Non-decreasing in eps (weaker type-I constraint).
    double prev = dh_threshold(rho, sigma, 0.05).nats;
    for (double eps : {0.1, 0.3, 0.5, 0.7}) {
        const double cur = dh_threshold(rho, sigma, eps).nats;
        CHECK(cur >= prev - 1e-10);
        prev = cur;
    }

    // Fully tied crossing: the uniform split gives M = (1 - eps) I.
    const DivergenceValue tie =
        dh_threshold(HermitianOperator(diag2(0.5, 0.5)), HermitianOperator(diag2(0.5, 0.5)), 0.3);
    CHECK(tie.nats == doctest::Approx(-std::log(0.7)).epsilon(1e-10));
    REQUIRE(tie.op_cert.has_value());
    CHECK((tie.op_cert->mat() - 0.7 * Matrix::Identity(2, 2)).norm() <= 1e-9);
}

TEST_CASE("binary test from the certificate achieves dh classically") {
    // The Neyman-Pearson test, read as a two-outcome measurement, turns dh
    // into a classical order-0 quantity; any deterministic restriction of any
    // other projective measurement can only do worse.
    for (int k = 0; k < 10; ++k) {
        const HermitianOperator rho = sample_density(3, 900 + k);
        const HermitianOperator sigma = sample_density(3, 950 + k);
        const double eps = 0.1 + 0.05 * (k % 5);
        const DivergenceValue d = dh_threshold(rho, sigma, eps);
        const Matrix m = d.op_cert->mat();
        const double p1 = (m * rho.mat()).trace().real();
        const double q1 = (m * sigma.mat()).trace().real();
        REQUIRE(p1 >= 1.0 - eps - 1e-9);
        CHECK(-std::log(q1) == doctest::Approx(d.nats).epsilon(1e-9));

        const Matrix basis = eig_hermitian(sample_hermitian(3, 990 + k)).vectors;
        std::vector<double> pm(3), qm(3);
        for (int i = 0; i < 3; ++i) {
            pm[i] = (basis.col(i).adjoint() * rho.mat() * basis.col(i)).value().real();
            qm[i] = (basis.col(i).adjoint() * sigma.mat() * basis.col(i)).value().real();
        }
        for (int mask = 1; mask < 8; ++mask) {
            double ps = 0.0, qs = 0.0;
            for (int i = 0; i < 3; ++i) {
                if (mask & (1 << i)) {
                    ps += pm[i];
                    qs += qm[i];
                }
            }
            if (ps >= 1.0 - eps - 1e-12) CHECK(-std::log(qs) <= d.nats + 1e-7);
        }
    }
}

TEST_CASE("classical smooth collision frozen instance") {
    const DivergenceValue v = classical_smooth_collision({0.75, 0.25}, {0.5, 0.5}, 0.25);
    CHECK(v.nats == doctest::Approx(std::log(5.0 / 8.0)).epsilon(1e-12));
    REQUIRE(v.gamma.has_value());
    CHECK(*v.gamma == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(v.dist_cert.has_value());
    CHECK((*v.dist_cert)[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK((*v.dist_cert)[1] == doctest::Approx(0.25).epsilon(1e-9));

    // eps = 0 is the plain collision divergence.
    CHECK(classical_smooth_collision({0.75, 0.25}, {0.5, 0.5}, 0.0).nats ==
          doctest::Approx(renyi_classical({0.75, 0.25}, {0.5, 0.5}, 2.0)).epsilon(1e-12));

    // Self-smoothing equality: Q = (1 - eps)^2.
    CHECK(classical_smooth_collision({0.5, 0.5}, {0.5, 0.5}, 0.2).nats ==
          doctest::Approx(2.0 * std::log(0.8)).epsilon(1e-10));

    // Mass outside supp(q) beyond eps diverges; within eps it does not.
    CHECK(classical_smooth_collision({0.4, 0.6}, {0.0, 1.0}, 0.3).nats == kInf);
    CHECK(std::isfinite(classical_smooth_collision({0.2, 0.8}, {0.0, 1.0}, 0.3).nats));
}

TEST_CASE("measured collision closed form") {
    CHECK(measured_collision(plus_state(), HermitianOperator(diag2(2.0 / 3.0, 1.0 / 3.0))) ==
          doctest::Approx(std::log(17.0 / 8.0)).epsilon(1e-12));
    const HermitianOperator rho = sample_density(3, 64);
    CHECK(measured_collision(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(measured_collision(plus_state(), HermitianOperator(diag2(1.0, 0.0))) == kInf);

    // Diagonal reduction.
    CHECK(measured_collision(diag_op({0.75, 0.25}), diag_op({0.5, 0.5})) ==
          doctest::Approx(renyi_classical({0.75, 0.25}, {0.5, 0.5}, 2.0)).epsilon(1e-10));
}

TEST_CASE("measured lower bound sits below the sandwiched relaxation") {
    for (int k = 0; k < 5; ++k) {
        const HermitianOperator rho = sample_density(3, 300 + k);
        const HermitianOperator sigma = sample_density(3, 350 + k);
        for (double alpha : {1.25, 1.5, 2.0}) {
            const MeasuredLowerBound lb = measured_renyi_lower_bound(rho, sigma, alpha, 60, 17);
            CHECK(lb.nats <= quantum_renyi(rho, sigma, alpha, RenyiFamily::sandwiched) + 1e-9);
            CHECK((lb.basis.adjoint() * lb.basis - Matrix::Identity(3, 3)).norm() <= 1e-10);
        }
    }

    // Commuting pair: the eigenbasis candidate recovers the classical value.
    const std::vector<double> p{0.6, 0.3, 0.1};
    const std::vector<double> q{0.2, 0.5, 0.3};
    const MeasuredLowerBound lb = measured_renyi_lower_bound(diag_op(p), diag_op(q), 1.5, 40, 3);
    CHECK(lb.nats == doctest::Approx(renyi_classical(p, q, 1.5)).epsilon(1e-9));
}

TEST_CASE("data processing under random channels") {
    for (int k = 0; k < 5; ++k) {
        const HermitianOperator rho = sample_density(3, 400 + k);
        const HermitianOperator sigma = sample_density(3, 450 + k);
        const Channel ch = sample_channel(3, 2, 470 + k);
        const HermitianOperator rho2 = apply_channel(ch, rho);
        const HermitianOperator sigma2 = apply_channel(ch, sigma);
        const double eps = 0.1 + 0.1 * k;
        CHECK(dmax_smooth_measured(rho2, sigma2, eps).nats <=
              dmax_smooth_measured(rho, sigma, eps).nats + 1e-7);
        CHECK(dh_threshold(rho2, sigma2, eps).nats <= dh_threshold(rho, sigma, eps).nats + 1e-7);
    }
}

TEST_CASE("blockwise dmax smoothing equals the embedded computation") {
    const CQState cq = sample_cq(3, 2, 555);
    const HermitianOperator sigma_e = cq.reduced();
    const HermitianOperator big_sigma = kron(HermitianOperator::identity(3), sigma_e);
    for (double eps : {0.1, 0.3}) {
        const double blockwise =
            dmax_smooth_measured_blocks(cq.p, cq.blocks, sigma_e, eps).nats;
        const double embedded = dmax_smooth_measured(cq.embed(), big_sigma, eps).nats;
        CHECK(blockwise == doctest::Approx(embedded).epsilon(1e-8));
    }
}
