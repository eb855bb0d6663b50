#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smollision/hashing.hpp"
#include "smollision/states.hpp"

#include <set>
#include <vector>

using namespace smollision;

TEST_CASE("toeplitz family shape and member expansion") {
    const HashFamily f11 = toeplitz_family(1, 1);
    CHECK(f11.domain == 2);
    CHECK(f11.range == 2);
    CHECK(f11.member_count == 2);
    // Seed 0 is the all-zero map, seed 1 the identity on one bit.
    CHECK(family_member(f11, 0).table == std::vector<int>{0, 0});
    CHECK(family_member(f11, 1).table == std::vector<int>{0, 1});

    const HashFamily f21 = toeplitz_family(2, 1);
    CHECK(f21.member_count == 4);
    for (std::uint64_t s = 0; s < 4; ++s) {
        const HashFunction f = family_member(f21, s);
        // Every member is linear over GF(2) on two input bits.
        CHECK(f(0) == 0);
        CHECK(f(3) == (f(1) ^ f(2)));
    }

    const HashFamily f32 = toeplitz_family(3, 2);
    CHECK(f32.member_count == 16);  // 2^{m+k-1}
    CHECK(f32.domain == 8);
    CHECK(f32.range == 4);
}

TEST_CASE("toeplitz members are GF(2)-linear on all pairs") {
    for (int m = 1; m <= 4; ++m) {
        for (int k = 1; k <= 2; ++k) {
            const HashFamily fam = toeplitz_family(m, k);
            for (std::uint64_t s = 0; s < fam.member_count; ++s) {
                const HashFunction f = family_member(fam, s);
                for (int x = 0; x < fam.domain; ++x) {
                    for (int y = 0; y < fam.domain; ++y) {
                        CHECK(f(x ^ y) == (f(x) ^ f(y)));
                    }
                }
            }
        }
    }
}

TEST_CASE("exhaustive family enumerates every function") {
    const HashFamily fam = exhaustive_family(2, 2);
    CHECK(fam.member_count == 4);
    std::set<std::vector<int>> seen;
    for (const auto& [f, w] : enumerate_family(fam)) {
        CHECK(w == doctest::Approx(0.25));
        seen.insert(f.table);
    }
    CHECK(seen.size() == 4);

    // Indexing convention: digit x of the member index in base |Z|.
    const HashFunction f = family_member(exhaustive_family(3, 2), 5);  // 5 = 101_2
    CHECK(f.table == std::vector<int>{1, 0, 1});

    CHECK_THROWS_AS(exhaustive_family(3, 9), InvalidInput);
    CHECK_THROWS_AS(enumerate_family(exhaustive_family(8, 8)), TooLarge);
}

TEST_CASE("universality audit") {
    // Toeplitz families are exactly 2-universal for every shipped size.
    for (int m = 1; m <= 4; ++m) {
        for (int k = 1; k <= 2; ++k) {
            const UniversalityReport rep = universality_check(toeplitz_family(m, k));
            CHECK(rep.passes);
        }
    }
    CHECK(universality_check(exhaustive_family(2, 2)).passes);
    CHECK(universality_check(exhaustive_family(4, 2)).passes);
    CHECK(universality_check(exhaustive_family(3, 3)).passes);

    // Negative control: a constant function collides with probability one.
    const UniversalityReport bad = universality_check(singleton_family({0, 0, 0}, 2));
    CHECK(!bad.passes);
    CHECK(bad.worst_probability == doctest::Approx(1.0));
}

TEST_CASE("extraction map is linear and trace preserving") {
    const CQState cq = sample_cq(4, 2, 99);
    std::vector<HermitianOperator> blocks;
    double tr_in = 0.0;
    for (int x = 0; x < 4; ++x) {
        blocks.push_back(cq.weighted_block(x));
        tr_in += blocks.back().trace();
    }

    // Constant function: single surviving cell equal to the reduction.
    const HashFunction constant{{0, 0, 0, 0}, 2, HashFamilyKind::singleton, 0};
    const auto merged = extraction_map(blocks, constant);
    REQUIRE(merged.size() == 2);
    CHECK((merged[0].mat() - cq.reduced().mat()).norm() <= 1e-12);
    CHECK(merged[1].mat().norm() <= 1e-15);

    // Identity relabeling permutes the blocks.
    const HashFunction perm{{1, 0, 3, 2}, 4, HashFamilyKind::singleton, 0};
    const auto shuffled = extraction_map(blocks, perm);
    CHECK((shuffled[1].mat() - blocks[0].mat()).norm() == 0.0);
    CHECK((shuffled[2].mat() - blocks[3].mat()).norm() == 0.0);

    // Trace preservation on a random member.
    const HashFunction f = family_member(toeplitz_family(2, 1), 3);
    double tr_out = 0.0;
    for (const auto& b : extraction_map(blocks, f)) tr_out += b.trace();
    CHECK(tr_out == doctest::Approx(tr_in).epsilon(1e-12));

    // Linearity in the blocks.
    std::vector<HermitianOperator> doubled;
    for (const auto& b : blocks) doubled.push_back(b * 2.0);
    const auto out1 = extraction_map(blocks, f);
    const auto out2 = extraction_map(doubled, f);
    for (size_t z = 0; z < out1.size(); ++z) {
        CHECK((out2[z].mat() - 2.0 * out1[z].mat()).norm() <= 1e-14);
    }
}

TEST_CASE("hashing a cq state renormalizes surviving cells") {
    const CQState cq = sample_cq(4, 2, 101);
    const HashFunction f = family_member(exhaustive_family(4, 2), 6);
    const CQState out = extract_hashed(cq, f);
    CHECK(out.classical_dim() == 2);
    double total = 0.0;
    for (double w : out.p) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& b : out.blocks) CHECK(b.trace() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("weighted families mix extraction linearly") {
    const HashFamily base = exhaustive_family(2, 2);
    const HashFamily tilted = with_weights(base, {0.4, 0.3, 0.2, 0.1});
    CHECK(tilted.weight(0) == doctest::Approx(0.4));
    double sum = 0.0;
    for (const auto& [f, w] : enumerate_family(tilted)) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    CHECK_THROWS_AS(with_weights(base, {0.5, 0.5}), InvalidInput);
}
