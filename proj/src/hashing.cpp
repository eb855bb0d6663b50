#include "smollision/hashing.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace smollision {

namespace {

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

void check_index(const HashFamily& fam, std::uint64_t index) {
    if (index >= fam.member_count) {
        throw InvalidInput("family_member: index " + std::to_string(index) +
                           " out of range for " + std::to_string(fam.member_count) +
                           " members");
    }
}

}  // namespace

double HashFamily::weight(std::uint64_t index) const {
    if (weights.empty()) return 1.0 / static_cast<double>(member_count);
    return weights[static_cast<std::size_t>(index)];
}

HashFamily toeplitz_family(int m, int k) {
    if (m < 1 || k < 1 || m + k - 1 > 62) {
        throw InvalidInput("toeplitz_family: need m, k >= 1 and m + k - 1 <= 62");
    }
    HashFamily fam;
    fam.kind = HashFamilyKind::toeplitz;
    fam.m = m;
    fam.k = k;
    fam.domain = 1 << m;
    fam.range = 1 << k;
    fam.member_count = std::uint64_t{1} << (m + k - 1);
    return fam;
}

HashFamily exhaustive_family(int domain, int range) {
    if (domain < 1 || range < 1 || range > 8) {
        throw InvalidInput("exhaustive_family: need domain >= 1 and 1 <= range <= 8");
    }
    long double count = std::pow(static_cast<long double>(range), domain);
    if (count > 9e18L) throw TooLarge("exhaustive_family: member count overflows");
    HashFamily fam;
    fam.kind = HashFamilyKind::exhaustive_all_functions;
    fam.domain = domain;
    fam.range = range;
    fam.member_count = 1;
    for (int x = 0; x < domain; ++x) fam.member_count *= static_cast<std::uint64_t>(range);
    return fam;
}

HashFamily singleton_family(std::vector<int> table, int range) {
    if (table.empty() || range < 1) throw InvalidInput("singleton_family: empty table");
    for (int z : table) {
        if (z < 0 || z >= range) throw InvalidInput("singleton_family: output out of range");
    }
    HashFamily fam;
    fam.kind = HashFamilyKind::singleton;
    fam.domain = static_cast<int>(table.size());
    fam.range = range;
    fam.member_count = 1;
    fam.fixed_table = std::move(table);
    return fam;
}

HashFamily with_weights(HashFamily fam, std::vector<double> weights) {
    if (weights.size() != fam.member_count) {
        throw InvalidInput("with_weights: weight count does not match member count");
    }
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("with_weights: weights must sum to 1");
    for (double w : weights) {
        if (w < 0.0) throw InvalidInput("with_weights: negative weight");
    }
    fam.weights = std::move(weights);
    return fam;
}

HashFunction family_member(const HashFamily& fam, std::uint64_t index) {
    check_index(fam, index);
    HashFunction f;
    f.range_size = fam.range;
    f.kind = fam.kind;
    f.index = index;
    switch (fam.kind) {
        case HashFamilyKind::toeplitz: {
            // Column c of T_s holds seed bits (c - r) + (k - 1) for rows
            // r = 0..k-1; precompute each column's contribution to the output
            // word and fold columns selected by the input bits.
            std::vector<int> column(fam.m, 0);
            for (int c = 0; c < fam.m; ++c) {
                int word = 0;
                for (int r = 0; r < fam.k; ++r) {
                    const int bit = static_cast<int>((index >> (c - r + fam.k - 1)) & 1u);
                    word |= bit << r;
                }
                column[c] = word;
            }
            f.table.resize(fam.domain);
            for (int x = 0; x < fam.domain; ++x) {
                int z = 0;
                for (int c = 0; c < fam.m; ++c) {
                    if ((x >> c) & 1) z ^= column[c];
                }
                f.table[x] = z;
            }
            break;
        }
        case HashFamilyKind::exhaustive_all_functions: {
            f.table.resize(fam.domain);
            std::uint64_t rest = index;
            for (int x = 0; x < fam.domain; ++x) {
                f.table[x] = static_cast<int>(rest % static_cast<std::uint64_t>(fam.range));
                rest /= static_cast<std::uint64_t>(fam.range);
            }
            break;
        }
        case HashFamilyKind::singleton:
            f.table = fam.fixed_table;
            break;
    }
    return f;
}

std::vector<std::pair<HashFunction, double>> enumerate_family(const HashFamily& fam) {
    if (fam.member_count > kEnumerationCap) {
        throw TooLarge("enumerate_family: " + std::to_string(fam.member_count) +
                       " members exceeds 2^20; iterate family_member over a subrange or sample");
    }
    std::vector<std::pair<HashFunction, double>> out;
    out.reserve(static_cast<std::size_t>(fam.member_count));
    for (std::uint64_t i = 0; i < fam.member_count; ++i) {
        out.emplace_back(family_member(fam, i), fam.weight(i));
    }
    return out;
}

UniversalityReport universality_check(const HashFamily& fam) {
    const auto members = enumerate_family(fam);
    UniversalityReport rep;
    rep.member_count = fam.member_count;
    rep.passes = true;
    const bool uniform = fam.weights.empty();
    const double target = 1.0 / fam.range;
    double worst_dev = -1.0;
    for (int x = 0; x < fam.domain; ++x) {
        for (int xp = x + 1; xp < fam.domain; ++xp) {
            std::uint64_t count = 0;
            double prob = 0.0;
            for (const auto& [f, w] : members) {
                if (f.table[x] != f.table[xp]) continue;
                ++count;
                prob += w;
            }
            bool pair_ok;
            if (uniform) {
                pair_ok = count * static_cast<std::uint64_t>(fam.range) == fam.member_count;
                prob = static_cast<double>(count) / static_cast<double>(fam.member_count);
            } else {
                pair_ok = std::abs(prob - target) <= 1e-12;
            }
            if (!pair_ok) rep.passes = false;
            const double dev = std::abs(prob - target);
            if (dev > worst_dev) {
                worst_dev = dev;
                rep.worst_x = x;
                rep.worst_xp = xp;
                rep.worst_probability = prob;
            }
        }
    }
    return rep;
}

std::vector<HermitianOperator> extraction_map(const std::vector<HermitianOperator>& blocks,
                                              const HashFunction& f) {
    if (static_cast<int>(blocks.size()) != f.domain_size()) {
        throw InvalidInput("extraction_map: block count does not match hash domain");
    }
    const int de = blocks.empty() ? 0 : blocks[0].dim();
    std::vector<HermitianOperator> out(
        static_cast<std::size_t>(f.range_size),
        HermitianOperator(Matrix::Zero(de, de)));
    for (int x = 0; x < f.domain_size(); ++x) {
        if (blocks[x].dim() != de) throw InvalidInput("extraction_map: block dim mismatch");
        const int z = f.table[x];
        out[z] = out[z] + blocks[x];
    }
    return out;
}

CQState extract_hashed(const CQState& rho, const HashFunction& f) {
    if (rho.classical_dim() != f.domain_size()) {
        throw InvalidInput("extract_hashed: classical dim does not match hash domain");
    }
    std::vector<HermitianOperator> weighted;
    weighted.reserve(rho.blocks.size());
    for (int x = 0; x < rho.classical_dim(); ++x) weighted.push_back(rho.weighted_block(x));
    const std::vector<HermitianOperator> pushed = extraction_map(weighted, f);
    const int de = rho.quantum_dim();
    std::vector<double> p(pushed.size(), 0.0);
    std::vector<HermitianOperator> blocks;
    blocks.reserve(pushed.size());
    for (std::size_t z = 0; z < pushed.size(); ++z) {
        p[z] = pushed[z].trace();
        if (p[z] > 1e-12) {
            blocks.push_back(pushed[z] * (1.0 / p[z]));
        } else {
            p[z] = std::max(p[z], 0.0);
            blocks.push_back(HermitianOperator(
                Matrix::Identity(de, de) * (1.0 / de)));
        }
    }
    return CQState(std::move(p), std::move(blocks));
}

}  // namespace smollision
