// Enumerable hash families over GF(2) (Toeplitz), exhaustive function
// families over small alphabets, and the map that pushes a classical-quantum
// block list through a hash function.

#pragma once

#include "smollision/states.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace smollision {

enum class HashFamilyKind { toeplitz, exhaustive_all_functions, singleton };

struct HashFunction {
    std::vector<int> table;      // table[x] in [0, range_size)
    int range_size;
    HashFamilyKind kind;         // provenance
    std::uint64_t index;         // seed (toeplitz) or member index

    int domain_size() const { return static_cast<int>(table.size()); }
    int operator()(int x) const { return table[x]; }
};

// Immutable family description. Members are materialized on demand by index,
// so the member range can be partitioned across threads freely.
struct HashFamily {
    HashFamilyKind kind;
    int m = 0;                   // input bits (toeplitz)
    int k = 0;                   // output bits (toeplitz)
    int domain = 0;              // |X|
    int range = 0;               // |Z|
    std::vector<double> weights; // empty = uniform
    std::uint64_t member_count = 0;
    std::vector<int> fixed_table;  // singleton only

    double weight(std::uint64_t index) const;
};

// f_s(x) = T_s x over GF(2); T_s is the k x m Toeplitz matrix whose diagonal
// c - r carries seed bit (c - r) + (k - 1), and x enters as the bit column
// (x_{m-1} ... x_0) with bit c = (x >> c) & 1. 2^{m+k-1} members.
HashFamily toeplitz_family(int m, int k);

// Every function from a domain of size |X| to an alphabet of size |Z| <= 8;
// member f has table[x] = (f / |Z|^x) mod |Z|. |Z|^|X| members.
HashFamily exhaustive_family(int domain, int range);

// Single fixed function with weight one. Negative control for the
// universality audit; also used to hash through one concrete member.
HashFamily singleton_family(std::vector<int> table, int range);

// Replace the uniform weights by an explicit distribution (must sum to 1).
HashFamily with_weights(HashFamily fam, std::vector<double> weights);

// Materialize member `index` without touching the rest of the family.
HashFunction family_member(const HashFamily& fam, std::uint64_t index);

// All members in index order with their weights. Throws TooLarge above 2^20
// members; iterate family_member over a subrange (or sample) instead.
std::vector<std::pair<HashFunction, double>> enumerate_family(const HashFamily& fam);

struct UniversalityReport {
    bool passes;                  // every pair collides with probability 1/|Z|
    int worst_x = -1;             // pair witnessing the largest deviation
    int worst_xp = -1;
    double worst_probability = 0.0;
    std::uint64_t member_count = 0;
};

// Exact collision audit: for uniformly weighted families the per-pair check
// is integer (collision count * |Z| == member count); explicit weights are
// accumulated and compared against 1/|Z| directly.
UniversalityReport universality_check(const HashFamily& fam);

// R_{E,z} = sum_{x : f(x) = z} R_{E,x} for a self-adjoint block list indexed
// by the hash input. Linear and trace preserving; blocks need not be states.
std::vector<HermitianOperator> extraction_map(const std::vector<HermitianOperator>& blocks,
                                              const HashFunction& f);

// Convenience for genuine CQ states: hash the classical register and
// renormalize the surviving blocks. Empty output cells get weight zero and a
// maximally mixed block.
CQState extract_hashed(const CQState& rho, const HashFunction& f);

}  // namespace smollision
