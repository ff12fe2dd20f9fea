#pragma once

#include "formcount/enumerate.hpp"
#include "formcount/expansion.hpp"

#include <cstdint>
#include <vector>

namespace formcount {

// A tuple (x_1,...,x_m) on which every expanded equation vanishes, exactly
// or mod p. Tuples are reported as found, spans are never deduplicated, and
// degenerate ranks are included.
struct SpaceWitness {
    std::vector<std::vector<std::int64_t>> vectors;  // m rows of length s
    std::int64_t modulus = 0;                        // 0 = integers
    int span_rank = 0;
};

struct SpaceSearchResult {
    std::vector<SpaceWitness> witnesses;  // first `cap` in enumeration order
    std::uint64_t total_count = 0;        // always exact
    std::int64_t modulus = 0;
    std::int64_t height = 0;
};

// Rank of an integer matrix over Q (fraction-free elimination).
int rank_rational(std::vector<std::vector<BigInt>> mat);
// Rank over F_p.
int rank_mod_p(std::vector<std::vector<std::int64_t>> mat, std::int64_t p);

int span_rank(const SpaceWitness& w);

// All xbar mod p with E_{rho,j}(xbar) == 0 for every rho, j; the total
// equals gamma_congruence at level 1 with zero target.
SpaceSearchResult find_spaces_mod_p(const ExpandedSystem& es, std::int64_t p,
                                    std::size_t cap = 1000, const RunConfig& cfg = {});

// All integer xbar with |xbar| <= H solving the zero-target system.
SpaceSearchResult find_spaces_height(const ExpandedSystem& es, std::int64_t H,
                                     std::size_t cap = 1000, const RunConfig& cfg = {});

}  // namespace formcount
