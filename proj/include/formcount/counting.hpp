#pragma once

#include "formcount/enumerate.hpp"
#include "formcount/expansion.hpp"

#include <cstdint>
#include <vector>

namespace formcount {

struct CountResult {
    std::int64_t P = 0;
    std::uint64_t count = 0;
    int ms = 0;
    std::uint64_t partitions_processed = 0;
    double wall_time = 0;  // seconds
};

// Exact number of integer tuples xbar in [-P,P]^{ms} satisfying the whole
// expanded system E_{rho,j}(xbar) = psi_mu(j) coefficientwise.
CountResult count_box(const ExpandedSystem& es, const TargetSystem& target,
                      std::int64_t P, const RunConfig& cfg = {});

// Same count restricted to the extensions of a partial assignment of the
// first fixed_prefix.size() flattened coordinates.
CountResult count_box_filtered(const ExpandedSystem& es, const TargetSystem& target,
                               std::int64_t P,
                               const std::vector<std::int64_t>& fixed_prefix,
                               const RunConfig& cfg = {});

// Equation pointers and target values of the expanded system in one flat
// (rho-major) order; shared by the counting, congruence, and search paths.
void flatten_equations(const ExpandedSystem& es, const TargetSystem& target,
                       std::vector<const Poly*>& eqs, std::vector<BigInt>& targets);

}  // namespace formcount
