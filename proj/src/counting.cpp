#include "formcount/counting.hpp"

#include <chrono>
#include <stdexcept>

namespace formcount {

void flatten_equations(const ExpandedSystem& es, const TargetSystem& target,
                       std::vector<const Poly*>& eqs, std::vector<BigInt>& targets) {
    check_compatible(es, target);
    eqs.clear();
    targets.clear();
    for (int rho = 0; rho < es.num_forms(); ++rho)
        for (int j = 0; j < es.r(); ++j) {
            eqs.push_back(&es.e_poly(rho, j));
            targets.push_back(target.psi(rho, es.indices().at(j).mu));
        }
}

CountResult count_box_filtered(const ExpandedSystem& es, const TargetSystem& target,
                               std::int64_t P,
                               const std::vector<std::int64_t>& fixed_prefix,
                               const RunConfig& cfg) {
    if (P < 0) throw std::invalid_argument("P must be nonnegative");
    std::vector<const Poly*> eqs;
    std::vector<BigInt> targets;
    flatten_equations(es, target, eqs, targets);

    const auto start = std::chrono::steady_clock::now();
    EnumResult res = count_zeros(eqs, targets, es.ms(), -P, P, 0, fixed_prefix, cfg);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;

    CountResult out;
    out.P = P;
    out.count = res.count;
    out.ms = es.ms();
    out.partitions_processed = res.partitions;
    out.wall_time = elapsed.count();
    return out;
}

CountResult count_box(const ExpandedSystem& es, const TargetSystem& target,
                      std::int64_t P, const RunConfig& cfg) {
    return count_box_filtered(es, target, P, {}, cfg);
}

}  // namespace formcount
