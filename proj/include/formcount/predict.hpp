#pragma once

#include "formcount/archimedean.hpp"
#include "formcount/counting.hpp"
#include "formcount/local.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace formcount {

// Level choice for the reported chi_p values. "default" takes l = 2 for the
// wild primes p <= d and l = 1 otherwise; "fixed:K" forces one level;
// "budget:N" takes the deepest level whose residue box p^{l*ms} stays within
// N points (at least 1, at most 8).
struct LevelRule {
    enum class Kind { Default, Fixed, Budget };
    Kind kind = Kind::Default;
    int fixed = 1;
    std::uint64_t budget = 0;

    static LevelRule parse(const std::string& text);
    std::string describe() const;
    int level_for(std::int64_t p, int degree, int ms) const;
};

struct PredictionReport {
    std::int64_t P = 0;
    int exponent = 0;  // ms - R*r*d
    RealDensityEstimate chi_infinity;
    std::vector<LocalDensity> chi_p;
    double chi_p_product = 1;
    double predicted = 0;  // P^exponent * chi_inf * prod chi_p
    bool have_count = false;
    std::uint64_t exact_count = 0;
    double ratio = 0;  // exact/predicted, valid iff have_count
    std::string count_skip_reason;
    std::int64_t pmax = 0;
    std::string level_rule;
    double count_wall_time = 0;
};

// Assembles the Hardy-Littlewood style comparison: local densities for all
// primes p <= pmax, the Monte Carlo real density, the predicted main term
// P^{ms-Rrd} * chi_inf * prod chi_p, and (optionally) the exact count with
// the ratio exact/predicted. A count refused by the work limit is reported
// as absent rather than failing the whole report.
PredictionReport predict(const ExpandedSystem& es, const TargetSystem& target,
                         std::int64_t P, std::int64_t pmax, const LevelRule& rule,
                         double epsilon, std::uint64_t samples, std::uint64_t seed,
                         bool with_count, const RunConfig& cfg = {});

}  // namespace formcount
