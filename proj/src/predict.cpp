#include "formcount/predict.hpp"

#include <cmath>
#include <stdexcept>

namespace formcount {

LevelRule LevelRule::parse(const std::string& text) {
    LevelRule out;
    if (text.empty() || text == "default") {
        out.kind = Kind::Default;
        return out;
    }
    if (text.rfind("fixed:", 0) == 0) {
        out.kind = Kind::Fixed;
        out.fixed = std::stoi(text.substr(6));
        if (out.fixed < 1 || out.fixed > 16)
            throw std::invalid_argument("fixed level out of range");
        return out;
    }
    if (text.rfind("budget:", 0) == 0) {
        out.kind = Kind::Budget;
        out.budget = std::stoull(text.substr(7));
        if (out.budget < 2) throw std::invalid_argument("budget too small");
        return out;
    }
    throw std::invalid_argument("level rule must be 'default', 'fixed:K' or 'budget:N'");
}

std::string LevelRule::describe() const {
    switch (kind) {
        case Kind::Default:
            return "default";
        case Kind::Fixed:
            return "fixed:" + std::to_string(fixed);
        case Kind::Budget:
            return "budget:" + std::to_string(budget);
    }
    return "default";
}

int LevelRule::level_for(std::int64_t p, int degree, int ms) const {
    switch (kind) {
        case Kind::Default:
            return p <= degree ? 2 : 1;
        case Kind::Fixed:
            return fixed;
        case Kind::Budget: {
            int l = 1;
            while (l < 8 && box_points(box_points(static_cast<std::uint64_t>(p),
                                                  l + 1),
                                       ms) <= budget)
                ++l;
            return l;
        }
    }
    return 1;
}

PredictionReport predict(const ExpandedSystem& es, const TargetSystem& target,
                         std::int64_t P, std::int64_t pmax, const LevelRule& rule,
                         double epsilon, std::uint64_t samples, std::uint64_t seed,
                         bool with_count, const RunConfig& cfg) {
    check_compatible(es, target);
    if (P < 1) throw std::invalid_argument("P must be at least 1");
    if (pmax < 2) throw std::invalid_argument("pmax must be at least 2");

    PredictionReport out;
    out.P = P;
    out.exponent = es.ms() - es.rr() * es.degree();
    out.pmax = pmax;
    out.level_rule = rule.describe();

    out.chi_infinity = chi_infinity_volume(es, target, epsilon, samples, seed, cfg);

    for (std::int64_t p = 2; p <= pmax; ++p) {
        if (!is_prime(p)) continue;
        const int l = rule.level_for(p, es.degree(), es.ms());
        out.chi_p.push_back(chi_p_congruence(es, target, p, l, cfg));
    }

    out.chi_p_product = 1;
    for (const auto& d : out.chi_p) out.chi_p_product *= d.chi.convert_to<double>();

    out.predicted = std::pow(static_cast<double>(P), out.exponent) *
                    out.chi_infinity.estimate * out.chi_p_product;

    if (with_count) {
        try {
            const CountResult counted = count_box(es, target, P, cfg);
            out.have_count = true;
            out.exact_count = counted.count;
            out.count_wall_time = counted.wall_time;
            out.ratio = out.predicted != 0
                            ? static_cast<double>(counted.count) / out.predicted
                            : std::numeric_limits<double>::quiet_NaN();
        } catch (const WorkLimitError& e) {
            out.have_count = false;
            out.count_skip_reason = e.what();
        }
    }
    return out;
}

}  // namespace formcount
