#include "formcount/archimedean.hpp"

#include "formcount/philox.hpp"

#include <cmath>
#include <stdexcept>

namespace formcount {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct DoubleMono {
    double coeff;
    std::vector<std::pair<int, int>> facs;
};

struct DoublePoly {
    double constant = 0;
    std::vector<DoubleMono> monos;

    double eval(const std::vector<double>& x) const {
        double acc = constant;
        for (const auto& m : monos) {
            double v = m.coeff;
            for (const auto& [var, exp] : m.facs)
                for (int k = 0; k < exp; ++k) v *= x[var];
            acc += v;
        }
        return acc;
    }
};

DoubleMono compile_mono(const std::vector<int>& exps, double coeff) {
    DoubleMono m;
    m.coeff = coeff;
    for (int v = 0; v < static_cast<int>(exps.size()); ++v)
        if (exps[v] > 0) m.facs.emplace_back(v, exps[v]);
    return m;
}

DoublePoly compile_poly(const Poly& p, double scale) {
    DoublePoly out;
    for (const auto& [exps, coeff] : p.terms()) {
        DoubleMono m = compile_mono(exps, coeff.convert_to<double>() * scale);
        if (m.facs.empty())
            out.constant += m.coeff;
        else
            out.monos.push_back(std::move(m));
    }
    return out;
}

}  // namespace

RealDensityEstimate chi_infinity_volume(const ExpandedSystem& es,
                                        const TargetSystem& target, double epsilon,
                                        std::uint64_t samples, std::uint64_t seed,
                                        const RunConfig& cfg) {
    check_compatible(es, target);
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (samples < 10'000) throw std::invalid_argument("need at least 10^4 samples");

    const int ms = es.ms();
    const int rr = es.rr();
    const double dfact = factorial(es.degree()).convert_to<double>();
    const double threshold = dfact * epsilon;

    // Residual polynomials M(j)*(E_{rho,j} - psi_mu), i.e. d!*(Phi - n_j).
    std::vector<DoublePoly> residuals;
    residuals.reserve(rr);
    for (int rho = 0; rho < es.num_forms(); ++rho)
        for (int j = 0; j < es.r(); ++j) {
            const auto& idx = es.indices().at(j);
            const double mj = idx.M.convert_to<double>();
            DoublePoly p = compile_poly(es.e_poly(rho, j), mj);
            p.constant -= mj * target.psi(rho, idx.mu).convert_to<double>();
            residuals.push_back(std::move(p));
        }

    constexpr std::uint64_t kBatch = 1 << 16;
    const std::uint64_t nchunks = (samples + kBatch - 1) / kBatch;
    std::vector<std::uint64_t> chunk_hits(nchunks, 0);

    parallel_chunks(nchunks, resolve_threads(cfg.threads), [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * kBatch;
        const std::uint64_t end = std::min(samples, begin + kBatch);
        std::vector<double> x(ms);
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            for (int c = 0; c < ms; ++c)
                x[c] = philox::uniform_pm1(seed, i * static_cast<std::uint64_t>(ms) + c);
            bool inside = true;
            for (const auto& res : residuals)
                if (std::abs(res.eval(x)) > threshold) {
                    inside = false;
                    break;
                }
            hits += inside;
        }
        chunk_hits[chunk] = hits;
    });

    std::uint64_t hits = 0;
    for (std::uint64_t h : chunk_hits) hits += h;

    const double phat = static_cast<double>(hits) / static_cast<double>(samples);
    const double box_volume = std::pow(2.0, ms);
    const double scale = box_volume * std::pow(2.0 * epsilon, -rr);

    RealDensityEstimate out;
    out.epsilon = epsilon;
    out.samples = samples;
    out.seed = seed;
    out.hits = hits;
    out.estimate = scale * phat;
    out.standard_error =
        scale * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
    return out;
}

namespace {

std::complex<double> midpoint_integral(const DoublePoly& phase, int ms, double P,
                                       int grid, const RunConfig& cfg) {
    require_within_limit(box_points(static_cast<std::uint64_t>(grid), ms), cfg);
    const double h = 2.0 * P / grid;
    const double weight = std::pow(h, ms);

    const std::uint64_t nchunks = static_cast<std::uint64_t>(grid);
    std::vector<std::complex<double>> parts(nchunks);

    parallel_chunks(nchunks, resolve_threads(cfg.threads), [&](std::uint64_t chunk) {
        std::vector<double> xi(ms);
        std::vector<int> idx(ms, 0);
        xi[0] = -P + (static_cast<double>(chunk) + 0.5) * h;
        for (int c = 1; c < ms; ++c) xi[c] = -P + 0.5 * h;
        KahanComplex acc;
        while (true) {
            const double ph = kTwoPi * phase.eval(xi);
            acc.add(std::cos(ph), std::sin(ph));
            int c = ms - 1;
            while (c >= 1 && idx[c] == grid - 1) {
                idx[c] = 0;
                xi[c] = -P + 0.5 * h;
                --c;
            }
            if (c < 1) break;
            ++idx[c];
            xi[c] = -P + (static_cast<double>(idx[c]) + 0.5) * h;
        }
        parts[chunk] = acc.value();
    });

    KahanComplex total;
    for (const auto& part : parts) total.add(part);
    return total.value() * weight;
}

}  // namespace

OscillatoryIntegral v_P_numeric(const ExpandedSystem& es, const TargetSystem& target,
                                const std::vector<double>& beta, double P,
                                int grid_points_per_axis, const RunConfig& cfg) {
    check_compatible(es, target);
    if (static_cast<int>(beta.size()) != es.rr())
        throw std::invalid_argument("beta must have length R*r");
    if (grid_points_per_axis < 1) throw std::invalid_argument("grid must be positive");
    if (!(P > 0)) throw std::invalid_argument("P must be positive");

    const double dfact = factorial(es.degree()).convert_to<double>();
    // Phase F(xi; beta) = sum beta_{rho,j} (Phi_j(xi) - n_j), assembled as
    // one polynomial with coefficients beta * M(j)/d!.
    DoublePoly phase;
    {
        int k = 0;
        std::map<std::vector<int>, double> coeffs;
        double constant = 0;
        for (int rho = 0; rho < es.num_forms(); ++rho)
            for (int j = 0; j < es.r(); ++j, ++k) {
                const auto& idx = es.indices().at(j);
                const double w = beta[k] * idx.M.convert_to<double>() / dfact;
                if (w == 0) continue;
                for (const auto& [exps, coeff] : es.e_poly(rho, j).terms())
                    coeffs[exps] += w * coeff.convert_to<double>();
                constant -= w * target.psi(rho, idx.mu).convert_to<double>();
            }
        phase.constant = constant;
        for (const auto& [exps, c] : coeffs) {
            if (c == 0) continue;
            DoubleMono m = compile_mono(exps, c);
            if (m.facs.empty())
                phase.constant += m.coeff;
            else
                phase.monos.push_back(std::move(m));
        }
    }

    OscillatoryIntegral out;
    out.grid = grid_points_per_axis;
    out.value = midpoint_integral(phase, es.ms(), P, grid_points_per_axis, cfg);
    const int coarse_grid = std::max(1, grid_points_per_axis / 2);
    out.coarse = midpoint_integral(phase, es.ms(), P, coarse_grid, cfg);
    out.refinement_delta = std::abs(out.value - out.coarse);
    return out;
}

}  // namespace formcount
