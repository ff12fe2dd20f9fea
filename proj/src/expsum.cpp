#include "formcount/expsum.hpp"

#include <cmath>
#include <stdexcept>

namespace formcount {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

AlphaPoint AlphaPoint::rational(std::vector<std::int64_t> a, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    for (auto& v : a) v = ((v % q) + q) % q;
    AlphaPoint out;
    out.q = q;
    out.a = std::move(a);
    return out;
}

AlphaPoint AlphaPoint::real(std::vector<double> alpha) {
    AlphaPoint out;
    out.beta = std::move(alpha);
    return out;
}

bool AlphaPoint::is_exact_rational() const {
    if (q < 1) return false;
    for (double b : beta)
        if (b != 0) return false;
    return true;
}

std::vector<double> AlphaPoint::components(int rr) const {
    std::vector<double> out(rr, 0.0);
    if (q > 0) {
        if (static_cast<int>(a.size()) != rr)
            throw std::invalid_argument("anchor numerators must have length R*r");
        for (int k = 0; k < rr; ++k)
            out[k] = static_cast<double>(a[k]) / static_cast<double>(q);
    }
    if (!beta.empty()) {
        if (static_cast<int>(beta.size()) != rr)
            throw std::invalid_argument("beta must have length R*r");
        for (int k = 0; k < rr; ++k) out[k] += beta[k];
    }
    for (double& v : out) {
        v -= std::floor(v);
        if (v >= 1.0) v = 0.0;
    }
    return out;
}

std::complex<double> exponential_sum_T(const ExpandedSystem& es,
                                       const TargetSystem& target,
                                       const AlphaPoint& alpha, std::int64_t P,
                                       const RunConfig& cfg) {
    check_compatible(es, target);
    if (P < 0) throw std::invalid_argument("P must be nonnegative");
    const int ms = es.ms();
    require_within_limit(box_points(static_cast<std::uint64_t>(2 * P + 1), ms), cfg);

    if (alpha.is_exact_rational()) {
        const BigInt dfact = factorial(es.degree());
        const BigInt modulus_big = BigInt(alpha.q) * dfact;
        if (modulus_big >= (BigInt(1) << 31))
            throw std::invalid_argument("phase modulus q*d! too large");
        const std::int64_t modulus = to_int64(modulus_big);
        const Poly phase = phase_numerator_poly(es, target, alpha.a);
        BoxLadder<std::int64_t> ladder({&phase}, {BigInt(0)}, ms, -P, P, modulus);
        return residue_histogram_value(ladder.histogram(cfg), modulus);
    }

    // Real phases: one combined polynomial with weights alpha * M(j)/d!,
    // evaluated pointwise with compensated accumulation.
    const std::vector<double> comps = alpha.components(es.rr());
    const double dfact = factorial(es.degree()).convert_to<double>();
    std::map<std::vector<int>, double> coeffs;
    double constant = 0;
    int k = 0;
    for (int rho = 0; rho < es.num_forms(); ++rho)
        for (int j = 0; j < es.r(); ++j, ++k) {
            const auto& idx = es.indices().at(j);
            const double w = comps[k] * idx.M.convert_to<double>() / dfact;
            if (w == 0) continue;
            for (const auto& [exps, coeff] : es.e_poly(rho, j).terms())
                coeffs[exps] += w * coeff.convert_to<double>();
            constant -= w * target.psi(rho, idx.mu).convert_to<double>();
        }

    struct Mono {
        double coeff;
        std::vector<std::pair<int, int>> facs;
    };
    std::vector<Mono> monos;
    for (const auto& [exps, c] : coeffs) {
        if (c == 0) continue;
        Mono m{c, {}};
        for (int v = 0; v < ms; ++v)
            if (exps[v] > 0) m.facs.emplace_back(v, exps[v]);
        if (m.facs.empty())
            constant += c;
        else
            monos.push_back(std::move(m));
    }

    const std::int64_t side = 2 * P + 1;
    std::vector<std::complex<double>> parts(static_cast<std::size_t>(side));
    parallel_chunks(static_cast<std::uint64_t>(side), resolve_threads(cfg.threads),
                    [&](std::uint64_t chunk) {
                        std::vector<double> x(ms, static_cast<double>(-P));
                        x[0] = static_cast<double>(-P + static_cast<std::int64_t>(chunk));
                        std::vector<std::int64_t> idx(ms, 0);
                        KahanComplex acc;
                        while (true) {
                            double ph = constant;
                            for (const auto& m : monos) {
                                double v = m.coeff;
                                for (const auto& [var, exp] : m.facs)
                                    for (int e = 0; e < exp; ++e) v *= x[var];
                                ph += v;
                            }
                            ph *= kTwoPi;
                            acc.add(std::cos(ph), std::sin(ph));
                            int c = ms - 1;
                            while (c >= 1 && idx[c] == side - 1) {
                                idx[c] = 0;
                                x[c] = static_cast<double>(-P);
                                --c;
                            }
                            if (c < 1) break;
                            ++idx[c];
                            x[c] = static_cast<double>(-P + idx[c]);
                        }
                        parts[chunk] = acc.value();
                    });
    KahanComplex total;
    for (const auto& part : parts) total.add(part);
    return total.value();
}

AffineForm differenced_form(const ExpandedSystem& es, int rho,
                            const std::vector<int>& j_sequence,
                            const std::vector<std::vector<BigInt>>& h_sequence) {
    const int d = es.degree();
    const int s = es.s();
    if (static_cast<int>(j_sequence.size()) != d - 1 ||
        h_sequence.size() != j_sequence.size())
        throw std::invalid_argument("expected d-1 index/shift pairs");
    for (int j : j_sequence)
        if (j < 1 || j > es.m()) throw std::invalid_argument("block index out of range");
    for (const auto& h : h_sequence)
        if (static_cast<int>(h.size()) != s)
            throw std::invalid_argument("shift vector length mismatch");

    // F^(rho)(x_1 + ... + x_m) = sum_j E_{rho,j}(xbar): exact integer
    // polynomial, so the iterated differences stay integral.
    Poly g(es.ms());
    for (int j = 0; j < es.r(); ++j) g.add(es.e_poly(rho, j));

    for (std::size_t k = 0; k < j_sequence.size(); ++k) {
        Poly shifted = g.shifted_range((j_sequence[k] - 1) * s, h_sequence[k]);
        shifted.sub(g);
        g = std::move(shifted);
    }

    AffineForm out;
    out.linear.assign(es.ms(), 0);
    for (const auto& [exps, coeff] : g.terms()) {
        int deg = 0, var = -1;
        for (int v = 0; v < es.ms(); ++v) {
            deg += exps[v];
            if (exps[v] > 0) var = v;
        }
        if (deg == 0)
            out.constant = coeff;
        else if (deg == 1)
            out.linear[var] = coeff;
        else
            throw std::logic_error("differenced form is not affine");
    }
    return out;
}

std::vector<BigInt> bilinear_B(const ExpandedSystem& es, int rho,
                               const std::vector<std::vector<BigInt>>& h_sequence) {
    const int d = es.degree();
    const int s = es.s();
    if (static_cast<int>(h_sequence.size()) != d - 1)
        throw std::invalid_argument("expected d-1 shift vectors");
    for (const auto& h : h_sequence)
        if (static_cast<int>(h.size()) != s)
            throw std::invalid_argument("shift vector length mismatch");

    const auto& tensor = es.system().tensors().at(rho);
    std::vector<std::vector<BigInt>> args;
    args.emplace_back(s, BigInt(0));  // basis slot
    for (const auto& h : h_sequence) args.push_back(h);

    std::vector<BigInt> out(s, 0);
    for (int i = 0; i < s; ++i) {
        args[0].assign(s, BigInt(0));
        args[0][i] = 1;
        out[i] = tensor.contract(args);
    }
    return out;
}

MajorArcReport major_arc_residual(const ExpandedSystem& es, const TargetSystem& target,
                                  const std::vector<std::int64_t>& a, std::int64_t q,
                                  const std::vector<double>& beta, std::int64_t P,
                                  int vp_grid, const RunConfig& cfg) {
    MajorArcReport out;
    AlphaPoint alpha = AlphaPoint::rational(a, q);
    alpha.beta = beta;
    out.exact = exponential_sum_T(es, target, alpha, P, cfg);
    out.sq = gauss_sum(es, target, q, a, cfg);
    std::vector<double> b = beta;
    if (b.empty()) b.assign(es.rr(), 0.0);
    out.vp = v_P_numeric(es, target, b, static_cast<double>(P), vp_grid, cfg);
    out.approx = std::pow(static_cast<double>(q), -es.ms()) * out.sq.value * out.vp.value;
    out.exact_abs = std::abs(out.exact);
    out.approx_abs = std::abs(out.approx);
    out.residual = std::abs(out.exact - out.approx);
    return out;
}

}  // namespace formcount
