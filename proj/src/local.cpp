#include "formcount/local.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace formcount {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

std::complex<double> residue_histogram_value(const std::vector<std::uint64_t>& hist,
                                             std::int64_t modulus) {
    KahanComplex acc;
    for (std::int64_t r = 0; r < modulus; ++r) {
        if (hist[static_cast<std::size_t>(r)] == 0) continue;
        const double phase = kTwoPi * static_cast<double>(r) / static_cast<double>(modulus);
        const double w = static_cast<double>(hist[static_cast<std::size_t>(r)]);
        acc.add(w * std::cos(phase), w * std::sin(phase));
    }
    return acc.value();
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

BigInt gamma_congruence(const ExpandedSystem& es, const TargetSystem& target,
                        std::int64_t p, int l, const RunConfig& cfg) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (l < 1) throw std::invalid_argument("level must be at least 1");
    BigInt modulus = big_pow(BigInt(p), l);

    std::vector<const Poly*> eqs;
    std::vector<BigInt> targets;
    flatten_equations(es, target, eqs, targets);

    if (modulus > (BigInt(1) << 62)) throw WorkLimitError(UINT64_MAX, cfg.max_iter);
    const std::int64_t m64 = to_int64(modulus);
    EnumResult res = count_zeros(eqs, targets, es.ms(), 0, m64 - 1, modulus, {}, cfg);
    return BigInt(res.count);
}

LocalDensity chi_p_congruence(const ExpandedSystem& es, const TargetSystem& target,
                              std::int64_t p, int l, const RunConfig& cfg) {
    LocalDensity out;
    out.p = p;
    out.l = l;
    out.gamma = gamma_congruence(es, target, p, l, cfg);
    out.method = "congruence";
    const long exponent = static_cast<long>(l) * (es.rr() - es.ms());
    if (exponent >= 0)
        out.chi = BigRat(out.gamma * big_pow(BigInt(p), static_cast<unsigned>(exponent)));
    else
        out.chi = BigRat(out.gamma, big_pow(BigInt(p), static_cast<unsigned>(-exponent)));
    return out;
}

Poly phase_numerator_poly(const ExpandedSystem& es, const TargetSystem& target,
                          const std::vector<std::int64_t>& a) {
    check_compatible(es, target);
    if (static_cast<int>(a.size()) != es.rr())
        throw std::invalid_argument("phase weight vector must have length R*r");
    Poly out(es.ms());
    const std::vector<int> zero_exps(es.ms(), 0);
    int k = 0;
    for (int rho = 0; rho < es.num_forms(); ++rho)
        for (int j = 0; j < es.r(); ++j, ++k) {
            if (a[k] == 0) continue;
            const BigInt w = BigInt(a[k]) * es.indices().at(j).M;
            Poly term = es.e_poly(rho, j);
            term.scale(w);
            out.add(term);
            out.add_term(zero_exps, -w * target.psi(rho, es.indices().at(j).mu));
        }
    return out;
}

GaussSumValue gauss_sum(const ExpandedSystem& es, const TargetSystem& target,
                        std::int64_t q, std::vector<std::int64_t> a,
                        const RunConfig& cfg) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    if (static_cast<int>(a.size()) != es.rr())
        throw std::invalid_argument("a must have length R*r");
    for (auto& v : a) v = ((v % q) + q) % q;

    require_within_limit(box_points(static_cast<std::uint64_t>(q), es.ms()), cfg);

    const BigInt dfact = factorial(es.degree());
    const BigInt modulus_big = BigInt(q) * dfact;
    if (modulus_big >= (BigInt(1) << 31))
        throw std::invalid_argument("phase modulus q*d! too large");
    const std::int64_t modulus = to_int64(modulus_big);

    GaussSumValue out;
    out.q = q;
    out.a = a;

    const Poly phase = phase_numerator_poly(es, target, a);
    BoxLadder<std::int64_t> ladder({&phase}, {BigInt(0)}, es.ms(), 1, q, modulus);
    out.value = residue_histogram_value(ladder.histogram(cfg), modulus);
    return out;
}

std::complex<double> series_term(const ExpandedSystem& es, const TargetSystem& target,
                                 std::int64_t q, const RunConfig& cfg) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    require_within_limit(box_points(static_cast<std::uint64_t>(q), es.ms() + es.rr()),
                         cfg);
    if (q == 1) return {1.0, 0.0};

    const int rr = es.rr();
    std::vector<std::int64_t> a(rr, 0);
    KahanComplex acc;
    // Odometer over a in [0,q)^{Rr}, keeping gcd(a_1,...,a_Rr, q) = 1.
    while (true) {
        std::int64_t g = q;
        for (std::int64_t v : a) g = std::gcd(g, v);
        if (g == 1) acc.add(gauss_sum(es, target, q, a, cfg).value);
        int k = rr - 1;
        while (k >= 0 && a[k] == q - 1) a[k--] = 0;
        if (k < 0) break;
        ++a[k];
    }
    const double scale = std::pow(static_cast<double>(q), -es.ms());
    return acc.value() * scale;
}

SeriesTruncation truncated_singular_series(const ExpandedSystem& es,
                                           const TargetSystem& target, std::int64_t Q,
                                           const RunConfig& cfg) {
    SeriesTruncation out;
    double sum = 0, comp = 0;
    for (std::int64_t q = 1; q <= Q; ++q) {
        const std::complex<double> term = series_term(es, target, q, cfg);
        out.terms.push_back(term);
        out.max_imag = std::max(out.max_imag, std::abs(term.imag()));
        const double y = term.real() - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    out.value = sum;
    return out;
}

}  // namespace formcount
