#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// the expansion oracle builds the coefficient polynomials by direct
// multinomial expansion (the library contracts symmetric tensors), and the
// counting oracle walks the whole box evaluating monomials from scratch
// (the library uses the partial-evaluation ladder).

#include "formcount/expansion.hpp"
#include "formcount/forms.hpp"

#include <map>
#include <random>
#include <vector>

namespace oracles {

using formcount::BigInt;
using formcount::Form;
using formcount::Poly;

inline BigInt multinomial(int n, const std::vector<int>& parts) {
    BigInt out = formcount::factorial(n);
    for (int p : parts) out /= formcount::factorial(p);
    return out;
}

// All ways to write total as an ordered sum of `parts` nonnegative integers.
inline void compositions(int total, int parts, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        current.push_back(k);
        compositions(total - k, parts - 1, current, out);
        current.pop_back();
    }
}

// Coefficient polynomials of F(t_1 x_1 + ... + t_m x_m) by expanding every
// power (sum_i t_i x_{i,k})^{e_k} multinomially: profile mu -> polynomial in
// the m*s flattened coordinates.
inline std::map<std::vector<int>, Poly> expand_by_multinomial(const Form& f, int m) {
    const int s = f.num_vars();
    std::map<std::vector<int>, Poly> out;

    for (const auto& [exps, coeff] : f.terms()) {
        // Per variable k, the list of ways to split e_k across the m blocks.
        std::vector<std::vector<std::vector<int>>> splits(s);
        for (int k = 0; k < s; ++k) {
            std::vector<int> scratch;
            compositions(exps[k], m, scratch, splits[k]);
        }
        // Odometer over one split choice per variable.
        std::vector<std::size_t> pick(s, 0);
        while (true) {
            std::vector<int> mu(m, 0);
            std::vector<int> flat(m * s, 0);
            BigInt c = coeff;
            for (int k = 0; k < s; ++k) {
                const auto& kappa = splits[k][pick[k]];
                c *= multinomial(exps[k], kappa);
                for (int i = 0; i < m; ++i) {
                    mu[i] += kappa[i];
                    flat[i * s + k] = kappa[i];
                }
            }
            auto it = out.find(mu);
            if (it == out.end()) it = out.emplace(mu, Poly(m * s)).first;
            it->second.add_term(flat, c);
            int k = s - 1;
            while (k >= 0 && pick[k] + 1 == splits[k].size()) pick[k--] = 0;
            if (k < 0) break;
            ++pick[k];
        }
    }
    return out;
}

// F(t_1 x_1 + ... + t_m x_m) by direct substitution and form evaluation.
inline BigInt substituted_value(const Form& f, const std::vector<BigInt>& t,
                                const std::vector<std::vector<BigInt>>& xbar) {
    const int s = f.num_vars();
    std::vector<BigInt> y(s, 0);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (int k = 0; k < s; ++k) y[k] += t[i] * xbar[i][k];
    return f.evaluate(y);
}

// Full-box enumeration with fresh per-point evaluation of every equation.
inline std::uint64_t naive_count(const formcount::ExpandedSystem& es,
                                 const formcount::TargetSystem& target,
                                 std::int64_t P) {
    const int n = es.ms();
    std::vector<BigInt> x(n, -P);
    std::vector<std::int64_t> idx(n, 0);
    const std::int64_t side = 2 * P + 1;
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (int rho = 0; rho < es.num_forms() && ok; ++rho)
            for (int j = 0; j < es.r() && ok; ++j)
                ok = es.e_poly(rho, j).eval<BigInt>(x) ==
                     target.psi(rho, es.indices().at(j).mu);
        count += ok;
        int c = n - 1;
        while (c >= 0 && idx[c] == side - 1) {
            idx[c] = 0;
            x[c] = -P;
            --c;
        }
        if (c < 0) break;
        ++idx[c];
        x[c] = -P + idx[c];
    }
    return count;
}

// Same box walk mod p^l.
inline std::uint64_t naive_gamma(const formcount::ExpandedSystem& es,
                                 const formcount::TargetSystem& target,
                                 const BigInt& modulus) {
    const int n = es.ms();
    const std::int64_t side = formcount::to_int64(modulus);
    std::vector<BigInt> x(n, 0);
    std::vector<std::int64_t> idx(n, 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (int rho = 0; rho < es.num_forms() && ok; ++rho)
            for (int j = 0; j < es.r() && ok; ++j) {
                BigInt v = es.e_poly(rho, j).eval<BigInt>(x) -
                           target.psi(rho, es.indices().at(j).mu);
                ok = v % modulus == 0;
            }
        count += ok;
        int c = n - 1;
        while (c >= 0 && idx[c] == side - 1) {
            idx[c] = 0;
            x[c] = 0;
            --c;
        }
        if (c < 0) break;
        ++idx[c];
        x[c] = idx[c];
    }
    return count;
}

// Deterministic random instances for the property tests.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
};

inline Form random_form(Rng& rng, int d, int s, int max_terms, int coeff_bound) {
    std::map<std::vector<int>, BigInt> terms;
    const int nterms = rng.uniform(1, max_terms);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> exps(s, 0);
        for (int k = 0; k < d; ++k) exps[rng.uniform(0, s - 1)]++;
        int c = 0;
        while (c == 0) c = rng.uniform(-coeff_bound, coeff_bound);
        terms[exps] += c;
    }
    return Form(d, s, std::move(terms));
}

inline std::vector<BigInt> random_vector(Rng& rng, int len, int bound) {
    std::vector<BigInt> out(len);
    for (auto& v : out) v = rng.uniform(-bound, bound);
    return out;
}

}  // namespace oracles
