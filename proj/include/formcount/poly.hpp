#pragma once

#include "formcount/bigint.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace formcount {

// Sparse multivariate polynomial with exact integer coefficients over a
// fixed number of variables. Exponent vectors are stored densely; terms
// with zero coefficient are never kept.
class Poly {
public:
    using Terms = std::map<std::vector<int>, BigInt>;

    explicit Poly(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const std::vector<int>& exps, const BigInt& coeff);
    void add(const Poly& other);
    void sub(const Poly& other);
    void scale(const BigInt& c);

    // Divides every coefficient by c; throws if any division is inexact.
    void divide_exact(const BigInt& c);

    int total_degree() const;
    int degree_in(int var) const;
    // Largest variable index with nonzero exponent in any term, -1 if constant.
    int top_var() const;

    // Substitutes x_var -> x_var + h and expands.
    Poly shifted_var(int var, const BigInt& h) const;
    // Substitutes x_v -> x_v + h[v - base] for v in [base, base + h.size()).
    Poly shifted_range(int base, const std::vector<BigInt>& h) const;

    template <class T>
    T eval(const std::vector<T>& point) const {
        T acc = T(0);
        for (const auto& [exps, coeff] : terms_) {
            T mono = coerce<T>(coeff);
            for (int v = 0; v < nvars_; ++v)
                for (int k = 0; k < exps[v]; ++k) mono *= point[v];
            acc += mono;
        }
        return acc;
    }

    bool operator==(const Poly& other) const {
        return nvars_ == other.nvars_ && terms_ == other.terms_;
    }

    // Renders e.g. "3*a^2*b - b^3" using the supplied variable namer.
    std::string to_string(const std::function<std::string(int)>& var_name) const;

private:
    template <class T>
    static T coerce(const BigInt& v) {
        return static_cast<T>(v);
    }

    int nvars_;
    Terms terms_;
};

template <>
inline double Poly::coerce<double>(const BigInt& v) {
    return v.convert_to<double>();
}

BigInt binomial(unsigned n, unsigned k);

}  // namespace formcount
