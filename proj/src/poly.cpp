#include "formcount/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace formcount {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

void Poly::add_term(const std::vector<int>& exps, const BigInt& coeff) {
    if (coeff == 0) return;
    if (static_cast<int>(exps.size()) != nvars_)
        throw std::invalid_argument("exponent vector length mismatch");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::add(const Poly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
}

void Poly::sub(const Poly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
}

void Poly::scale(const BigInt& c) {
    if (c == 0) {
        terms_.clear();
        return;
    }
    for (auto& [e, v] : terms_) v *= c;
}

void Poly::divide_exact(const BigInt& c) {
    if (c == 0) throw std::invalid_argument("division by zero");
    for (auto& [e, v] : terms_) {
        if (v % c != 0) throw std::logic_error("inexact coefficient division");
        v /= c;
    }
}

int Poly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        deg = std::max(deg, d);
    }
    return deg;
}

int Poly::degree_in(int var) const {
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
    return deg;
}

int Poly::top_var() const {
    int top = -1;
    for (const auto& [e, c] : terms_)
        for (int v = nvars_ - 1; v > top; --v)
            if (e[v] > 0) {
                top = v;
                break;
            }
    return top;
}

Poly Poly::shifted_var(int var, const BigInt& h) const {
    if (h == 0) return *this;
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        const int n = e[var];
        if (n == 0) {
            out.add_term(e, c);
            continue;
        }
        // (x+h)^n expanded term by term.
        std::vector<int> exps = e;
        BigInt hpow = 1;
        for (int k = n; k >= 0; --k) {
            exps[var] = k;
            out.add_term(exps, c * binomial(n, k) * hpow);
            hpow *= h;
        }
    }
    return out;
}

Poly Poly::shifted_range(int base, const std::vector<BigInt>& h) const {
    Poly out = *this;
    for (std::size_t i = 0; i < h.size(); ++i)
        out = out.shifted_var(base + static_cast<int>(i), h[i]);
    return out;
}

std::string Poly::to_string(const std::function<std::string(int)>& var_name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool has_vars = false;
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) has_vars = true;
        if (mag != 1 || !has_vars) {
            os << mag.str();
            if (has_vars) os << "*";
        }
        bool firstv = true;
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << var_name(v);
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

}  // namespace formcount
