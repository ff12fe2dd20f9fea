#include "formcount/expansion.hpp"

#include <algorithm>
#include <stdexcept>

namespace formcount {

MultiIndexSet::MultiIndexSet(int m, int d) : m_(m), d_(d) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    const BigInt dfact = factorial(d);
    std::vector<int> j(d, 0);
    while (true) {
        MultiIndex idx;
        idx.entries = j;
        idx.mu.assign(m, 0);
        for (int e : j) idx.mu[e]++;
        idx.M = 1;
        for (int mu : idx.mu) idx.M *= factorial(mu);
        idx.A = dfact / idx.M;
        by_profile_[idx.mu] = static_cast<int>(indices_.size());
        indices_.push_back(std::move(idx));
        // Advance to the next nondecreasing tuple in lexicographic order.
        int k = d - 1;
        while (k >= 0 && j[k] == m - 1) --k;
        if (k < 0) break;
        const int v = j[k] + 1;
        for (int t = k; t < d; ++t) j[t] = v;
    }
}

int MultiIndexSet::find_profile(const std::vector<int>& mu) const {
    auto it = by_profile_.find(mu);
    return it == by_profile_.end() ? -1 : it->second;
}

std::pair<BigInt, BigInt> weights(const MultiIndex& j) {
    return {j.A, j.M};
}

TargetSystem::TargetSystem(int m, int degree, int num_forms,
                           std::vector<std::map<std::vector<int>, BigInt>> psis)
    : m_(m), degree_(degree), num_forms_(num_forms), psis_(std::move(psis)) {
    if (static_cast<int>(psis_.size()) != num_forms_)
        throw std::invalid_argument("expected " + std::to_string(num_forms_) +
                                    " target polynomials, got " +
                                    std::to_string(psis_.size()));
    for (auto& psi : psis_) {
        for (auto it = psi.begin(); it != psi.end();) {
            const auto& mu = it->first;
            if (static_cast<int>(mu.size()) != m_)
                throw std::invalid_argument("target profile length mismatch");
            int sum = 0;
            for (int e : mu) {
                if (e < 0) throw std::invalid_argument("negative target exponent");
                sum += e;
            }
            if (sum != degree_)
                throw std::invalid_argument("target monomial degree mismatch");
            if (it->second == 0)
                it = psi.erase(it);
            else
                ++it;
        }
    }
}

TargetSystem TargetSystem::zero(int m, int degree, int num_forms) {
    return TargetSystem(m, degree, num_forms,
                        std::vector<std::map<std::vector<int>, BigInt>>(num_forms));
}

bool TargetSystem::is_zero() const {
    for (const auto& psi : psis_)
        if (!psi.empty()) return false;
    return true;
}

const BigInt& TargetSystem::psi(int rho, const std::vector<int>& mu) const {
    const auto& psi = psis_.at(rho);
    auto it = psi.find(mu);
    return it == psi.end() ? zero_ : it->second;
}

ExpandedSystem::ExpandedSystem(FormSystem system, int m)
    : system_(std::move(system)), m_(m), indices_(m, system_.degree()) {
    const int d = system_.degree();
    const int s = system_.num_vars();
    const int nvars = m_ * s;
    e_polys_.reserve(system_.count());
    for (int rho = 0; rho < system_.count(); ++rho) {
        const auto& tensor = system_.tensors()[rho];
        std::vector<Poly> row;
        row.reserve(indices_.r());
        for (const auto& j : indices_.indices()) {
            // d!*Phi(x_{j_1},...,x_{j_d}) contracted symbolically, then the
            // exact division by M(j) yields E = A(j)*Phi with integer
            // coefficients.
            Poly p(nvars);
            std::vector<int> perm;
            std::vector<int> exps(nvars);
            for (const auto& [idx, value] : tensor.entries()) {
                perm = idx;
                do {
                    std::fill(exps.begin(), exps.end(), 0);
                    for (int k = 0; k < d; ++k) exps[j.entries[k] * s + perm[k]]++;
                    p.add_term(exps, value);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            p.divide_exact(j.M);
            row.push_back(std::move(p));
        }
        e_polys_.push_back(std::move(row));
    }
}

void check_compatible(const ExpandedSystem& es, const TargetSystem& target) {
    if (target.m() != es.m() || target.degree() != es.degree() ||
        target.num_forms() != es.num_forms())
        throw std::invalid_argument("target system incompatible with expanded system");
}

}  // namespace formcount
