#pragma once

#include "formcount/forms.hpp"
#include "formcount/poly.hpp"

#include <map>
#include <vector>

namespace formcount {

// Nondecreasing multi-index j = (j_1 <= ... <= j_d) over blocks {1..m},
// together with its multiplicity profile mu and the combinatorial weights
// A = d!/(mu_1!...mu_m!) and M = mu_1!...mu_m!, so A*M = d!.
struct MultiIndex {
    std::vector<int> entries;  // 0-based block indices, nondecreasing
    std::vector<int> mu;       // length m, sums to d
    BigInt A;
    BigInt M;
};

class MultiIndexSet {
public:
    MultiIndexSet(int m, int d);

    int m() const { return m_; }
    int d() const { return d_; }
    int r() const { return static_cast<int>(indices_.size()); }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    const MultiIndex& at(int i) const { return indices_[i]; }

    // Position of the index with the given multiplicity profile, -1 if absent.
    int find_profile(const std::vector<int>& mu) const;

private:
    int m_;
    int d_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, int> by_profile_;
};

// Weights (A, M) of a single multi-index.
std::pair<BigInt, BigInt> weights(const MultiIndex& j);

// Target monomial coefficients psi_mu per form: the plain coefficient of
// t_1^{mu_1}...t_m^{mu_m} in psi^(rho). Profiles absent from the map are
// zero. The paper-style n_j equal psi_mu/A(j) and may be non-integral,
// which is why the plain coefficients are what gets stored.
class TargetSystem {
public:
    TargetSystem(int m, int degree, int num_forms,
                 std::vector<std::map<std::vector<int>, BigInt>> psis);

    // All-zero target.
    static TargetSystem zero(int m, int degree, int num_forms);

    int m() const { return m_; }
    int degree() const { return degree_; }
    int num_forms() const { return num_forms_; }
    bool is_zero() const;

    const BigInt& psi(int rho, const std::vector<int>& mu) const;
    const std::vector<std::map<std::vector<int>, BigInt>>& psis() const { return psis_; }

private:
    int m_;
    int degree_;
    int num_forms_;
    std::vector<std::map<std::vector<int>, BigInt>> psis_;
    BigInt zero_ = 0;
};

// The expanded system of the R*r coefficient equations of
// F^(rho)(t_1 x_1 + ... + t_m x_m): for each (rho, j) the exact integer
// polynomial E_{rho,j}(xbar) = A(j)*Phi^(rho)(x_{j_1},...,x_{j_d}) in the
// m*s flattened coordinates, where coordinate (block i, component k) sits
// at position i*s + k.
class ExpandedSystem {
public:
    ExpandedSystem(FormSystem system, int m);

    const FormSystem& system() const { return system_; }
    const MultiIndexSet& indices() const { return indices_; }
    int m() const { return m_; }
    int num_forms() const { return system_.count(); }
    int degree() const { return system_.degree(); }
    int s() const { return system_.num_vars(); }
    int ms() const { return m_ * system_.num_vars(); }
    int r() const { return indices_.r(); }
    int rr() const { return num_forms() * r(); }

    const Poly& e_poly(int rho, int jidx) const { return e_polys_[rho][jidx]; }

    BigInt e_value(int rho, int jidx, const std::vector<BigInt>& xbar) const {
        return e_polys_[rho][jidx].eval<BigInt>(xbar);
    }

private:
    FormSystem system_;
    int m_;
    MultiIndexSet indices_;
    std::vector<std::vector<Poly>> e_polys_;  // [rho][jidx]
};

inline ExpandedSystem expand_system(FormSystem system, int m) {
    return ExpandedSystem(std::move(system), m);
}

// Throws unless the target is shaped for the expanded system.
void check_compatible(const ExpandedSystem& es, const TargetSystem& target);

}  // namespace formcount
