#include "formcount/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace formcount {

Form::Form(int degree, int num_vars, std::map<std::vector<int>, BigInt> terms,
           std::string name)
    : degree_(degree), num_vars_(num_vars), name_(std::move(name)),
      terms_(std::move(terms)) {
    if (degree_ < 2) throw std::invalid_argument("degree must be at least 2");
    if (num_vars_ < 1) throw std::invalid_argument("num_vars must be at least 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
        const auto& [exps, coeff] = *it;
        if (static_cast<int>(exps.size()) != num_vars_)
            throw std::invalid_argument("exponent vector length mismatch");
        int sum = 0;
        for (int e : exps) {
            if (e < 0) throw std::invalid_argument("negative exponent");
            sum += e;
        }
        if (sum != degree_)
            throw std::invalid_argument("degree mismatch: exponents sum to " +
                                        std::to_string(sum) + ", expected " +
                                        std::to_string(degree_));
        if (coeff == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

BigInt Form::evaluate(const std::vector<BigInt>& x) const {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("point dimension mismatch");
    BigInt acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        BigInt mono = coeff;
        for (int v = 0; v < num_vars_; ++v)
            for (int k = 0; k < exps[v]; ++k) mono *= x[v];
        acc += mono;
    }
    return acc;
}

double Form::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("point dimension mismatch");
    double acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        double mono = coeff.convert_to<double>();
        for (int v = 0; v < num_vars_; ++v)
            for (int k = 0; k < exps[v]; ++k) mono *= x[v];
        acc += mono;
    }
    return acc;
}

ScaledSymmetricTensor::ScaledSymmetricTensor(int degree, int num_vars,
                                             std::map<std::vector<int>, BigInt> entries)
    : degree_(degree), num_vars_(num_vars), entries_(std::move(entries)) {
    for (const auto& [idx, value] : entries_) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("tensor index length mismatch");
        if (!std::is_sorted(idx.begin(), idx.end()))
            throw std::invalid_argument("tensor index not nondecreasing");
        if (idx.front() < 0 || idx.back() >= num_vars_)
            throw std::invalid_argument("tensor index out of range");
    }
}

BigInt ScaledSymmetricTensor::contract(const std::vector<std::vector<BigInt>>& args) const {
    if (static_cast<int>(args.size()) != degree_)
        throw std::invalid_argument("contract expects d argument vectors");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) != num_vars_)
            throw std::invalid_argument("argument dimension mismatch");
    BigInt acc = 0;
    std::vector<int> perm;
    for (const auto& [idx, value] : entries_) {
        perm = idx;
        // Sum over the distinct arrangements of the canonical index tuple.
        BigInt orbit = 0;
        do {
            BigInt prod = 1;
            for (int k = 0; k < degree_; ++k) prod *= args[k][perm[k]];
            orbit += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc += value * orbit;
    }
    return acc;
}

ScaledSymmetricTensor symmetrize(const Form& f) {
    std::map<std::vector<int>, BigInt> entries;
    for (const auto& [exps, coeff] : f.terms()) {
        std::vector<int> idx;
        idx.reserve(f.degree());
        BigInt mult_factorials = 1;
        for (int v = 0; v < f.num_vars(); ++v) {
            for (int k = 0; k < exps[v]; ++k) idx.push_back(v);
            mult_factorials *= factorial(exps[v]);
        }
        // d!*c(i) = coeff * e_1! ... e_s! on the canonical representative.
        entries[idx] = coeff * mult_factorials;
    }
    return ScaledSymmetricTensor(f.degree(), f.num_vars(), std::move(entries));
}

FormSystem::FormSystem(std::vector<Form> forms) : forms_(std::move(forms)) {
    if (forms_.empty()) throw std::invalid_argument("form system needs at least one form");
    const int d = forms_.front().degree();
    const int s = forms_.front().num_vars();
    for (const auto& f : forms_) {
        if (f.degree() != d)
            throw std::invalid_argument("all forms must share one degree");
        if (f.num_vars() != s)
            throw std::invalid_argument("all forms must share one variable count");
    }
    tensors_.reserve(forms_.size());
    for (const auto& f : forms_) tensors_.push_back(symmetrize(f));
}

}  // namespace formcount
