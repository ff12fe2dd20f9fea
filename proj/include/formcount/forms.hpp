#pragma once

#include "formcount/bigint.hpp"
#include "formcount/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace formcount {

// Integer form of degree d in s variables, stored as a sparse monomial map.
// Exponent vectors have length s and entry sum exactly d.
class Form {
public:
    Form(int degree, int num_vars, std::map<std::vector<int>, BigInt> terms,
         std::string name = "");

    int degree() const { return degree_; }
    int num_vars() const { return num_vars_; }
    const std::string& name() const { return name_; }
    const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }

    BigInt evaluate(const std::vector<BigInt>& x) const;
    double evaluate(const std::vector<double>& x) const;

private:
    int degree_;
    int num_vars_;
    std::string name_;
    std::map<std::vector<int>, BigInt> terms_;
};

// Symmetric coefficient tensor of a form, scaled by d! so that every entry
// is an integer: the entry at the nondecreasing tuple i equals d!*c(i),
// where F(x) = sum_i c(i) x_{i_1}...x_{i_d} over all of {0..s-1}^d.
// Contracting d times against (x,...,x) therefore gives d!*F(x) exactly.
class ScaledSymmetricTensor {
public:
    ScaledSymmetricTensor(int degree, int num_vars,
                          std::map<std::vector<int>, BigInt> entries);

    int degree() const { return degree_; }
    int num_vars() const { return num_vars_; }
    const std::map<std::vector<int>, BigInt>& entries() const { return entries_; }

    // Exact d!*Phi(x^(1),...,x^(d)); symmetric and multilinear in its arguments.
    BigInt contract(const std::vector<std::vector<BigInt>>& args) const;

private:
    int degree_;
    int num_vars_;
    std::map<std::vector<int>, BigInt> entries_;
};

ScaledSymmetricTensor symmetrize(const Form& f);

inline BigInt evaluate_multilinear_scaled(const ScaledSymmetricTensor& t,
                                          const std::vector<std::vector<BigInt>>& args) {
    return t.contract(args);
}

// R forms of common degree and variable count together with their scaled
// symmetric tensors.
class FormSystem {
public:
    explicit FormSystem(std::vector<Form> forms);

    int count() const { return static_cast<int>(forms_.size()); }
    int degree() const { return forms_.front().degree(); }
    int num_vars() const { return forms_.front().num_vars(); }
    const std::vector<Form>& forms() const { return forms_; }
    const std::vector<ScaledSymmetricTensor>& tensors() const { return tensors_; }

private:
    std::vector<Form> forms_;
    std::vector<ScaledSymmetricTensor> tensors_;
};

}  // namespace formcount
