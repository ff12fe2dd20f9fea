#pragma once

#include "formcount/expansion.hpp"
#include "formcount/forms.hpp"

#include <utility>
#include <vector>

namespace helpers {

using formcount::BigInt;
using formcount::Form;

inline Form make_form(int d, int s,
                      std::vector<std::pair<std::vector<int>, long long>> terms,
                      std::string name = "") {
    std::map<std::vector<int>, BigInt> map;
    for (auto& [e, c] : terms) map[e] += c;
    return Form(d, s, std::move(map), std::move(name));
}

// x_1^d + ... + x_s^d with the given signs (defaults to all +1).
inline Form diagonal_form(int d, int s, std::vector<int> signs = {}) {
    if (signs.empty()) signs.assign(s, 1);
    std::vector<std::pair<std::vector<int>, long long>> terms;
    for (int k = 0; k < s; ++k) {
        std::vector<int> e(s, 0);
        e[k] = d;
        terms.push_back({e, signs[k]});
    }
    return make_form(d, s, std::move(terms));
}

inline formcount::ExpandedSystem diagonal_system(int d, int s, int m,
                                                 std::vector<int> signs = {}) {
    return formcount::ExpandedSystem(
        formcount::FormSystem({diagonal_form(d, s, std::move(signs))}), m);
}

inline formcount::TargetSystem zero_target(const formcount::ExpandedSystem& es) {
    return formcount::TargetSystem::zero(es.m(), es.degree(), es.num_forms());
}

}  // namespace helpers
