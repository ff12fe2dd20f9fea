#include "formcount/forms.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace formcount;
using helpers::make_form;

TEST_CASE("form construction enforces the invariants") {
    CHECK_THROWS_AS(make_form(3, 2, {{{2, 0}, 1}}), std::invalid_argument);  // sum 2 != 3
    CHECK_THROWS_AS(make_form(1, 1, {{{1}, 1}}), std::invalid_argument);     // d < 2
    CHECK_THROWS_AS(make_form(2, 0, {}), std::invalid_argument);             // s < 1
    CHECK_THROWS_AS(make_form(3, 2, {{{3}, 1}}), std::invalid_argument);     // bad length

    // zero coefficients are dropped
    Form f = make_form(3, 2, {{{2, 1}, 1}, {{3, 0}, 0}});
    CHECK(f.terms().size() == 1);
}

TEST_CASE("evaluate_form on the worked examples") {
    Form cube = make_form(3, 1, {{{3}, 1}});
    CHECK(cube.evaluate({BigInt(2)}) == 8);

    Form f = make_form(3, 2, {{{2, 1}, 1}});  // x1^2 x2
    CHECK(f.evaluate({BigInt(3), BigInt(-1)}) == -9);
    CHECK(f.evaluate({BigInt(0), BigInt(0)}) == 0);

    CHECK_THROWS_AS(f.evaluate(std::vector<BigInt>{BigInt(1)}), std::invalid_argument);
}

TEST_CASE("symmetrize produces the scaled entries") {
    SUBCASE("x^3") {
        auto t = symmetrize(make_form(3, 1, {{{3}, 1}}));
        REQUIRE(t.entries().size() == 1);
        CHECK(t.entries().at({0, 0, 0}) == 6);
    }
    SUBCASE("x1^2 x2") {
        auto t = symmetrize(make_form(3, 2, {{{2, 1}, 1}}));
        CHECK(t.entries().at({0, 0, 1}) == 2);
    }
    SUBCASE("x1 x2 x3") {
        auto t = symmetrize(make_form(3, 3, {{{1, 1, 1}, 1}}));
        CHECK(t.entries().at({0, 1, 2}) == 1);
    }
}

TEST_CASE("scaled multilinear form on the worked examples") {
    auto cube = symmetrize(make_form(3, 1, {{{3}, 1}}));
    // 6*Phi(a,b,c) = 6abc at (1,2,3)
    CHECK(cube.contract({{BigInt(1)}, {BigInt(2)}, {BigInt(3)}}) == 36);

    auto f = symmetrize(make_form(3, 2, {{{2, 1}, 1}}));
    std::vector<BigInt> x = {1, 1};
    CHECK(f.contract({x, x, x}) == 6);  // = 6*F((1,1))
}

TEST_CASE("diagonal identity: contraction at (x,...,x) equals d!F(x)") {
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = rng.uniform(2, 4);
        const int s = rng.uniform(1, 4);
        Form f = oracles::random_form(rng, d, s, 6, 9);
        auto tensor = symmetrize(f);
        auto x = oracles::random_vector(rng, s, 10);
        std::vector<std::vector<BigInt>> args(d, x);
        CHECK(tensor.contract(args) == factorial(d) * f.evaluate(x));
    }
}

TEST_CASE("contraction divided by d! reproduces x1^2 x2 on random points") {
    Form f = make_form(3, 2, {{{2, 1}, 1}});
    auto tensor = symmetrize(f);
    oracles::Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = oracles::random_vector(rng, 2, 10);
        BigInt c = tensor.contract({x, x, x});
        CHECK(c % 6 == 0);
        CHECK(c / 6 == f.evaluate(x));
    }
}

TEST_CASE("permutation symmetry of the multilinear form") {
    oracles::Rng rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = rng.uniform(2, 4);
        const int s = rng.uniform(1, 3);
        Form f = oracles::random_form(rng, d, s, 5, 7);
        auto tensor = symmetrize(f);
        std::vector<std::vector<BigInt>> args;
        for (int k = 0; k < d; ++k) args.push_back(oracles::random_vector(rng, s, 8));
        const BigInt reference = tensor.contract(args);

        std::vector<int> perm(d);
        for (int k = 0; k < d; ++k) perm[k] = k;
        do {
            std::vector<std::vector<BigInt>> shuffled;
            for (int k = 0; k < d; ++k) shuffled.push_back(args[perm[k]]);
            CHECK(tensor.contract(shuffled) == reference);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("multilinearity in the first argument") {
    oracles::Rng rng(31415);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = rng.uniform(2, 4);
        const int s = rng.uniform(1, 3);
        Form f = oracles::random_form(rng, d, s, 5, 7);
        auto tensor = symmetrize(f);
        auto x = oracles::random_vector(rng, s, 8);
        auto y = oracles::random_vector(rng, s, 8);
        std::vector<std::vector<BigInt>> rest;
        for (int k = 1; k < d; ++k) rest.push_back(oracles::random_vector(rng, s, 8));

        std::vector<BigInt> sum(s);
        for (int k = 0; k < s; ++k) sum[k] = x[k] + y[k];

        auto with_first = [&](const std::vector<BigInt>& first) {
            std::vector<std::vector<BigInt>> args = {first};
            args.insert(args.end(), rest.begin(), rest.end());
            return tensor.contract(args);
        };
        CHECK(with_first(sum) == with_first(x) + with_first(y));
    }
}

TEST_CASE("form system demands matching degree and variable count") {
    CHECK_THROWS_AS(FormSystem({make_form(3, 2, {{{3, 0}, 1}}),
                                make_form(3, 3, {{{3, 0, 0}, 1}})}),
                    std::invalid_argument);
    FormSystem fs({make_form(3, 2, {{{3, 0}, 1}}), make_form(3, 2, {{{0, 3}, 1}})});
    CHECK(fs.count() == 2);
    CHECK(fs.tensors().size() == 2);
}
