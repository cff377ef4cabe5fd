#include "lri/error.hpp"
#include "lri/expression.hpp"
#include "lri/search.hpp"

#include <doctest.h>

using namespace lri;

TEST_CASE("exhaustive leaf count") {
    // Two variables in GF(2)^2: (0,0), (0,e1), (e1,0), (e1,e1), (e1,e2).
    CHECK(exhaustive_leaf_count(2, 2, 2) == 5);
    CHECK(exhaustive_leaf_count(3, 4, 8) == 6'307'404);
}

TEST_CASE("exhaustive search finds an Ingleton-free world in GF(2)^3") {
    const auto r = search_violation(builtin_expression("ingleton"), PrimeField(2), 3, ExhaustiveOneDim{});
    CHECK_FALSE(r.violation.has_value());
}

TEST_CASE("exhaustive search over GF(3)^4 returns the T8 counterexample first") {
    const auto r = search_violation(builtin_expression("t8"), PrimeField(3), 4, ExhaustiveOneDim{});
    REQUIRE(r.violation.has_value());
    CHECK(r.residual == Rational(-1));
    CHECK(evaluate(builtin_expression("t8"), *r.violation) == r.residual);
    CHECK(r.violation->at("Y").dim() == 1);
}

TEST_CASE("exhaustive search over GF(2)^4 finds no T8 violation") {
    const auto r = search_violation(builtin_expression("t8"), PrimeField(2), 4, ExhaustiveOneDim{});
    CHECK_FALSE(r.violation.has_value());
    CHECK(r.space == exhaustive_leaf_count(2, 4, 8));
}

TEST_CASE("search results do not depend on the worker count") {
    const auto expr = builtin_expression("t8-as-printed");
    const auto one = search_violation(expr, PrimeField(3), 3, ExhaustiveOneDim{}, {1});
    const auto four = search_violation(expr, PrimeField(3), 3, ExhaustiveOneDim{}, {4});
    REQUIRE(one.violation.has_value());
    CHECK(one.index == four.index);
    CHECK(*one.violation == *four.violation);

    const RandomTrials random{5, 500, std::nullopt};
    const auto a = search_violation(builtin_expression("ingleton"), PrimeField(2), 4, random, {1});
    const auto b = search_violation(builtin_expression("ingleton"), PrimeField(2), 4, random, {3});
    CHECK(a.violation.has_value() == b.violation.has_value());
    CHECK(a.index == b.index);
}

TEST_CASE("random search is reproducible from its seed") {
    const RandomTrials random{9, 300, 1};
    const auto a = search_violation(builtin_expression("t8-as-printed"), PrimeField(5), 3, random);
    const auto b = search_violation(builtin_expression("t8-as-printed"), PrimeField(5), 3, random);
    CHECK(a.violation.has_value() == b.violation.has_value());
    CHECK(a.index == b.index);
}

TEST_CASE("search limits") {
    CHECK_THROWS_AS(search_violation(builtin_expression("t8"), PrimeField(3), 4, ExhaustiveOneDim{1000}), Error);
    RankExpression wide{"wide", {}, {}, {}};
    for (int i = 0; i < 9; ++i) {
        wide.variables.push_back("V" + std::to_string(i));
        wide.terms.push_back({1, TermKind::joint, {wide.variables.back()}, {}, {}});
    }
    CHECK_THROWS_AS(search_violation(wide, PrimeField(2), 2, ExhaustiveOneDim{}), Error);
}
