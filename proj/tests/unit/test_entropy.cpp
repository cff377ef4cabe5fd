#include "lri/entropy.hpp"
#include "lri/error.hpp"
#include "lri/expression.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lri;

namespace {

JointDistribution random_distribution(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> value(0, 2);
    std::uniform_int_distribution<std::int64_t> weight(1, 9);
    std::vector<Atom> atoms(6);
    std::int64_t total = 0;
    std::vector<std::int64_t> w;
    for (auto& a : atoms) {
        a.values = {value(rng), value(rng), value(rng), value(rng)};
        w.push_back(weight(rng));
        total += w.back();
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].probability = Rational(w[i], total);
    return JointDistribution({"A", "B", "C", "D"}, atoms);
}

double mutual(const JointDistribution& d, const VarSet& a, const VarSet& b, const VarSet& c = {}) {
    auto u = [](VarSet x, const VarSet& y) {
        x.insert(y.begin(), y.end());
        return x;
    };
    return entropy(d, u(a, c)) + entropy(d, u(b, c)) - entropy(d, c) - entropy(d, u(u(a, b), c));
}

} // namespace

TEST_CASE("uniform bit") {
    const JointDistribution bit({"A"}, {{{0}, Rational(1, 2)}, {{1}, Rational(1, 2)}});
    CHECK(entropy(bit, {"A"}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy(bit, {}) == 0.0);
}

TEST_CASE("Ingleton four-atom distribution") {
    const auto d = builtin_distribution("ingleton-4atom");
    CHECK(d.atoms().size() == 4);
    CHECK(std::abs(entropy(d, {"A"}) - (2.0 - 0.75 * std::log2(3.0))) < 1e-9);
    CHECK(std::abs(entropy(d, {"A", "B"}) - 1.5) < 1e-12);
    CHECK(std::abs(entropy(d, {"C"}) - 1.0) < 1e-12);
    CHECK(std::abs(mutual(d, {"A"}, {"B"}) - (5.0 - std::log2(27.0)) / 2.0) < 1e-9);
    CHECK(std::abs(mutual(d, {"A"}, {"B"}, {"C"})) < 1e-12);
    CHECK(std::abs(mutual(d, {"A"}, {"B"}, {"D"})) < 1e-12);
    CHECK(std::abs(mutual(d, {"C"}, {"D"})) < 1e-12);
    const auto residual = evaluate_on_distribution(builtin_expression("ingleton"), d);
    CHECK(std::abs(residual + (5.0 - std::log2(27.0)) / 2.0) < 1e-9);
}

TEST_CASE("independent bits satisfy Ingleton with equality") {
    std::vector<Atom> atoms;
    for (int x = 0; x < 16; ++x) atoms.push_back({{x & 1, x >> 1 & 1, x >> 2 & 1, x >> 3 & 1}, Rational(1, 16)});
    const JointDistribution d({"A", "B", "C", "D"}, atoms);
    CHECK(std::abs(evaluate_on_distribution(builtin_expression("ingleton"), d)) < 1e-12);
}

TEST_CASE("Shannon facts on random distributions") {
    std::mt19937_64 rng(13);
    const VarSet a{"A"}, b{"B"}, c{"C"}, ab{"A", "B"}, ac{"A", "C"}, bc{"B", "C"}, abc{"A", "B", "C"};
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_distribution(rng);
        CHECK(evaluate_on_distribution(builtin_expression("shannon-elemental"), d) >= -1e-12);
        CHECK(entropy(d, a) >= -1e-12);
        CHECK(entropy(d, a) <= entropy(d, ab) + 1e-9);
        CHECK(entropy(d, ab) <= entropy(d, a) + entropy(d, b) + 1e-9);
        CHECK(entropy(d, abc) - entropy(d, c) <= entropy(d, ac) - entropy(d, c) + entropy(d, bc) - entropy(d, c) + 1e-9);
        CHECK(entropy(d, abc) - entropy(d, bc) <= entropy(d, ab) - entropy(d, b) + 1e-9);
        const auto e = builtin_expression("ingleton");
        CHECK(std::abs(evaluate_on_distribution(desugar(e), d) - evaluate_on_distribution(e, d)) < 1e-12);
    }
}

TEST_CASE("induced distributions turn ranks into entropies") {
    std::mt19937_64 rng(29);
    for (std::uint64_t p : {2, 3}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 50; ++trial) {
            SubspaceAssignment ctx(f, 3);
            for (auto n : {"A", "B", "C"}) ctx.bind(n, random_subspace(f, 3, rng));
            const auto d = induce_distribution(ctx);
            for (const VarSet& s : std::vector<VarSet>{{"A"}, {"B"}, {"A", "B"}, {"A", "C"}, {"A", "B", "C"}})
                CHECK(std::abs(entropy(d, s, static_cast<double>(p)) - static_cast<double>(joint_rank(ctx, s))) < 1e-9);
        }
    }
}

TEST_CASE("induced distribution of a zero subspace is constant") {
    SubspaceAssignment ctx(PrimeField(2), 2);
    ctx.bind("A", Subspace::zero(PrimeField(2), 2));
    ctx.bind("B", span(PrimeField(2), 2, {{1, 0}}));
    const auto d = induce_distribution(ctx);
    CHECK(entropy(d, {"A"}, 2.0) == 0.0);
    CHECK(std::abs(entropy(d, {"B"}, 2.0) - 1.0) < 1e-12);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(JointDistribution({"A"}, {{{0}, Rational(1, 2)}}), Error);
    CHECK_THROWS_AS(JointDistribution({"A"}, {{{0, 1}, Rational(1)}}), Error);
    CHECK_THROWS_AS(JointDistribution({"A"}, {{{0}, Rational(3, 2)}, {{1}, Rational(-1, 2)}}), Error);
    CHECK_THROWS_AS(entropy(builtin_distribution("ingleton-4atom"), {"Q"}), Error);
    CHECK_THROWS_AS(entropy(builtin_distribution("ingleton-4atom"), {"A"}, 1.0), Error);
    CHECK_THROWS_AS(builtin_distribution("nope"), Error);
}

TEST_CASE("distribution text round-trips") {
    const auto d = builtin_distribution("ingleton-4atom");
    CHECK(parse_distribution(format_distribution(d)) == d);
    const auto merged = parse_distribution("vars A\natom 0 : 1/4\natom 0 : 1/4\natom 1 : 1/2\n");
    CHECK(merged.atoms().size() == 2);
    CHECK_THROWS_AS(parse_distribution("vars A,B\natom 0 : 1\n"), ParseError);
}
