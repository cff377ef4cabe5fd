#include "lri/error.hpp"
#include "lri/network.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace lri;

namespace {

Errc error_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::syntax;
}

std::map<std::string, bool> verdict_map(const Verdict& v) {
    std::map<std::string, bool> out;
    for (const auto& d : v.demands) out[d.label] = d.ok;
    return out;
}

} // namespace

TEST_CASE("T8 code solves the T8 network over GF(3)") {
    const auto net = builtin_network("t8");
    const auto v = verify_solution(net, builtin_code("t8", 3));
    CHECK(v.ok);
    CHECK(v.demands.size() == 7);
    const auto global = compose_global(net, builtin_code("t8", 3));
    CHECK(global.at("Y") == Matrix::from_rows(PrimeField(3), {{2, 2, 0, 2}}));
}

TEST_CASE("T8 code over GF(5) fails where 3/2 survives") {
    const auto net = builtin_network("t8");
    const auto v = verify_solution(net, builtin_code("t8", 5));
    CHECK_FALSE(v.ok);
    const std::map<std::string, bool> expected{{"n9", false},  {"n10", true}, {"n11", false}, {"n12", true},
                                               {"n13", false}, {"n14", false}, {"n15", true}};
    CHECK(verdict_map(v) == expected);
    // residual of n9 is +3/2 = 4 in the C slot; n11, n13, n14 carry -3/2 = 1
    for (const auto& d : v.demands) {
        if (d.ok) continue;
        CHECK(d.residual(0, 2) == (d.label == "n9" ? 4u : 1u));
    }
}

TEST_CASE("matrix verification agrees with forward simulation") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const auto net = builtin_network("t8");
        const auto code = builtin_code("t8", p);
        if (p == 2) {
            CHECK(error_of([&] { verify_solution(net, code); }) == Errc::missing_inverse);
            CHECK_THROWS_AS(oracle::simulate_scalar_code(net, code), std::domain_error);
            continue;
        }
        CHECK(verdict_map(verify_solution(net, code)) == oracle::simulate_scalar_code(net, code));
    }
    for (std::uint64_t p : {2, 5, 7}) {
        const auto net = builtin_network("non-t8");
        const auto code = builtin_code("non-t8", p);
        const auto v = verify_solution(net, code);
        CHECK(v.ok);
        CHECK(verdict_map(v) == oracle::simulate_scalar_code(net, code));
    }
    const auto bf = builtin_network("butterfly");
    CHECK(verdict_map(verify_solution(bf, builtin_code("butterfly", 2))) ==
          oracle::simulate_scalar_code(bf, builtin_code("butterfly", 2)));
}

TEST_CASE("non-T8 code needs the inverse of 3") {
    CHECK(error_of([] { verify_solution(builtin_network("non-t8"), builtin_code("non-t8", 3)); }) ==
          Errc::missing_inverse);
}

TEST_CASE("butterfly") {
    CHECK(verify_solution(builtin_network("butterfly"), builtin_code("butterfly", 2)).ok);
    CHECK(dependency_cut_bound(builtin_network("butterfly"), "n6").value == Rational(1));
}

TEST_CASE("capacity bounds from the inequalities") {
    const auto t8 = capacity_bound_from_inequality(builtin_network("t8"), builtin_expression("t8"));
    CHECK(t8.value == Rational(48, 49));
    CHECK(t8.trace.size() == 14);
    CHECK(std::find(t8.trace.begin(), t8.trace.end(), "H(Y|W,X,Z) = 0 [derive Y <- W,X,Z]") != t8.trace.end());
    CHECK(std::find(t8.trace.begin(), t8.trace.end(), "H(A|B,D,Y) = 0 [demand n9: A <- B,D,Y]") != t8.trace.end());

    const auto nt = capacity_bound_from_inequality(builtin_network("non-t8"), builtin_expression("non-t8"));
    CHECK(nt.value == Rational(28, 29));
    CHECK(std::find(nt.trace.begin(), nt.trace.end(), "H(A|W,X,Y,Z) = 0 [demand n15: A <- W,X,Y,Z]") != nt.trace.end());
}

TEST_CASE("capacity bound reduction failures") {
    CHECK(error_of([] {
              capacity_bound_from_inequality(builtin_network("non-t8"), builtin_expression("t8"));
          }) == Errc::unjustified_conditional);
    CHECK(error_of([] {
              capacity_bound_from_inequality(builtin_network("butterfly"), parse_expression("H(x) - H(z)"));
          }) == Errc::negative_edge_coefficient);
    CHECK(error_of([] {
              capacity_bound_from_inequality(builtin_network("butterfly"), parse_expression("H(z) + H(x)"));
          }) == Errc::nonpositive_denominator);
    CHECK(error_of([] {
              capacity_bound_from_inequality(builtin_network("butterfly"), parse_expression("H(Q)"));
          }) == Errc::unknown_variable);
    const auto mapped = capacity_bound_from_inequality(builtin_network("butterfly"), parse_expression("H(E) - H(M)"),
                                                       {{"E", "z"}, {"M", "x"}});
    CHECK(mapped.value == Rational(1));
}

TEST_CASE("dependency cut bounds") {
    CHECK(dependency_cut_bound(builtin_network("t8"), "n9").value == Rational(1));
    CHECK(dependency_cut_bound(builtin_network("non-t8"), "n9").value == Rational(1));
    CHECK(dependency_cut_bound(builtin_network("non-t8"), "n15").value == Rational(3));
    CHECK(dependency_cut_bound(builtin_network("t8")).value == Rational(1));
    const Network direct({"a"}, {{"e", {"a"}}}, {{"d", "a", {"a", "e"}}});
    CHECK(error_of([&] { dependency_cut_bound(direct, "d"); }) == Errc::degenerate_demand);
    CHECK(error_of([&] { dependency_cut_bound(direct); }) == Errc::degenerate_demand);
}

TEST_CASE("induced assignment puts messages on coordinate blocks") {
    const auto ctx = induced_assignment(builtin_network("t8"), builtin_code("t8", 3));
    CHECK(ctx.ambient_dim() == 4);
    CHECK(cond_rank(ctx, {"Y"}, {"W", "X", "Z"}) == 0);
    CHECK(joint_rank(ctx, {"A", "B", "C", "D"}) == 4);
}

TEST_CASE("network validation") {
    CHECK(error_of([] { Network({"a", "a"}, {}, {}); }) == Errc::duplicate_name);
    CHECK(error_of([] { Network({"a"}, {{"e", {"f"}}}, {}); }) == Errc::invalid_network);
    CHECK(error_of([] { Network({"a"}, {{"e", {"a"}}}, {{"d", "e", {"a"}}}); }) == Errc::invalid_network);
    CHECK(error_of([] { builtin_network("nope"); }) == Errc::unknown_name);
}

TEST_CASE("code shape checks") {
    auto code = builtin_code("butterfly", 2);
    code.encoders["z"]["x"] = CoefficientMatrix{1, 2, {1, 1}};
    CHECK(error_of([&] { verify_solution(builtin_network("butterfly"), code); }) == Errc::dimension_mismatch);
    auto stray = builtin_code("butterfly", 2);
    stray.decoders["n5"]["y"] = CoefficientMatrix::scalar(1);
    CHECK(error_of([&] { verify_solution(builtin_network("butterfly"), stray); }) == Errc::dimension_mismatch);
}

TEST_CASE("network and code text round-trip") {
    for (const auto& name : builtin_network_names()) {
        const auto net = builtin_network(name);
        CHECK(parse_network(format_network(net)) == net);
        const auto code = builtin_code(name, 7);
        CHECK(parse_code(format_code(code)) == code);
    }
    const auto code = parse_code("field 3\nk 2\nn 2\nencode z: x=[1 0; 0 1] y=[1/2, 0; 0 1]\n");
    CHECK(code.k == 2);
    CHECK(code.encoders.at("z").at("y").entries[0] == Rational(1, 2));
    CHECK_THROWS_AS(parse_code("field 3\nk 1\nn 1\nencode z: x=[1 0; 1]\n"), ParseError);
    CHECK_THROWS_AS(parse_network("messages a\nfoo b\n"), ParseError);
}

TEST_CASE("a (2,2) code: two copies of the butterfly") {
    const Network net({"x", "y"}, {{"z", {"x", "y"}}}, {{"n5", "y", {"x", "z"}}, {"n6", "x", {"y", "z"}}});
    const auto code = parse_code(
        "field 5\nk 2\nn 2\n"
        "encode z: x=[1 0; 0 1] y=[1 0; 0 1]\n"
        "decode n5: z=[1 0; 0 1] x=[-1 0; 0 -1]\n"
        "decode n6: z=[1 0; 0 1] y=[-1 0; 0 -1]\n");
    CHECK(verify_solution(net, code).ok);
}
