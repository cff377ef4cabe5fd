#pragma once

// Brute-force reference implementations used to check the library. Nothing in
// here calls the library's linear algebra; everything is plain enumeration
// with its own modular arithmetic.

#include "lri/entropy.hpp"
#include "lri/field.hpp"
#include "lri/network.hpp"
#include "lri/subspace.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using VecSet = std::set<Vec>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    for (std::int64_t x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return -1;
}

/// Every linear combination of `gens` in GF(p)^d.
inline VecSet span_set(std::int64_t p, std::size_t d, const std::vector<Vec>& gens) {
    VecSet out{Vec(d, 0)};
    for (const auto& g : gens) {
        VecSet next;
        for (const auto& v : out)
            for (std::int64_t c = 0; c < p; ++c) {
                Vec w(d);
                for (std::size_t i = 0; i < d; ++i) w[i] = mod(v[i] + c * g[i], p);
                next.insert(w);
            }
        out = std::move(next);
    }
    return out;
}

/// log_p of a power of p.
inline std::int64_t log_p(std::size_t size, std::int64_t p) {
    std::int64_t k = 0;
    for (std::size_t s = 1; s < size; s *= static_cast<std::size_t>(p)) ++k;
    return k;
}

inline std::int64_t rank_of(std::int64_t p, std::size_t d, const std::vector<Vec>& gens) {
    return log_p(span_set(p, d, gens).size(), p);
}

inline std::vector<Vec> rows_of(const lri::Matrix& m) {
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v;
        for (auto x : m.row(r)) v.push_back(static_cast<std::int64_t>(x));
        rows.push_back(v);
    }
    return rows;
}

inline VecSet span_of(const lri::Subspace& s) {
    return span_set(static_cast<std::int64_t>(s.field().modulus()), s.ambient_dim(), rows_of(s.basis()));
}

/// {x : M x = 0} by trying every x.
inline VecSet kernel_set(const lri::Matrix& m) {
    const auto p = static_cast<std::int64_t>(m.field().modulus());
    const auto n = m.cols();
    VecSet out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(p);
    for (std::size_t code = 0; code < total; ++code) {
        Vec x(n);
        auto rest = code;
        for (std::size_t i = 0; i < n; ++i, rest /= static_cast<std::size_t>(p)) x[i] = static_cast<std::int64_t>(rest % p);
        bool zero = true;
        for (std::size_t r = 0; r < m.rows() && zero; ++r) {
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < n; ++c) acc += static_cast<std::int64_t>(m(r, c)) * x[c];
            zero = mod(acc, p) == 0;
        }
        if (zero) out.insert(x);
    }
    return out;
}

/// All subspaces of GF(p)^d, each as its set of vectors.
inline std::vector<VecSet> all_subspaces(std::int64_t p, std::size_t d) {
    std::vector<Vec> vectors;
    for (const auto& v : span_set(p, d, [&] {
             std::vector<Vec> e;
             for (std::size_t i = 0; i < d; ++i) {
                 Vec u(d, 0);
                 u[i] = 1;
                 e.push_back(u);
             }
             return e;
         }()))
        vectors.push_back(v);
    std::set<VecSet> seen{span_set(p, d, {})};
    std::vector<VecSet> frontier{span_set(p, d, {})};
    while (!frontier.empty()) {
        std::vector<VecSet> next;
        for (const auto& s : frontier)
            for (const auto& v : vectors) {
                if (s.contains(v)) continue;
                std::vector<Vec> gens(s.begin(), s.end());
                gens.push_back(v);
                auto bigger = span_set(p, d, gens);
                if (seen.insert(bigger).second) next.push_back(std::move(bigger));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// A basis-free description of a subspace as a generator list (any spanning set).
inline std::vector<Vec> generators(const VecSet& s) { return {s.begin(), s.end()}; }

/// H(S) from named generator lists.
inline std::int64_t joint_rank(std::int64_t p, std::size_t d, const std::map<std::string, std::vector<Vec>>& asg,
                               const std::string& vars) {
    std::vector<Vec> gens;
    for (char c : vars) {
        const auto& g = asg.at(std::string(1, c));
        gens.insert(gens.end(), g.begin(), g.end());
    }
    return rank_of(p, d, gens);
}

inline std::int64_t cond_rank(std::int64_t p, std::size_t d, const std::map<std::string, std::vector<Vec>>& asg,
                              const std::string& s, const std::string& t) {
    return joint_rank(p, d, asg, s + t) - joint_rank(p, d, asg, t);
}

struct ConditionalTerm {
    std::int64_t coefficient;
    std::string s;
    std::string t;
};

struct EightVariableStatement {
    std::int64_t z, y, x, w, d, c, b, a;
    std::vector<ConditionalTerm> conditionals;
    std::int64_t defect;
};

/// The statements transcribed by hand, kept independent of the library's catalog.
inline EightVariableStatement t8_statement() {
    return {8, 29, 3, 8, -6, -17, -8, -17,
            {{55, "Z", "ABC"}, {35, "Y", "WXZ"}, {50, "X", "ACD"}, {49, "W", "BCD"}, {18, "A", "BDY"}, {7, "B", "DXZ"},
             {1, "B", "AWX"}, {7, "C", "DYZ"}, {3, "C", "BXY"}, {7, "C", "AWY"}, {6, "D", "AWZ"}},
            49};
}

inline EightVariableStatement non_t8_statement() {
    return {9, 8, 5, 6, -4, -12, -11, -1,
            {{19, "Z", "ABC"}, {17, "Y", "ABD"}, {13, "X", "ACD"}, {11, "W", "BCD"}, {1, "A", "WXYZ"}, {1, "A", "BWX"},
             {7, "B", "DXZ"}, {4, "B", "CXY"}, {7, "C", "DYZ"}, {5, "C", "AWY"}, {4, "D", "AWZ"}},
            29};
}

/// RHS - H(A) for an eight-variable statement.
inline std::int64_t eight_variable_residual(const EightVariableStatement& st, std::int64_t p, std::size_t d,
                                            const std::map<std::string, std::vector<Vec>>& asg) {
    auto h = [&](const std::string& v) { return joint_rank(p, d, asg, v); };
    std::int64_t rhs = st.z * h("Z") + st.y * h("Y") + st.x * h("X") + st.w * h("W") + st.d * h("D") + st.c * h("C") +
                       st.b * h("B") + st.a * h("A");
    for (const auto& term : st.conditionals) rhs += term.coefficient * cond_rank(p, d, asg, term.s, term.t);
    rhs += st.defect * (h("A") + h("B") + h("C") + h("D") - h("ABCD"));
    return rhs - h("A");
}

/// Distinct nonempty joint supports of an eight-variable statement, counted
/// straight from the transcription.
inline std::size_t eight_variable_support_count(const EightVariableStatement& st) {
    std::set<std::set<char>> supports;
    for (char v : std::string("ABCDWXYZ")) supports.insert({v});
    for (const auto& term : st.conditionals) {
        std::set<char> t(term.t.begin(), term.t.end());
        std::set<char> u = t;
        u.insert(term.s.begin(), term.s.end());
        supports.insert(t);
        supports.insert(u);
    }
    supports.insert({'A', 'B', 'C', 'D'});
    return supports.size();
}

/// The counterexample vectors: A..D the unit vectors, W..Z the other columns.
inline std::map<std::string, std::vector<Vec>> t8_columns() {
    return {{"A", {{1, 0, 0, 0}}}, {"B", {{0, 1, 0, 0}}}, {"C", {{0, 0, 1, 0}}}, {"D", {{0, 0, 0, 1}}},
            {"W", {{0, 1, 1, 1}}}, {"X", {{1, 0, 1, 1}}}, {"Y", {{1, 1, 0, 1}}}, {"Z", {{1, 1, 1, 0}}}};
}

/// Scalar (k = n = 1) forward simulation of a code over every message tuple.
/// Returns, per demand label, whether the decoded value always equals the target.
/// Throws std::domain_error when a literal has no inverse mod p.
inline std::map<std::string, bool> simulate_scalar_code(const lri::Network& net, const lri::LinearCode& code) {
    const auto p = static_cast<std::int64_t>(code.field.modulus());
    auto literal = [&](const lri::CoefficientMatrix& m) {
        const auto& q = m.entries.at(0);
        const auto d = inv(q.denominator(), p);
        if (d < 0) throw std::domain_error("no inverse");
        return mod(mod(q.numerator(), p) * d, p);
    };
    std::map<std::string, bool> ok;
    for (const auto& demand : net.demands()) ok[demand.label] = true;
    const auto m = net.messages().size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= static_cast<std::size_t>(p);
    for (std::size_t tuple = 0; tuple < total; ++tuple) {
        std::map<std::string, std::int64_t> value;
        auto rest = tuple;
        for (const auto& msg : net.messages()) {
            value[msg] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(p));
            rest /= static_cast<std::size_t>(p);
        }
        for (const auto& d : net.derived()) {
            std::int64_t acc = 0;
            for (const auto& [input, coefficient] : code.encoders.at(d.name)) acc += literal(coefficient) * value.at(input);
            value[d.name] = mod(acc, p);
        }
        for (const auto& demand : net.demands()) {
            std::int64_t acc = 0;
            for (const auto& [input, coefficient] : code.decoders.at(demand.label))
                acc += literal(coefficient) * value.at(input);
            if (mod(acc, p) != value.at(demand.target)) ok[demand.label] = false;
        }
    }
    return ok;
}

/// Uniformly random generator list of up to `max_gens` vectors in GF(p)^d.
inline std::vector<Vec> random_generators(std::int64_t p, std::size_t d, std::size_t max_gens, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> count(0, max_gens);
    std::uniform_int_distribution<std::int64_t> entry(0, p - 1);
    std::vector<Vec> gens(count(rng), Vec(d));
    for (auto& g : gens)
        for (auto& x : g) x = entry(rng);
    return gens;
}

} // namespace oracle
