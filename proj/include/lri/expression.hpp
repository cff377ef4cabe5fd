#pragma once

// Linear rank / information inequalities in "sum of terms >= 0" form.

#include "lri/rational.hpp"
#include "lri/subspace.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lri {

enum class TermKind {
    joint,        // H(S)
    conditional,  // H(S|T)
    mutual,       // I(S;T)
    cond_mutual,  // I(S;T|U)
};

struct EntropyTerm {
    Rational coefficient;
    TermKind kind = TermKind::joint;
    VarSet s;
    VarSet t;
    VarSet u;

    friend bool operator==(const EntropyTerm&, const EntropyTerm&) = default;
};

/// The fields of characteristic for which an inequality is claimed to hold.
struct CharacteristicTag {
    enum class Kind { all, only, except };
    Kind kind = Kind::all;
    std::set<std::uint64_t> primes;

    bool applies_to(std::uint64_t characteristic) const noexcept;
    friend bool operator==(const CharacteristicTag&, const CharacteristicTag&) = default;
};

std::string to_string(const CharacteristicTag& tag);

struct RankExpression {
    std::string name;
    std::vector<std::string> variables;
    std::vector<EntropyTerm> terms;
    CharacteristicTag applies;

    friend bool operator==(const RankExpression&, const RankExpression&) = default;
};

/// Joint-entropy normal form: support -> merged nonzero coefficient.
using JointForm = std::map<VarSet, Rational>;

RankExpression parse_expression(std::string_view text);
std::string format_expression(const RankExpression& expr);
std::string format_term(const EntropyTerm& term);
/// The term without its coefficient, e.g. "H(Z|A,B,C)".
std::string format_functional(const EntropyTerm& term);

JointForm joint_form(const RankExpression& expr);
/// Equivalent expression made only of merged joint terms, ordered by support
/// size and then lexicographically.
RankExpression desugar(const RankExpression& expr);

/// Σ terms evaluated on subspace ranks; the inequality holds iff the result is >= 0.
Rational evaluate(const RankExpression& expr, const SubspaceAssignment& ctx);

/// One of "shannon-elemental", "ingleton", "t8", "non-t8".
RankExpression builtin_expression(std::string_view name);
std::vector<std::string> builtin_expression_names();

} // namespace lri
