#include "lri/expression.hpp"

#include "cursor.hpp"
#include "lri/error.hpp"

#include <algorithm>
#include <sstream>

namespace lri {

bool CharacteristicTag::applies_to(std::uint64_t characteristic) const noexcept {
    switch (kind) {
    case Kind::all: return true;
    case Kind::only: return primes.contains(characteristic);
    case Kind::except: return !primes.contains(characteristic);
    }
    return false;
}

std::string to_string(const CharacteristicTag& tag) {
    if (tag.kind == CharacteristicTag::Kind::all) return "all";
    std::string out = tag.kind == CharacteristicTag::Kind::only ? "only-char" : "except-char";
    for (auto p : tag.primes) out += " " + std::to_string(p);
    return out;
}

std::string to_string(const Rational& r) {
    auto s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

namespace {

std::string join_names(const VarSet& vars) {
    std::string out;
    for (const auto& v : vars) {
        if (!out.empty()) out += ',';
        out += v;
    }
    return out;
}

VarSet unite(const VarSet& a, const VarSet& b) {
    VarSet u = a;
    u.insert(b.begin(), b.end());
    return u;
}

// Token for names like "non-t8".
std::string name_token(detail::Cursor& in) {
    in.skip_inline_space();
    std::string token;
    while (!in.at_end()) {
        const char c = in.peek();
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') break;
        token.push_back(in.get());
    }
    if (token.empty()) in.fail("expected a name");
    return token;
}

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : in_(text) {}

    RankExpression parse() {
        RankExpression expr;
        parse_headers(expr);
        parse_body(expr);
        if (!declared_) expr.variables = seen_;
        return expr;
    }

private:
    void parse_headers(RankExpression& expr) {
        for (;;) {
            in_.skip_space();
            if (in_.consume_keyword("name")) {
                expr.name = name_token(in_);
            } else if (in_.consume_keyword("vars")) {
                do {
                    auto v = in_.identifier();
                    if (std::find(expr.variables.begin(), expr.variables.end(), v) != expr.variables.end())
                        in_.fail("variable " + v + " declared twice");
                    expr.variables.push_back(std::move(v));
                } while (in_.consume(','));
                declared_ = true;
            } else if (in_.consume_keyword("applies")) {
                parse_tag(expr.applies);
            } else {
                return;
            }
            in_.expect_line_end();
        }
    }

    void parse_tag(CharacteristicTag& tag) {
        if (in_.consume_keyword("all")) {
            tag = {};
            return;
        }
        if (in_.consume_keyword("only-char")) tag.kind = CharacteristicTag::Kind::only;
        else if (in_.consume_keyword("except-char")) tag.kind = CharacteristicTag::Kind::except;
        else in_.fail("expected 'all', 'only-char' or 'except-char'");
        do {
            const auto line = in_.line();
            const auto col = in_.column();
            const auto p = in_.unsigned_integer();
            if (!is_prime(p)) throw ParseError(line, col, std::to_string(p) + " is not a prime");
            tag.primes.insert(p);
        } while (in_.consume(','));
    }

    void parse_body(RankExpression& expr) {
        variables_ = &expr;
        bool first = true;
        for (;;) {
            in_.skip_space();
            if (in_.at_end()) break;
            if (in_.peek() == '>') {
                in_.get();
                in_.expect('=');
                in_.skip_space();
                const auto line = in_.line();
                const auto col = in_.column();
                if (in_.integer() != 0) throw ParseError(line, col, "right-hand side must be 0");
                in_.skip_space();
                if (!in_.at_end()) in_.fail("unexpected text after '>= 0'");
                break;
            }
            bool negative = false;
            if (in_.peek() == '+' || in_.peek() == '-') {
                negative = in_.get() == '-';
            } else if (!first) {
                in_.fail(std::string("expected '+', '-' or '>=', found '") + in_.peek() + "'");
            }
            expr.terms.push_back(parse_term(negative));
            first = false;
        }
        if (expr.terms.empty()) in_.fail("expression has no terms");
    }

    EntropyTerm parse_term(bool negative) {
        in_.skip_space();
        EntropyTerm term;
        term.coefficient = 1;
        const auto line = in_.line();
        const auto col = in_.column();
        if (std::isdigit(static_cast<unsigned char>(in_.peek()))) {
            term.coefficient = in_.rational();
            in_.consume('*');
        }
        if (term.coefficient == Rational(0)) throw ParseError(line, col, "coefficient must be nonzero");
        if (negative) term.coefficient = -term.coefficient;

        in_.skip_space();
        const auto fn_line = in_.line();
        const auto fn_col = in_.column();
        const auto fn = in_.identifier();
        if (fn == "H") {
            in_.expect('(');
            term.s = var_list();
            if (in_.consume('|')) {
                term.t = var_list();
                term.kind = TermKind::conditional;
            }
            in_.expect(')');
        } else if (fn == "I") {
            in_.expect('(');
            term.s = var_list();
            in_.expect(';');
            term.t = var_list();
            term.kind = TermKind::mutual;
            if (in_.consume('|')) {
                term.u = var_list();
                term.kind = TermKind::cond_mutual;
            }
            in_.expect(')');
        } else {
            throw ParseError(fn_line, fn_col, "expected H(...) or I(...), found '" + fn + "'");
        }
        return term;
    }

    VarSet var_list() {
        VarSet vars;
        in_.skip_inline_space();
        if (!in_.peek_identifier_start()) in_.fail("expected a nonempty variable list");
        do {
            const auto line = in_.line();
            const auto col = in_.column();
            auto v = in_.identifier();
            note_variable(v, line, col);
            vars.insert(std::move(v));
        } while (in_.consume(','));
        return vars;
    }

    void note_variable(const std::string& v, std::size_t line, std::size_t col) {
        if (declared_) {
            const auto& vars = variables_->variables;
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                throw ParseError(line, col, "unknown variable " + v, Errc::unknown_variable);
            return;
        }
        if (std::find(seen_.begin(), seen_.end(), v) == seen_.end()) seen_.push_back(v);
    }

    detail::Cursor in_;
    bool declared_ = false;
    std::vector<std::string> seen_;
    RankExpression* variables_ = nullptr;
};

} // namespace

RankExpression parse_expression(std::string_view text) { return ExpressionParser(text).parse(); }

std::string format_functional(const EntropyTerm& term) {
    switch (term.kind) {
    case TermKind::joint: return "H(" + join_names(term.s) + ")";
    case TermKind::conditional: return "H(" + join_names(term.s) + "|" + join_names(term.t) + ")";
    case TermKind::mutual: return "I(" + join_names(term.s) + ";" + join_names(term.t) + ")";
    case TermKind::cond_mutual:
        return "I(" + join_names(term.s) + ";" + join_names(term.t) + "|" + join_names(term.u) + ")";
    }
    return {};
}

std::string format_term(const EntropyTerm& term) { return to_string(term.coefficient) + " " + format_functional(term); }

std::string format_expression(const RankExpression& expr) {
    std::ostringstream os;
    if (!expr.name.empty()) os << "name " << expr.name << '\n';
    if (!expr.variables.empty()) {
        os << "vars ";
        for (std::size_t i = 0; i < expr.variables.size(); ++i) os << (i ? "," : "") << expr.variables[i];
        os << '\n';
    }
    os << "applies " << to_string(expr.applies) << '\n';
    for (std::size_t i = 0; i < expr.terms.size(); ++i) {
        const auto& term = expr.terms[i];
        const auto magnitude = term.coefficient < 0 ? -term.coefficient : term.coefficient;
        if (i == 0) os << (term.coefficient < 0 ? "-" : "");
        else os << (term.coefficient < 0 ? "\n  - " : "\n  + ");
        os << to_string(magnitude) << ' ' << format_functional(term);
    }
    os << "\n  >= 0\n";
    return os.str();
}

JointForm joint_form(const RankExpression& expr) {
    JointForm form;
    auto add = [&](const VarSet& support, const Rational& c) {
        if (support.empty()) return;  // H(∅) = 0
        form[support] += c;
    };
    for (const auto& term : expr.terms) {
        const auto& c = term.coefficient;
        switch (term.kind) {
        case TermKind::joint: add(term.s, c); break;
        case TermKind::conditional:
            add(unite(term.s, term.t), c);
            add(term.t, -c);
            break;
        case TermKind::mutual:
            add(term.s, c);
            add(term.t, c);
            add(unite(term.s, term.t), -c);
            break;
        case TermKind::cond_mutual:
            add(unite(term.s, term.u), c);
            add(unite(term.t, term.u), c);
            add(term.u, -c);
            add(unite(unite(term.s, term.t), term.u), -c);
            break;
        }
    }
    std::erase_if(form, [](const auto& entry) { return entry.second == Rational(0); });
    return form;
}

RankExpression desugar(const RankExpression& expr) {
    auto form = joint_form(expr);
    std::vector<std::pair<VarSet, Rational>> ordered(form.begin(), form.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
    RankExpression out{expr.name, expr.variables, {}, expr.applies};
    for (auto& [support, c] : ordered) out.terms.push_back({c, TermKind::joint, support, {}, {}});
    return out;
}

Rational evaluate(const RankExpression& expr, const SubspaceAssignment& ctx) {
    for (const auto& v : expr.variables)
        if (!ctx.contains(v)) throw Error(Errc::unbound_variable, "variable " + v + " is not bound in the assignment");
    Rational total = 0;
    for (const auto& [support, c] : joint_form(expr)) total += c * joint_rank(ctx, support);
    return total;
}

namespace {

VarSet vars_of(std::string_view letters) {
    VarSet s;
    for (char c : letters) s.insert(std::string(1, c));
    return s;
}

EntropyTerm joint(std::int64_t c, std::string_view s) { return {c, TermKind::joint, vars_of(s), {}, {}}; }
EntropyTerm cond(std::int64_t c, std::string_view s, std::string_view t) {
    return {c, TermKind::conditional, vars_of(s), vars_of(t), {}};
}
EntropyTerm mutual(std::int64_t c, std::string_view s, std::string_view t) {
    return {c, TermKind::mutual, vars_of(s), vars_of(t), {}};
}
EntropyTerm cond_mutual(std::int64_t c, std::string_view s, std::string_view t, std::string_view u) {
    return {c, TermKind::cond_mutual, vars_of(s), vars_of(t), vars_of(u)};
}

struct SingletonCoefficients {
    std::int64_t z, y, x, w, d, c, b, a;
};

// H(A) <= Σ singletons + Σ conditionals + defect·(H(A)+H(B)+H(C)+H(D)-H(A,B,C,D)),
// stored with H(A) moved across as a leading -1 H(A).
RankExpression eight_variable(std::string name, CharacteristicTag tag, SingletonCoefficients s,
                              std::vector<EntropyTerm> conditionals, std::int64_t defect) {
    RankExpression e;
    e.name = std::move(name);
    e.variables = {"A", "B", "C", "D", "W", "X", "Y", "Z"};
    e.applies = std::move(tag);
    e.terms = {joint(-1, "A"), joint(s.z, "Z"), joint(s.y, "Y"), joint(s.x, "X"), joint(s.w, "W"),
               joint(s.d, "D"), joint(s.c, "C"), joint(s.b, "B"), joint(s.a, "A")};
    e.terms.insert(e.terms.end(), conditionals.begin(), conditionals.end());
    for (auto v : {"A", "B", "C", "D"}) e.terms.push_back(joint(defect, v));
    e.terms.push_back(joint(-defect, "ABCD"));
    return e;
}

} // namespace

RankExpression builtin_expression(std::string_view name) {
    if (name == "shannon-elemental") {
        return {"shannon-elemental", {"A", "B", "C"}, {cond_mutual(1, "A", "B", "C")}, {}};
    }
    if (name == "ingleton") {
        // I(A;B) <= I(A;B|C) + I(A;B|D) + I(C;D)
        return {"ingleton",
                {"A", "B", "C", "D"},
                {cond_mutual(1, "A", "B", "C"), cond_mutual(1, "A", "B", "D"), mutual(1, "C", "D"), mutual(-1, "A", "B")},
                {}};
    }
    if (name == "t8" || name == "t8-as-printed") {
        // The printed statement carries 7 H(C|B,X,Y) + 3 H(C|A,W,Y); summing the
        // codimension bounds it is derived from gives 3 and 7, and only the
        // latter survives C = X = a line with everything else zero.
        const bool printed = name == "t8-as-printed";
        return eight_variable(std::string(name), {CharacteristicTag::Kind::except, {3}},
                              {8, 29, 3, 8, -6, -17, -8, -17},
                              {cond(55, "Z", "ABC"), cond(35, "Y", "WXZ"), cond(50, "X", "ACD"), cond(49, "W", "BCD"),
                               cond(18, "A", "BDY"), cond(7, "B", "DXZ"), cond(1, "B", "AWX"), cond(7, "C", "DYZ"),
                               cond(printed ? 7 : 3, "C", "BXY"), cond(printed ? 3 : 7, "C", "AWY"),
                               cond(6, "D", "AWZ")},
                              49);
    }
    if (name == "non-t8") {
        return eight_variable("non-t8", {CharacteristicTag::Kind::only, {3}}, {9, 8, 5, 6, -4, -12, -11, -1},
                              {cond(19, "Z", "ABC"), cond(17, "Y", "ABD"), cond(13, "X", "ACD"), cond(11, "W", "BCD"),
                               cond(1, "A", "WXYZ"), cond(1, "A", "BWX"), cond(7, "B", "DXZ"), cond(4, "B", "CXY"),
                               cond(7, "C", "DYZ"), cond(5, "C", "AWY"), cond(4, "D", "AWZ")},
                              29);
    }
    throw Error(Errc::unknown_name, "unknown inequality '" + std::string(name) + "'");
}

std::vector<std::string> builtin_expression_names() { return {"shannon-elemental", "ingleton", "t8", "t8-as-printed", "non-t8"}; }

} // namespace lri
