#include "lri/network.hpp"

#include "cursor.hpp"
#include "lri/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lri {

namespace {

bool contains(const std::vector<std::string>& names, std::string_view name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string join_list(const std::vector<std::string>& names, std::string_view sep = ",") {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += sep;
        out += n;
    }
    return out;
}

std::string join_set(const std::set<std::string>& names) { return join_list({names.begin(), names.end()}); }

} // namespace

Network::Network(std::vector<std::string> messages, std::vector<DerivedVariable> derived, std::vector<Demand> demands)
    : messages_(std::move(messages)), derived_(std::move(derived)), demands_(std::move(demands)) {
    std::vector<std::string> declared;
    auto declare = [&](const std::string& name) {
        if (contains(declared, name)) throw Error(Errc::duplicate_name, "name " + name + " declared twice");
        declared.push_back(name);
    };
    for (const auto& m : messages_) declare(m);
    for (const auto& d : derived_) {
        if (d.inputs.empty()) throw Error(Errc::invalid_network, "derived variable " + d.name + " has no inputs");
        for (const auto& in : d.inputs)
            if (!contains(declared, in))
                throw Error(Errc::invalid_network, "derived variable " + d.name + " uses " + in +
                                                       ", which is not declared before it");
        declare(d.name);
    }
    std::vector<std::string> labels;
    for (const auto& demand : demands_) {
        if (contains(labels, demand.label)) throw Error(Errc::duplicate_name, "demand " + demand.label + " declared twice");
        labels.push_back(demand.label);
        if (!contains(messages_, demand.target))
            throw Error(Errc::invalid_network, "demand " + demand.label + " targets " + demand.target +
                                                   ", which is not a message");
        for (const auto& in : demand.inputs)
            if (!contains(declared, in))
                throw Error(Errc::invalid_network, "demand " + demand.label + " uses undeclared name " + in);
    }
}

bool Network::is_message(std::string_view name) const noexcept { return contains(messages_, name); }

bool Network::is_derived(std::string_view name) const noexcept {
    return std::any_of(derived_.begin(), derived_.end(), [&](const auto& d) { return d.name == name; });
}

std::size_t Network::message_index(std::string_view name) const {
    const auto it = std::find(messages_.begin(), messages_.end(), name);
    if (it == messages_.end()) throw Error(Errc::unknown_name, std::string(name) + " is not a message");
    return static_cast<std::size_t>(it - messages_.begin());
}

const DerivedVariable& Network::derived_variable(std::string_view name) const {
    for (const auto& d : derived_)
        if (d.name == name) return d;
    throw Error(Errc::unknown_name, std::string(name) + " is not a derived variable");
}

const Demand& Network::demand(std::string_view label) const {
    for (const auto& d : demands_)
        if (d.label == label) return d;
    throw Error(Errc::unknown_name, "no demand labelled " + std::string(label));
}

std::set<std::string> Network::message_closure(std::string_view name) const {
    if (is_message(name)) return {std::string(name)};
    std::set<std::string> out;
    for (const auto& in : derived_variable(name).inputs) {
        auto sub = message_closure(in);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

Matrix CoefficientMatrix::over(const PrimeField& field) const {
    Matrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& q = entries[r * cols + c];
            m.set_residue(r, c, field.from_fraction(q.numerator(), q.denominator()));
        }
    return m;
}

namespace {

std::string shape(std::size_t rows, std::size_t cols) { return std::to_string(rows) + "x" + std::to_string(cols); }

Matrix selector(const Network& net, const PrimeField& field, std::size_t k, std::string_view message) {
    const auto idx = net.message_index(message);
    Matrix s(field, k, k * net.messages().size());
    for (std::size_t i = 0; i < k; ++i) s.set_residue(i, idx * k + i, 1);
    return s;
}

/// Σ M_input · G_input for a local map whose outputs have `out_rows` rows.
Matrix apply_local(const Network& net, const LinearCode& code, const std::map<std::string, Matrix>& globals,
                   const LinearMap& local, const std::vector<std::string>& allowed, std::size_t out_rows,
                   const std::string& owner) {
    const auto width = code.k * net.messages().size();
    Matrix total(code.field, out_rows, width);
    for (const auto& [input, coefficients] : local) {
        if (!contains(allowed, input))
            throw Error(Errc::dimension_mismatch, owner + " uses " + input + ", which is not one of its inputs");
        const bool message = net.is_message(input);
        const auto in_rows = message ? code.k : code.n;
        if (coefficients.rows != out_rows || coefficients.cols != in_rows)
            throw Error(Errc::dimension_mismatch, owner + ": coefficient of " + input + " is " +
                                                      shape(coefficients.rows, coefficients.cols) + ", expected " +
                                                      shape(out_rows, in_rows));
        const auto& g = message ? selector(net, code.field, code.k, input) : globals.at(input);
        total = mat_add(total, mat_mul(coefficients.over(code.field), g));
    }
    return total;
}

void require_conforming(const Network& net, const LinearCode& code) {
    if (code.k == 0 || code.n == 0) throw Error(Errc::dimension_mismatch, "k and n must be positive");
    for (const auto& [name, local] : code.encoders)
        if (!net.is_derived(name)) throw Error(Errc::dimension_mismatch, "encoder for unknown edge variable " + name);
    for (const auto& [label, local] : code.decoders) {
        (void)local;
        net.demand(label);
    }
}

} // namespace

std::map<std::string, Matrix> compose_global(const Network& net, const LinearCode& code) {
    require_conforming(net, code);
    std::map<std::string, Matrix> globals;
    for (const auto& d : net.derived()) {
        const auto it = code.encoders.find(d.name);
        if (it == code.encoders.end()) throw Error(Errc::dimension_mismatch, "no encoder for " + d.name);
        globals.emplace(d.name, apply_local(net, code, globals, it->second, d.inputs, code.n, "encoder " + d.name));
    }
    return globals;
}

Verdict verify_solution(const Network& net, const LinearCode& code) {
    const auto globals = compose_global(net, code);
    Verdict verdict{true, {}};
    for (const auto& demand : net.demands()) {
        const auto it = code.decoders.find(demand.label);
        if (it == code.decoders.end()) throw Error(Errc::dimension_mismatch, "no decoder for demand " + demand.label);
        const auto decoded = apply_local(net, code, globals, it->second, demand.inputs, code.k, "decoder " + demand.label);
        auto residual = mat_sub(decoded, selector(net, code.field, code.k, demand.target));
        const bool ok = residual.is_zero();
        verdict.ok = verdict.ok && ok;
        verdict.demands.push_back({demand.label, demand.target, ok, std::move(residual)});
    }
    return verdict;
}

SubspaceAssignment induced_assignment(const Network& net, const LinearCode& code) {
    const auto globals = compose_global(net, code);
    SubspaceAssignment ctx(code.field, code.k * net.messages().size());
    for (const auto& m : net.messages()) ctx.bind(m, Subspace::row_space(selector(net, code.field, code.k, m)));
    for (const auto& d : net.derived()) ctx.bind(d.name, Subspace::row_space(globals.at(d.name)));
    return ctx;
}

namespace {

std::string format_demand(const Demand& d) { return "demand " + d.label + ": " + d.target + " <- " + join_list(d.inputs); }
std::string format_derived(const DerivedVariable& d) { return "derive " + d.name + " <- " + join_list(d.inputs); }

bool subset_of(const std::vector<std::string>& items, const std::set<std::string>& set) {
    return std::all_of(items.begin(), items.end(), [&](const auto& x) { return set.contains(x); });
}

/// Why H(name | given) = 0 holds in every linear code, or nothing.
std::optional<std::string> justify(const Network& net, const std::string& name, const std::set<std::string>& given) {
    if (given.contains(name)) return "conditioned on itself";
    if (net.is_derived(name)) {
        const auto& d = net.derived_variable(name);
        if (subset_of(d.inputs, given)) return format_derived(d);
        return std::nullopt;
    }
    for (const auto& demand : net.demands())
        if (demand.target == name && subset_of(demand.inputs, given)) return format_demand(demand);
    return std::nullopt;
}

/// Justifications for H(S|T) = 0, or nothing if some element is unjustified.
std::optional<std::vector<std::string>> justify_all(const Network& net, const std::set<std::string>& s,
                                                    const std::set<std::string>& t) {
    std::vector<std::string> reasons;
    for (const auto& x : s) {
        if (t.contains(x)) continue;
        auto why = justify(net, x, t);
        if (!why) return std::nullopt;
        reasons.push_back(*why);
    }
    return reasons;
}

} // namespace

CapacityBound capacity_bound_from_inequality(const Network& net, const RankExpression& expr,
                                             const std::map<std::string, std::string>& var_map) {
    auto rename = [&](const std::string& v) {
        const auto it = var_map.find(v);
        const auto& mapped = it == var_map.end() ? v : it->second;
        if (!net.is_message(mapped) && !net.is_derived(mapped))
            throw Error(Errc::unknown_variable, "inequality variable " + v + " maps to " + mapped +
                                                    ", which the network does not declare");
        return mapped;
    };
    auto rename_set = [&](const VarSet& vars) {
        std::set<std::string> out;
        for (const auto& v : vars) out.insert(rename(v));
        return out;
    };
    for (const auto& v : expr.variables) rename(v);

    CapacityBound bound;
    bound.provenance = "inequality " + (expr.name.empty() ? std::string("<unnamed>") : expr.name);
    std::map<std::set<std::string>, Rational> joint;

    for (const auto& term : expr.terms) {
        const auto label = format_functional(term);
        switch (term.kind) {
        case TermKind::joint: joint[rename_set(term.s)] += term.coefficient; break;
        case TermKind::conditional: {
            const auto reasons = justify_all(net, rename_set(term.s), rename_set(term.t));
            if (!reasons)
                throw Error(Errc::unjustified_conditional,
                            "no network constraint makes " + label + " vanish");
            bound.trace.push_back(label + " = 0 [" + join_list(*reasons, "; ") + "]");
            break;
        }
        case TermKind::mutual:
        case TermKind::cond_mutual: {
            // I(S;T|U) <= min(H(S|U), H(T|U)), so either vanishing suffices.
            const auto given = rename_set(term.u);
            auto reasons = justify_all(net, rename_set(term.s), given);
            if (!reasons) reasons = justify_all(net, rename_set(term.t), given);
            if (!reasons)
                throw Error(Errc::unjustified_conditional, "no network constraint makes " + label + " vanish");
            bound.trace.push_back(label + " = 0 [" + join_list(*reasons, "; ") + "]");
            break;
        }
        }
    }

    // Messages are independent, so H(all messages) = Σ H(message).
    const std::set<std::string> all_messages(net.messages().begin(), net.messages().end());
    std::map<std::string, Rational> single;
    for (const auto& [support, c] : joint) {
        if (c == Rational(0)) continue;
        if (support.size() == 1) {
            single[*support.begin()] += c;
        } else if (support == all_messages) {
            for (const auto& m : net.messages()) single[m] += c;
            bound.trace.push_back("H(" + join_set(support) + ") = " + [&] {
                std::string sum;
                for (const auto& m : net.messages()) sum += (sum.empty() ? "" : " + ") + ("H(" + m + ")");
                return sum;
            }() + " [messages are independent]");
        } else {
            throw Error(Errc::unjustified_conditional,
                        "joint term H(" + join_set(support) + ") is neither a singleton nor the full message set");
        }
    }

    Rational message_total = 0;
    Rational edge_total = 0;
    for (const auto& [name, c] : single) {
        if (net.is_message(name)) {
            message_total += c;
        } else {
            if (c < 0)
                throw Error(Errc::negative_edge_coefficient,
                            "edge variable " + name + " has coefficient " + to_string(c) + " after reduction");
            edge_total += c;
        }
    }
    bound.trace.push_back("H(message) = k, H(edge) <= n: 0 <= " + to_string(edge_total) + " n " +
                          (message_total < 0 ? "- " + to_string(-message_total) : "+ " + to_string(message_total)) +
                          " k");
    if (message_total >= 0)
        throw Error(Errc::nonpositive_denominator,
                    "total message coefficient " + to_string(message_total) + " leaves k unbounded");
    if (edge_total == Rational(0))
        throw Error(Errc::nonpositive_denominator, "reduced inequality forces k <= 0");
    bound.value = edge_total / -message_total;
    bound.trace.push_back("k/n <= " + to_string(bound.value));
    return bound;
}

CapacityBound dependency_cut_bound(const Network& net, std::string_view demand_label) {
    const auto& demand = net.demand(demand_label);
    if (contains(demand.inputs, demand.target))
        throw Error(Errc::degenerate_demand, "demand " + demand.label + " receives " + demand.target + " directly");
    std::vector<std::string> carriers;
    for (const auto& in : demand.inputs)
        if (net.is_derived(in) && net.message_closure(in).contains(demand.target)) carriers.push_back(in);
    if (carriers.empty())
        throw Error(Errc::degenerate_demand, "no input of demand " + demand.label + " depends on " + demand.target);
    CapacityBound bound;
    bound.value = static_cast<std::int64_t>(carriers.size());
    bound.provenance = "cut at demand " + demand.label;
    bound.trace.push_back(format_demand(demand));
    bound.trace.push_back("inputs depending on " + demand.target + ": " + join_list(carriers));
    bound.trace.push_back("k/n <= " + to_string(bound.value));
    return bound;
}

CapacityBound dependency_cut_bound(const Network& net) {
    std::optional<CapacityBound> best;
    for (const auto& demand : net.demands()) {
        try {
            auto b = dependency_cut_bound(net, demand.label);
            if (!best || b.value < best->value) best = std::move(b);
        } catch (const Error& e) {
            if (e.code() != Errc::degenerate_demand) throw;
        }
    }
    if (!best) throw Error(Errc::degenerate_demand, "no demand yields a cut bound");
    return *best;
}

Network builtin_network(std::string_view name) {
    if (name == "butterfly") {
        return Network({"x", "y"}, {{"z", {"x", "y"}}}, {{"n5", "y", {"x", "z"}}, {"n6", "x", {"y", "z"}}});
    }
    if (name == "t8") {
        return Network({"A", "B", "C", "D"},
                       {{"Z", {"A", "B", "C"}}, {"W", {"B", "C", "D"}}, {"X", {"A", "C", "D"}}, {"Y", {"W", "X", "Z"}}},
                       {{"n9", "A", {"B", "D", "Y"}},
                        {"n10", "D", {"A", "W", "Z"}},
                        {"n11", "C", {"D", "Y", "Z"}},
                        {"n12", "B", {"D", "X", "Z"}},
                        {"n13", "C", {"B", "X", "Y"}},
                        {"n14", "C", {"A", "W", "Y"}},
                        {"n15", "B", {"A", "W", "X"}}});
    }
    if (name == "non-t8") {
        return Network({"A", "B", "C", "D"},
                       {{"W", {"B", "C", "D"}}, {"X", {"A", "C", "D"}}, {"Y", {"A", "B", "D"}}, {"Z", {"A", "B", "C"}}},
                       {{"n9", "A", {"B", "W", "X"}},
                        {"n10", "C", {"A", "W", "Y"}},
                        {"n11", "B", {"C", "X", "Y"}},
                        {"n12", "D", {"A", "W", "Z"}},
                        {"n13", "B", {"D", "X", "Z"}},
                        {"n14", "C", {"D", "Y", "Z"}},
                        {"n15", "A", {"W", "X", "Y", "Z"}}});
    }
    throw Error(Errc::unknown_name, "unknown network '" + std::string(name) + "'");
}

std::vector<std::string> builtin_network_names() { return {"butterfly", "t8", "non-t8"}; }

namespace {

LinearMap scalars(std::initializer_list<std::pair<const char*, Rational>> entries) {
    LinearMap map;
    for (const auto& [name, value] : entries) map.emplace(name, CoefficientMatrix::scalar(value));
    return map;
}

} // namespace

LinearCode builtin_code(std::string_view name, std::uint64_t p) {
    LinearCode code{PrimeField(p), 1, 1, {}, {}};
    const Rational one(1);
    const Rational minus(-1);
    if (name == "butterfly") {
        code.encoders["z"] = scalars({{"x", one}, {"y", one}});
        code.decoders["n5"] = scalars({{"z", one}, {"x", minus}});
        code.decoders["n6"] = scalars({{"z", one}, {"y", minus}});
        return code;
    }
    if (name == "t8") {
        const Rational half(1, 2);
        code.encoders["Z"] = scalars({{"A", one}, {"B", one}, {"C", one}});
        code.encoders["W"] = scalars({{"B", one}, {"C", one}, {"D", one}});
        code.encoders["X"] = scalars({{"A", one}, {"C", one}, {"D", one}});
        code.encoders["Y"] = scalars({{"W", one}, {"X", one}, {"Z", one}});
        code.decoders["n9"] = scalars({{"Y", half}, {"B", minus}, {"D", minus}});
        code.decoders["n10"] = scalars({{"W", one}, {"Z", minus}, {"A", one}});
        code.decoders["n11"] = scalars({{"Z", one}, {"Y", -half}, {"D", one}});
        code.decoders["n12"] = scalars({{"Z", one}, {"X", minus}, {"D", one}});
        code.decoders["n13"] = scalars({{"X", one}, {"Y", -half}, {"B", one}});
        code.decoders["n14"] = scalars({{"W", one}, {"Y", -half}, {"A", one}});
        code.decoders["n15"] = scalars({{"W", one}, {"X", minus}, {"A", one}});
        return code;
    }
    if (name == "non-t8") {
        const Rational third(1, 3);
        code.encoders["W"] = scalars({{"B", one}, {"C", one}, {"D", one}});
        code.encoders["X"] = scalars({{"A", one}, {"C", one}, {"D", one}});
        code.encoders["Y"] = scalars({{"A", one}, {"B", one}, {"D", one}});
        code.encoders["Z"] = scalars({{"A", one}, {"B", one}, {"C", one}});
        code.decoders["n9"] = scalars({{"X", one}, {"W", minus}, {"B", one}});
        code.decoders["n10"] = scalars({{"W", one}, {"Y", minus}, {"A", one}});
        code.decoders["n11"] = scalars({{"Y", one}, {"X", minus}, {"C", one}});
        code.decoders["n12"] = scalars({{"W", one}, {"Z", minus}, {"A", one}});
        code.decoders["n13"] = scalars({{"Z", one}, {"X", minus}, {"D", one}});
        code.decoders["n14"] = scalars({{"Z", one}, {"Y", minus}, {"D", one}});
        code.decoders["n15"] = scalars({{"X", third}, {"Y", third}, {"Z", third}, {"W", Rational(-2, 3)}});
        return code;
    }
    throw Error(Errc::unknown_name, "unknown code '" + std::string(name) + "'");
}

std::vector<std::string> builtin_code_names() { return {"butterfly", "t8", "non-t8"}; }

namespace {

std::vector<std::string> name_list(detail::Cursor& in) {
    std::vector<std::string> names;
    do names.push_back(in.identifier());
    while (in.consume(','));
    return names;
}

void expect_arrow(detail::Cursor& in) {
    in.expect('<');
    if (in.peek() != '-') in.fail("expected '<-'");
    in.get();
}

CoefficientMatrix matrix_literal(detail::Cursor& in) {
    in.expect('[');
    CoefficientMatrix m;
    std::vector<std::vector<Rational>> rows(1);
    for (;;) {
        in.skip_space();
        if (in.consume(']')) break;
        if (in.consume(';')) {
            rows.emplace_back();
            continue;
        }
        if (in.consume(',')) continue;
        if (!in.peek_number()) in.fail("expected a matrix entry");
        rows.back().push_back(in.rational());
    }
    m.rows = rows.size();
    m.cols = rows.front().size();
    if (m.cols == 0) in.fail("empty matrix literal");
    for (const auto& r : rows) {
        if (r.size() != m.cols) in.fail("ragged matrix literal");
        m.entries.insert(m.entries.end(), r.begin(), r.end());
    }
    return m;
}

LinearMap local_map(detail::Cursor& in) {
    LinearMap map;
    while (in.peek_identifier_start()) {
        auto name = in.identifier();
        in.expect('=');
        if (map.contains(name)) in.fail("coefficient for " + name + " given twice");
        map.emplace(std::move(name), matrix_literal(in));
    }
    return map;
}

std::string format_matrix_literal(const CoefficientMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (r) out += "; ";
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c) out += ' ';
            out += to_string(m.entries[r * m.cols + c]);
        }
    }
    return out + "]";
}

void format_local(std::ostringstream& os, const LinearMap& map) {
    for (const auto& [name, m] : map) os << ' ' << name << '=' << format_matrix_literal(m);
}

} // namespace

Network parse_network(std::string_view text) {
    detail::Cursor in(text);
    in.skip_space();
    in.expect_keyword("messages");
    auto messages = name_list(in);
    in.expect_line_end();
    std::vector<DerivedVariable> derived;
    std::vector<Demand> demands;
    for (in.skip_space(); !in.at_end(); in.skip_space()) {
        const auto line = in.line();
        const auto col = in.column();
        if (in.consume_keyword("derive")) {
            DerivedVariable d;
            d.name = in.identifier();
            expect_arrow(in);
            d.inputs = name_list(in);
            derived.push_back(std::move(d));
        } else if (in.consume_keyword("demand")) {
            Demand d;
            d.label = in.identifier();
            in.expect(':');
            d.target = in.identifier();
            expect_arrow(in);
            d.inputs = name_list(in);
            demands.push_back(std::move(d));
        } else {
            throw ParseError(line, col, "expected 'derive' or 'demand'");
        }
        in.expect_line_end();
    }
    return Network(std::move(messages), std::move(derived), std::move(demands));
}

std::string format_network(const Network& net) {
    std::ostringstream os;
    os << "messages " << join_list(net.messages()) << '\n';
    for (const auto& d : net.derived()) os << format_derived(d) << '\n';
    for (const auto& d : net.demands()) os << format_demand(d) << '\n';
    return os.str();
}

LinearCode parse_code(std::string_view text) {
    detail::Cursor in(text);
    in.skip_space();
    in.expect_keyword("field");
    const auto line = in.line();
    const auto col = in.column();
    const auto p = in.unsigned_integer();
    if (!is_prime(p)) throw ParseError(line, col, std::to_string(p) + " is not prime");
    in.expect_line_end();
    LinearCode code{PrimeField(p), 1, 1, {}, {}};
    in.skip_space();
    in.expect_keyword("k");
    code.k = static_cast<std::size_t>(in.unsigned_integer());
    in.expect_line_end();
    in.skip_space();
    in.expect_keyword("n");
    code.n = static_cast<std::size_t>(in.unsigned_integer());
    in.expect_line_end();
    if (code.k == 0 || code.n == 0) in.fail("k and n must be positive");
    for (in.skip_space(); !in.at_end(); in.skip_space()) {
        const auto l = in.line();
        const auto c = in.column();
        const bool encode = in.consume_keyword("encode");
        if (!encode && !in.consume_keyword("decode")) throw ParseError(l, c, "expected 'encode' or 'decode'");
        auto owner = in.identifier();
        in.expect(':');
        auto& target = encode ? code.encoders : code.decoders;
        if (target.contains(owner)) throw ParseError(l, c, owner + " defined twice");
        target.emplace(std::move(owner), local_map(in));
        in.expect_line_end();
    }
    return code;
}

std::string format_code(const LinearCode& code) {
    std::ostringstream os;
    os << "field " << code.field.modulus() << "\nk " << code.k << "\nn " << code.n << '\n';
    for (const auto& [name, map] : code.encoders) {
        os << "encode " << name << ':';
        format_local(os, map);
        os << '\n';
    }
    for (const auto& [label, map] : code.decoders) {
        os << "decode " << label << ':';
        format_local(os, map);
        os << '\n';
    }
    return os.str();
}

} // namespace lri
