#include "lri/entropy.hpp"

#include "cursor.hpp"
#include "lri/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lri {

JointDistribution::JointDistribution(std::vector<std::string> variables, std::vector<Atom> atoms)
    : variables_(std::move(variables)) {
    auto sorted = variables_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::duplicate_name, "distribution variables must be unique");
    std::map<std::vector<std::int64_t>, Rational> merged;
    Rational total = 0;
    for (auto& atom : atoms) {
        if (atom.values.size() != variables_.size())
            throw Error(Errc::invalid_distribution, "atom has " + std::to_string(atom.values.size()) +
                                                        " values for " + std::to_string(variables_.size()) +
                                                        " variables");
        if (atom.probability <= 0)
            throw Error(Errc::invalid_distribution, "atom probability " + to_string(atom.probability) +
                                                        " is not positive");
        merged[atom.values] += atom.probability;
        total += atom.probability;
    }
    if (total != Rational(1)) throw Error(Errc::invalid_distribution, "probabilities sum to " + to_string(total) + ", not 1");
    for (auto& [values, probability] : merged) atoms_.push_back({values, probability});
}

std::size_t JointDistribution::index_of(std::string_view name) const {
    const auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end())
        throw Error(Errc::unbound_variable, "variable " + std::string(name) + " is not in the distribution");
    return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<Atom> marginal(const JointDistribution& dist, const VarSet& vars) {
    std::vector<std::size_t> columns;
    for (const auto& v : vars) columns.push_back(dist.index_of(v));
    std::map<std::vector<std::int64_t>, Rational> merged;
    for (const auto& atom : dist.atoms()) {
        std::vector<std::int64_t> key;
        for (auto c : columns) key.push_back(atom.values[c]);
        merged[key] += atom.probability;
    }
    std::vector<Atom> out;
    for (auto& [values, probability] : merged) out.push_back({values, probability});
    return out;
}

double entropy(const JointDistribution& dist, const VarSet& vars, double base) {
    if (!(base > 1.0)) throw Error(Errc::invalid_distribution, "log base must exceed 1");
    double h = 0.0;
    for (const auto& atom : marginal(dist, vars)) {
        const double q = static_cast<double>(atom.probability.numerator()) /
                         static_cast<double>(atom.probability.denominator());
        h -= q * std::log(q);
    }
    return h / std::log(base) + 0.0;
}

double evaluate_on_distribution(const RankExpression& expr, const JointDistribution& dist, double base) {
    for (const auto& v : expr.variables) dist.index_of(v);
    double total = 0.0;
    for (const auto& [support, coefficient] : joint_form(expr)) {
        const double c = static_cast<double>(coefficient.numerator()) / static_cast<double>(coefficient.denominator());
        total += c * entropy(dist, support, base);
    }
    return total;
}

JointDistribution builtin_distribution(std::string_view name) {
    if (name == "ingleton-4atom") {
        const Rational quarter(1, 4);
        return JointDistribution({"A", "B", "C", "D"}, {{{0, 0, 0, 0}, quarter},
                                                        {{1, 1, 1, 1}, quarter},
                                                        {{0, 1, 0, 1}, quarter},
                                                        {{0, 1, 1, 0}, quarter}});
    }
    throw Error(Errc::unknown_name, "unknown distribution '" + std::string(name) + "'");
}

std::vector<std::string> builtin_distribution_names() { return {"ingleton-4atom"}; }

JointDistribution induce_distribution(const SubspaceAssignment& ctx) {
    const auto& field = ctx.field();
    const auto p = field.modulus();
    const auto d = ctx.ambient_dim();
    if (d == 0) throw Error(Errc::dimension_mismatch, "ambient dimension must be at least 1");
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (count > (std::uint64_t{1} << 24) / p) throw Error(Errc::size_limit, "p^d exceeds 2^24 atoms");
        count *= p;
    }
    std::vector<std::string> names;
    for (const auto& [name, sub] : ctx.bindings()) names.push_back(name);
    const Rational weight(1, static_cast<std::int64_t>(count));
    std::vector<Atom> atoms;
    atoms.reserve(count);
    std::vector<Residue> u(d, 0);
    for (std::uint64_t n = 0; n < count; ++n) {
        auto rest = n;
        for (std::size_t i = 0; i < d; ++i, rest /= p) u[i] = rest % p;
        Atom atom{{}, weight};
        for (const auto& [name, sub] : ctx.bindings()) {
            // Encode the tuple (u·v₁, ..., u·v_r) as one base-p integer.
            std::int64_t code = 0;
            const auto& basis = sub.basis();
            for (std::size_t r = 0; r < basis.rows(); ++r) {
                Residue dot = 0;
                for (std::size_t c = 0; c < d; ++c) dot = field.add(dot, field.mul(u[c], basis(r, c)));
                code = code * static_cast<std::int64_t>(p) + static_cast<std::int64_t>(dot);
            }
            atom.values.push_back(code);
        }
        atoms.push_back(std::move(atom));
    }
    return JointDistribution(std::move(names), std::move(atoms));
}

JointDistribution parse_distribution(std::string_view text) {
    detail::Cursor in(text);
    in.skip_space();
    in.expect_keyword("vars");
    std::vector<std::string> vars;
    do vars.push_back(in.identifier());
    while (in.consume(','));
    in.expect_line_end();
    std::vector<Atom> atoms;
    for (in.skip_space(); !in.at_end(); in.skip_space()) {
        const auto line = in.line();
        const auto col = in.column();
        in.expect_keyword("atom");
        Atom atom;
        do atom.values.push_back(in.integer());
        while (in.consume(','));
        if (atom.values.size() != vars.size())
            throw ParseError(line, col, "atom has " + std::to_string(atom.values.size()) + " values for " +
                                            std::to_string(vars.size()) + " variables");
        in.expect(':');
        atom.probability = in.rational();
        in.expect_line_end();
        atoms.push_back(std::move(atom));
    }
    return JointDistribution(std::move(vars), std::move(atoms));
}

std::string format_distribution(const JointDistribution& dist) {
    std::ostringstream os;
    os << "vars";
    for (std::size_t i = 0; i < dist.variables().size(); ++i) os << (i ? "," : " ") << dist.variables()[i];
    os << '\n';
    for (const auto& atom : dist.atoms()) {
        os << "atom";
        for (std::size_t i = 0; i < atom.values.size(); ++i) os << (i ? "," : " ") << atom.values[i];
        os << " : " << to_string(atom.probability) << '\n';
    }
    return os.str();
}

} // namespace lri
