// Command-line front end: inequality evaluation and search, network code
// verification and capacity bounds, matroid reports and entropies.
//
// Exit status: 0 holds / verified, 1 violated / failed, 2 usage or input error.

#include "lri/entropy.hpp"
#include "lri/error.hpp"
#include "lri/expression.hpp"
#include "lri/matroid.hpp"
#include "lri/network.hpp"
#include "lri/search.hpp"
#include "lri/subspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

struct Outcome {
    int exit_code = 0;
    std::vector<std::string> prose;
    ordered_json machine = ordered_json::object();
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lri::Error(lri::Errc::unknown_name, "cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Builtin names win over paths; "file:" forces a path.
template <class Builtin, class Parse>
auto resolve(const std::string& spec, const std::vector<std::string>& names, Builtin builtin, Parse parse) {
    constexpr std::string_view prefix = "file:";
    if (spec.starts_with(prefix)) return parse(read_file(spec.substr(prefix.size())));
    if (std::find(names.begin(), names.end(), spec) != names.end()) return builtin(spec);
    if (std::filesystem::is_regular_file(spec)) return parse(read_file(spec));
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw lri::Error(lri::Errc::unknown_name,
                     "'" + spec + "' is neither a builtin (" + known + ") nor a readable file");
}

lri::RankExpression load_expression(const std::string& spec) {
    return resolve(spec, lri::builtin_expression_names(), lri::builtin_expression, lri::parse_expression);
}

lri::Network load_network(const std::string& spec) {
    return resolve(spec, lri::builtin_network_names(), lri::builtin_network, lri::parse_network);
}

lri::JointDistribution load_distribution(const std::string& spec) {
    return resolve(spec, lri::builtin_distribution_names(), lri::builtin_distribution, lri::parse_distribution);
}

// "t8-gf3" or "t8" together with --char.
lri::LinearCode load_code(const std::string& spec, std::uint64_t characteristic) {
    std::vector<std::string> names;
    for (const auto& n : lri::builtin_code_names()) names.push_back(n);
    auto builtin = [&](const std::string& name) {
        if (characteristic == 0)
            throw lri::Error(lri::Errc::unknown_name, "builtin code '" + name + "' needs --char or a -gf<p> suffix");
        return lri::builtin_code(name, characteristic);
    };
    if (!spec.starts_with("file:")) {
        const auto at = spec.rfind("-gf");
        if (at != std::string::npos && at + 3 < spec.size()) {
            const auto base = spec.substr(0, at);
            const auto digits = spec.substr(at + 3);
            if (std::find(names.begin(), names.end(), base) != names.end() &&
                std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
                if (digits.size() > 9) throw lri::Error(lri::Errc::not_prime, "characteristic too large");
                return lri::builtin_code(base, std::stoull(digits));
            }
        }
    }
    return resolve(spec, names, builtin, lri::parse_code);
}

std::string show(double value) {
    std::ostringstream os;
    os << std::setprecision(12) << value;
    return os.str();
}

std::string format_row(const lri::Matrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r ? "; (" : "(";
        for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? "," : "") + std::to_string(m(r, c));
        out += ")";
    }
    return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep = ",") {
    std::string out;
    for (const auto& item : items) out += (out.empty() ? "" : std::string(sep)) + item;
    return out;
}

std::map<std::string, std::string> parse_var_map(const std::vector<std::string>& pairs) {
    std::map<std::string, std::string> out;
    for (const auto& pair : pairs) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
            throw lri::Error(lri::Errc::syntax, "--map expects NAME=NAME, got '" + pair + "'");
        out[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    return out;
}

// --- ineq --------------------------------------------------------------

Outcome ineq_eval(const std::string& ineq, const std::string& assignment_file) {
    const auto expr = load_expression(ineq);
    const auto ctx = lri::parse_assignment(read_file(assignment_file));
    const auto residual = lri::evaluate(expr, ctx);
    const auto p = ctx.field().modulus();
    Outcome out;
    out.exit_code = residual >= 0 ? 0 : 1;
    out.prose.push_back("inequality " + expr.name + " (" + lri::to_string(expr.applies) + ") over GF(" +
                        std::to_string(p) + ")^" + std::to_string(ctx.ambient_dim()));
    for (const auto& term : expr.terms) {
        lri::RankExpression single{"", expr.variables, {term}, {}};
        out.prose.push_back("  " + lri::format_term(term) + " = " + lri::to_string(lri::evaluate(single, ctx)));
    }
    out.prose.push_back(std::string("residual ") + lri::to_string(residual) + (residual >= 0 ? ": holds" : ": violated"));
    out.machine["ineq"] = expr.name;
    out.machine["char"] = p;
    out.machine["dim"] = ctx.ambient_dim();
    out.machine["residual"] = lri::to_string(residual);
    out.machine["verdict"] = residual >= 0 ? "holds" : "violated";
    out.machine["claimed"] = expr.applies.applies_to(p) ? "yes" : "no";
    return out;
}

struct SearchArgs {
    std::string ineq;
    std::uint64_t characteristic = 2;
    std::size_t dim = 4;
    std::string strategy = "random";
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::size_t max_dim = 0;
    unsigned workers = 0;
};

Outcome ineq_search(const SearchArgs& args) {
    const auto expr = load_expression(args.ineq);
    const lri::PrimeField field(args.characteristic);
    lri::SearchStrategy strategy;
    if (args.strategy == "exhaustive-1dim") {
        strategy = lri::ExhaustiveOneDim{};
    } else if (args.strategy == "random") {
        lri::RandomTrials random{args.seed, args.trials, std::nullopt};
        if (args.max_dim > 0) random.max_dim = args.max_dim;
        strategy = random;
    } else {
        throw lri::Error(lri::Errc::invalid_strategy,
                         "unknown strategy '" + args.strategy + "' (use exhaustive-1dim or random)");
    }
    lri::SearchOptions options;
    options.workers = args.workers ? args.workers : lri::default_worker_count();
    const auto result = lri::search_violation(expr, field, args.dim, strategy, options);
    Outcome out;
    out.machine["ineq"] = expr.name;
    out.machine["char"] = args.characteristic;
    out.machine["dim"] = args.dim;
    out.machine["strategy"] = args.strategy;
    out.machine["space"] = result.space;
    if (result.violation) {
        out.exit_code = 1;
        out.prose.push_back("violation at index " + std::to_string(result.index) + " of " +
                            std::to_string(result.space) + ", residual " + lri::to_string(result.residual));
        auto text = lri::format_assignment(*result.violation);
        if (!text.empty() && text.back() == '\n') text.pop_back();
        out.prose.push_back(text);
        out.machine["found"] = "yes";
        out.machine["index"] = result.index;
        out.machine["residual"] = lri::to_string(result.residual);
        out.machine["assignment"] = lri::format_assignment(*result.violation);
    } else {
        out.prose.push_back("none");
        out.machine["found"] = "no";
    }
    return out;
}

Outcome ineq_show(const std::string& ineq, bool desugared) {
    auto expr = load_expression(ineq);
    const auto supports = lri::joint_form(expr).size();
    if (desugared) expr = lri::desugar(expr);
    Outcome out;
    auto text = lri::format_expression(expr);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    out.prose.push_back(text);
    out.machine["ineq"] = expr.name;
    out.machine["applies"] = lri::to_string(expr.applies);
    out.machine["terms"] = expr.terms.size();
    out.machine["supports"] = supports;
    return out;
}

// --- net ---------------------------------------------------------------

Outcome net_verify(const std::string& network, const std::string& code_spec, std::uint64_t characteristic) {
    const auto net = load_network(network);
    const auto code = load_code(code_spec, characteristic);
    Outcome out;
    out.machine["network"] = network;
    out.machine["char"] = code.field.modulus();
    out.machine["k"] = code.k;
    out.machine["n"] = code.n;
    try {
        const auto verdict = lri::verify_solution(net, code);
        std::vector<std::string> failed;
        for (const auto& d : verdict.demands) {
            out.prose.push_back(d.label + " " + d.target + (d.ok ? " ok" : " FAIL residual " + format_row(d.residual)));
            if (!d.ok) failed.push_back(d.label);
            out.machine["demand." + d.label] = d.ok ? "ok" : "fail";
        }
        out.exit_code = verdict.ok ? 0 : 1;
        out.prose.push_back(verdict.ok ? "all " + std::to_string(verdict.demands.size()) + " demands ok"
                                       : std::to_string(failed.size()) + " of " +
                                             std::to_string(verdict.demands.size()) + " demands failed");
        out.machine["verified"] = verdict.ok ? "yes" : "no";
        out.machine["demands"] = verdict.demands.size();
        out.machine["failed"] = join(failed);
    } catch (const lri::Error& e) {
        if (e.code() != lri::Errc::missing_inverse) throw;
        out.exit_code = 1;
        out.prose.push_back(std::string("code is not defined over GF(") + std::to_string(code.field.modulus()) +
                            "): " + e.what());
        out.machine["verified"] = "no";
        out.machine["error"] = std::string(lri::to_string(e.code()));
        out.machine["message"] = e.what();
    }
    return out;
}

Outcome net_bound(const std::string& network, const std::string& ineq, bool cut, const std::string& demand,
                  const std::vector<std::string>& map) {
    const auto net = load_network(network);
    if (cut == !ineq.empty()) throw lri::Error(lri::Errc::syntax, "give exactly one of --ineq and --cut");
    lri::CapacityBound bound;
    if (cut) {
        bound = demand.empty() ? lri::dependency_cut_bound(net) : lri::dependency_cut_bound(net, demand);
    } else {
        if (!demand.empty()) throw lri::Error(lri::Errc::syntax, "--demand only applies with --cut");
        bound = lri::capacity_bound_from_inequality(net, load_expression(ineq), parse_var_map(map));
    }
    Outcome out;
    out.prose.push_back(bound.provenance);
    for (const auto& line : bound.trace) out.prose.push_back("  " + line);
    out.prose.push_back("linear coding capacity <= " + lri::to_string(bound.value));
    out.machine["network"] = network;
    out.machine["method"] = cut ? "cut" : "inequality";
    out.machine["bound"] = lri::to_string(bound.value);
    out.machine["provenance"] = bound.provenance;
    out.machine["trace"] = bound.trace;
    return out;
}

// --- matroid -----------------------------------------------------------

Outcome matroid_info(const std::string& name, std::uint64_t characteristic) {
    const auto m = lri::builtin_matroid(name, characteristic);
    Outcome out;
    auto report = lri::format_matroid_report(m);
    std::istringstream lines(report);
    for (std::string line; std::getline(lines, line);) out.prose.push_back(line);
    const auto bs = lri::bases(m);
    const auto cs = lri::circuits(m);
    out.machine["matroid"] = name;
    out.machine["char"] = characteristic;
    out.machine["rank"] = m.rank();
    out.machine["bases"] = bs.size();
    out.machine["circuits"] = cs.size();
    std::vector<std::string> circuit_text;
    for (const auto& c : cs) circuit_text.push_back(lri::format_label_set(c));
    out.machine["circuit_list"] = join(circuit_text, " ");
    if (m.ground().size() <= lri::max_axiom_ground) {
        const auto failure = lri::check_independence_axioms(m);
        out.prose.push_back(failure ? "axioms violated: " + *failure : "axioms (I1)-(I3) hold");
        out.machine["axioms"] = failure ? "fail" : "ok";
        out.exit_code = failure ? 1 : 0;
    } else {
        out.machine["axioms"] = "skipped";
    }
    return out;
}

// --- entropy -----------------------------------------------------------

Outcome entropy_eval(const std::string& dist_spec, const std::string& expr_spec, double base) {
    const auto dist = load_distribution(dist_spec);
    const auto expr = load_expression(expr_spec);
    const auto residual = lri::evaluate_on_distribution(expr, dist, base);
    constexpr double tolerance = 1e-9;
    Outcome out;
    for (const auto& term : expr.terms) {
        lri::RankExpression single{"", expr.variables, {term}, {}};
        out.prose.push_back("  " + lri::format_term(term) + " = " +
                            show(lri::evaluate_on_distribution(single, dist, base)));
    }
    out.prose.push_back("residual " + show(residual) + (residual >= -tolerance ? ": holds" : ": violated"));
    out.exit_code = residual >= -tolerance ? 0 : 1;
    out.machine["expr"] = expr.name;
    out.machine["base"] = base;
    out.machine["atoms"] = dist.atoms().size();
    out.machine["residual"] = residual;
    out.machine["verdict"] = residual >= -tolerance ? "holds" : "violated";
    return out;
}

void print(const Outcome& out, const std::string& format) {
    if (format == "json") {
        std::cout << out.machine.dump(2) << '\n';
        return;
    }
    for (const auto& line : out.prose) std::cout << line << '\n';
    std::cout << '\n';
    for (const auto& [key, value] : out.machine.items()) {
        if (value.is_string()) {
            auto text = value.get<std::string>();
            std::replace(text.begin(), text.end(), '\n', '|');
            std::cout << key << '=' << text << '\n';
        } else if (value.is_array()) {
            std::cout << key << '=' << value.size() << '\n';
        } else if (value.is_number_float()) {
            std::cout << key << '=' << show(value.get<double>()) << '\n';
        } else {
            std::cout << key << '=' << value.dump() << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear rank inequalities, network codes and matroids over GF(p)"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::function<Outcome()> action;

    auto* ineq = app.add_subcommand("ineq", "Rank inequalities");
    ineq->require_subcommand(1);

    std::string ineq_name;
    std::string assignment;
    auto* eval = ineq->add_subcommand("eval", "Evaluate an inequality on a subspace assignment");
    eval->add_option("--ineq", ineq_name, "Builtin name or file")->required();
    eval->add_option("--assignment", assignment, "Assignment file")->required();
    eval->callback([&] { action = [&] { return ineq_eval(ineq_name, assignment); }; });

    SearchArgs search;
    auto* search_cmd = ineq->add_subcommand("search", "Search for a violating assignment");
    search_cmd->add_option("--ineq", search.ineq, "Builtin name or file")->required();
    search_cmd->add_option("--char", search.characteristic, "Field characteristic")->required();
    search_cmd->add_option("--dim", search.dim, "Ambient dimension")->required();
    search_cmd->add_option("--strategy", search.strategy, "exhaustive-1dim or random");
    search_cmd->add_option("--seed", search.seed, "Random seed");
    search_cmd->add_option("--trials", search.trials, "Random trials");
    search_cmd->add_option("--max-dim", search.max_dim, "Largest drawn subspace dimension");
    search_cmd->add_option("--workers", search.workers, "Worker threads (default: LRI_WORKERS or all cores)");
    search_cmd->callback([&] { action = [&] { return ineq_search(search); }; });

    bool desugared = false;
    auto* show_cmd = ineq->add_subcommand("show", "Print an inequality");
    show_cmd->add_option("--ineq", ineq_name, "Builtin name or file")->required();
    show_cmd->add_flag("--desugar", desugared, "Rewrite into merged joint terms");
    show_cmd->callback([&] { action = [&] { return ineq_show(ineq_name, desugared); }; });

    auto* net = app.add_subcommand("net", "Network codes");
    net->require_subcommand(1);

    std::string network;
    std::string code;
    std::uint64_t code_char = 0;
    auto* verify = net->add_subcommand("verify", "Verify a linear code on a network");
    verify->add_option("--network", network, "Builtin name or file")->required();
    verify->add_option("--code", code, "Builtin code (e.g. t8-gf3) or file")->required();
    verify->add_option("--char", code_char, "Characteristic for a builtin code given without -gf<p>");
    verify->callback([&] { action = [&] { return net_verify(network, code, code_char); }; });

    std::string bound_ineq;
    bool cut = false;
    std::string demand;
    std::vector<std::string> var_map;
    auto* bound = net->add_subcommand("bound", "Upper bound on linear coding capacity");
    bound->add_option("--network", network, "Builtin name or file")->required();
    bound->add_option("--ineq", bound_ineq, "Inequality to reduce");
    bound->add_flag("--cut", cut, "Use the dependency cut bound");
    bound->add_option("--demand", demand, "Demand label for --cut");
    bound->add_option("--map", var_map, "Rename inequality variables, NAME=NETNAME")->delimiter(',');
    bound->callback([&] { action = [&] { return net_bound(network, bound_ineq, cut, demand, var_map); }; });

    auto* matroid = app.add_subcommand("matroid", "Vector matroids");
    matroid->require_subcommand(1);
    std::string matroid_name;
    std::uint64_t matroid_char = 0;
    auto* info = matroid->add_subcommand("info", "Rank, bases and circuits of a builtin matroid");
    info->add_option("--name", matroid_name, "t8 or t8-example-2x5")->required();
    info->add_option("--char", matroid_char, "Field characteristic")->required();
    info->callback([&] { action = [&] { return matroid_info(matroid_name, matroid_char); }; });

    auto* entropy = app.add_subcommand("entropy", "Shannon entropies of distributions");
    entropy->require_subcommand(1);
    std::string dist;
    std::string expr;
    double base = 2.0;
    auto* entropy_eval_cmd = entropy->add_subcommand("eval", "Evaluate an inequality on a distribution");
    entropy_eval_cmd->add_option("--dist", dist, "Builtin name or file")->required();
    entropy_eval_cmd->add_option("--expr", expr, "Builtin name or file")->required();
    entropy_eval_cmd->add_option("--base", base, "Logarithm base");
    entropy_eval_cmd->callback([&] { action = [&] { return entropy_eval(dist, expr, base); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto outcome = action();
        print(outcome, format);
        return outcome.exit_code;
    } catch (const lri::Error& e) {
        std::cerr << "error: " << lri::to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
