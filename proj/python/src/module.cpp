#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lri/entropy.hpp"
#include "lri/error.hpp"
#include "lri/expression.hpp"
#include "lri/matroid.hpp"
#include "lri/network.hpp"
#include "lri/search.hpp"

#include <optional>

namespace py = pybind11;
using namespace lri;

namespace {

py::object fraction(const Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.numerator(), r.denominator());
}

std::vector<std::vector<std::int64_t>> rows(const Matrix& m) {
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
    return out;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict out;
    out["ok"] = v.ok;
    py::list demands;
    for (const auto& d : v.demands) {
        py::dict item;
        item["label"] = d.label;
        item["target"] = d.target;
        item["ok"] = d.ok;
        item["residual"] = rows(d.residual);
        demands.append(item);
    }
    out["demands"] = demands;
    return out;
}

py::dict bound_dict(const CapacityBound& b) {
    py::dict out;
    out["value"] = fraction(b.value);
    out["provenance"] = b.provenance;
    out["trace"] = b.trace;
    return out;
}

} // namespace

PYBIND11_MODULE(_lri, m) {
    m.doc() = "Linear rank inequalities, network codes and matroids over GF(p)";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto args = py::make_tuple(std::string(to_string(e.code())), e.what());
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    py::class_<Subspace>(m, "Subspace")
        .def(py::init([](std::uint64_t p, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
                 return span(PrimeField(p), ambient_dim, vectors);
             }),
             py::arg("p"), py::arg("ambient_dim"), py::arg("vectors") = std::vector<Vector>{},
             "Span of the given vectors in GF(p)^ambient_dim.")
        .def_property_readonly("p", [](const Subspace& s) { return s.field().modulus(); })
        .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("basis", [](const Subspace& s) { return rows(s.basis()); },
                               "Reduced row echelon basis.")
        .def("contains",
             [](const Subspace& s, const Vector& v) {
                 if (v.size() != s.ambient_dim()) throw Error(Errc::dimension_mismatch, "vector has the wrong length");
                 std::vector<Residue> r;
                 for (auto x : v) r.push_back(s.field().reduce(x));
                 return s.contains(r);
             })
        .def("join", [](const Subspace& a, const Subspace& b) { return join(a, b); })
        .def("intersect", [](const Subspace& a, const Subspace& b) { return intersect(a, b); })
        .def("__eq__", [](const Subspace& a, const Subspace& b) { return a == b; })
        .def("__repr__", [](const Subspace& s) {
            return "<Subspace dim " + std::to_string(s.dim()) + " of GF(" + std::to_string(s.field().modulus()) + ")^" +
                   std::to_string(s.ambient_dim()) + ">";
        });

    py::class_<SubspaceAssignment>(m, "Assignment")
        .def(py::init([](std::uint64_t p, std::size_t ambient_dim) { return SubspaceAssignment(PrimeField(p), ambient_dim); }),
             py::arg("p"), py::arg("ambient_dim"))
        .def_static("parse", &parse_assignment, py::arg("text"))
        .def("format", &format_assignment)
        .def("bind", &SubspaceAssignment::bind, py::arg("name"), py::arg("subspace"))
        .def("__getitem__", &SubspaceAssignment::at)
        .def("__contains__", &SubspaceAssignment::contains)
        .def_property_readonly("p", [](const SubspaceAssignment& a) { return a.field().modulus(); })
        .def_property_readonly("ambient_dim", &SubspaceAssignment::ambient_dim)
        .def_property_readonly("names", [](const SubspaceAssignment& a) {
            std::vector<std::string> out;
            for (const auto& [name, _] : a.bindings()) out.push_back(name);
            return out;
        });

    m.def("joint_rank", &joint_rank, py::arg("assignment"), py::arg("vars"));
    m.def("cond_rank", &cond_rank, py::arg("assignment"), py::arg("s"), py::arg("t"));
    m.def("mutual_rank", &mutual_rank, py::arg("assignment"), py::arg("s"), py::arg("t"));
    m.def("cond_mutual_rank", &cond_mutual_rank, py::arg("assignment"), py::arg("s"), py::arg("t"), py::arg("given"));

    py::class_<RankExpression>(m, "Expression")
        .def_static("parse", &parse_expression, py::arg("text"))
        .def_static("builtin", &builtin_expression, py::arg("name"))
        .def_readonly("name", &RankExpression::name)
        .def_readonly("variables", &RankExpression::variables)
        .def_property_readonly("term_count", [](const RankExpression& e) { return e.terms.size(); })
        .def("applies_to", [](const RankExpression& e, std::uint64_t p) { return e.applies.applies_to(p); },
             py::arg("characteristic"))
        .def("format", &format_expression)
        .def("desugar", &desugar)
        .def("joint_form", [](const RankExpression& e) {
            std::vector<std::pair<std::vector<std::string>, py::object>> out;
            for (const auto& [support, c] : joint_form(e)) out.emplace_back(std::vector<std::string>(support.begin(), support.end()), fraction(c));
            return out;
        })
        .def("evaluate", [](const RankExpression& e, const SubspaceAssignment& a) { return fraction(evaluate(e, a)); },
             py::arg("assignment"), "Residual: the sum of all terms, nonnegative when the inequality holds.")
        .def("__eq__", [](const RankExpression& a, const RankExpression& b) { return a == b; });
    m.def("builtin_expression_names", &builtin_expression_names);

    m.def(
        "search",
        [](const RankExpression& expr, std::uint64_t p, std::size_t dim, const std::string& strategy, std::uint64_t seed,
           std::uint64_t trials, std::optional<std::size_t> max_dim, unsigned workers) {
            SearchStrategy s;
            if (strategy == "exhaustive-1dim")
                s = ExhaustiveOneDim{};
            else if (strategy == "random")
                s = RandomTrials{seed, trials, max_dim};
            else
                throw Error(Errc::invalid_strategy, "unknown strategy '" + strategy + "'");
            SearchResult r;
            {
                py::gil_scoped_release release;
                r = search_violation(expr, PrimeField(p), dim, s, {workers});
            }
            py::dict out;
            out["found"] = r.violation.has_value();
            out["residual"] = r.violation ? fraction(r.residual) : py::none();
            out["index"] = r.index;
            out["space"] = r.space;
            out["assignment"] = r.violation ? py::cast(*r.violation) : py::none();
            return out;
        },
        py::arg("expr"), py::arg("p"), py::arg("dim"), py::arg("strategy") = "exhaustive-1dim", py::arg("seed") = 1,
        py::arg("trials") = 1000, py::arg("max_dim") = std::nullopt, py::arg("workers") = 0);

    py::class_<VectorMatroid>(m, "Matroid")
        .def(py::init([](std::vector<std::string> ground, std::uint64_t p, const std::vector<Vector>& representation) {
                 const PrimeField f(p);
                 const std::size_t cols = representation.empty() ? 0 : representation.front().size();
                 Matrix mat(f, representation.size(), cols);
                 for (std::size_t r = 0; r < representation.size(); ++r) {
                     if (representation[r].size() != cols) throw Error(Errc::dimension_mismatch, "ragged matrix");
                     for (std::size_t c = 0; c < cols; ++c) mat.set(r, c, representation[r][c]);
                 }
                 return VectorMatroid(std::move(ground), std::move(mat));
             }),
             py::arg("ground"), py::arg("p"), py::arg("representation"))
        .def_static("builtin", &builtin_matroid, py::arg("name"), py::arg("p"))
        .def_property_readonly("ground", &VectorMatroid::ground)
        .def("rank", py::overload_cast<const LabelSet&>(&VectorMatroid::rank, py::const_), py::arg("subset"))
        .def_property_readonly("full_rank", py::overload_cast<>(&VectorMatroid::rank, py::const_))
        .def("is_independent", &VectorMatroid::is_independent)
        .def("bases", [](const VectorMatroid& mt) { return bases(mt); })
        .def("circuits", [](const VectorMatroid& mt) { return circuits(mt); })
        .def("check_axioms", [](const VectorMatroid& mt) { return check_independence_axioms(mt); },
             "None when (I1)-(I3) hold, otherwise a description of the first failure.")
        .def("report", &format_matroid_report);
    m.def("builtin_matroid_names", &builtin_matroid_names);

    py::class_<Network>(m, "Network")
        .def_static("parse", &parse_network, py::arg("text"))
        .def_static("builtin", &builtin_network, py::arg("name"))
        .def_property_readonly("messages", &Network::messages)
        .def_property_readonly("demand_labels", [](const Network& n) {
            std::vector<std::string> out;
            for (const auto& d : n.demands()) out.push_back(d.label);
            return out;
        })
        .def("format", &format_network)
        .def("__eq__", [](const Network& a, const Network& b) { return a == b; });
    m.def("builtin_network_names", &builtin_network_names);

    py::class_<LinearCode>(m, "Code")
        .def_static("parse", &parse_code, py::arg("text"))
        .def_static("builtin", &builtin_code, py::arg("name"), py::arg("p"))
        .def_property_readonly("p", [](const LinearCode& c) { return c.field.modulus(); })
        .def_readonly("k", &LinearCode::k)
        .def_readonly("n", &LinearCode::n)
        .def("format", &format_code);
    m.def("builtin_code_names", &builtin_code_names);

    m.def("verify", [](const Network& n, const LinearCode& c) { return verdict_dict(verify_solution(n, c)); },
          py::arg("network"), py::arg("code"));
    m.def("induced_assignment", &induced_assignment, py::arg("network"), py::arg("code"));
    m.def(
        "capacity_bound",
        [](const Network& n, const RankExpression& e, const std::map<std::string, std::string>& var_map) {
            return bound_dict(capacity_bound_from_inequality(n, e, var_map));
        },
        py::arg("network"), py::arg("expr"), py::arg("var_map") = std::map<std::string, std::string>{});
    m.def(
        "cut_bound",
        [](const Network& n, std::optional<std::string> demand) {
            return bound_dict(demand ? dependency_cut_bound(n, *demand) : dependency_cut_bound(n));
        },
        py::arg("network"), py::arg("demand") = std::nullopt);

    py::class_<JointDistribution>(m, "Distribution")
        .def(py::init([](std::vector<std::string> vars, const std::vector<std::pair<std::vector<std::int64_t>, std::pair<std::int64_t, std::int64_t>>>& atoms) {
                 std::vector<Atom> a;
                 for (const auto& [values, q] : atoms) {
                     if (q.second == 0) throw Error(Errc::invalid_distribution, "zero denominator");
                     a.push_back({values, Rational(q.first, q.second)});
                 }
                 return JointDistribution(std::move(vars), std::move(a));
             }),
             py::arg("variables"), py::arg("atoms"),
             "atoms: list of (values, (numerator, denominator)).")
        .def_static("parse", &parse_distribution, py::arg("text"))
        .def_static("builtin", &builtin_distribution, py::arg("name"))
        .def_static("induced", &induce_distribution, py::arg("assignment"))
        .def_property_readonly("variables", &JointDistribution::variables)
        .def_property_readonly("atoms", [](const JointDistribution& d) {
            std::vector<std::pair<std::vector<std::int64_t>, py::object>> out;
            for (const auto& a : d.atoms()) out.emplace_back(a.values, fraction(a.probability));
            return out;
        })
        .def("format", &format_distribution)
        .def("entropy", [](const JointDistribution& d, const VarSet& vars, double base) { return entropy(d, vars, base); },
             py::arg("vars"), py::arg("base") = 2.0)
        .def("evaluate", [](const JointDistribution& d, const RankExpression& e, double base) {
                 return evaluate_on_distribution(e, d, base);
             },
             py::arg("expr"), py::arg("base") = 2.0);
    m.def("builtin_distribution_names", &builtin_distribution_names);
}
