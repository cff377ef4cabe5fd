#pragma once

// Coding networks as constraint systems, linear (k,n) codes over GF(p), exact
// code verification and capacity upper bounds.

#include "lri/expression.hpp"
#include "lri/field.hpp"
#include "lri/rational.hpp"
#include "lri/subspace.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lri {

/// An edge variable computed from earlier messages or edge variables.
struct DerivedVariable {
    std::string name;
    std::vector<std::string> inputs;

    friend bool operator==(const DerivedVariable&, const DerivedVariable&) = default;
};

/// A demand node: `target` must be decodable from `inputs`.
struct Demand {
    std::string label;
    std::string target;
    std::vector<std::string> inputs;

    friend bool operator==(const Demand&, const Demand&) = default;
};

class Network {
public:
    /// Validates acyclicity (inputs refer only to earlier names), that demand
    /// targets are messages and that every name is declared once.
    Network(std::vector<std::string> messages, std::vector<DerivedVariable> derived, std::vector<Demand> demands);

    const std::vector<std::string>& messages() const noexcept { return messages_; }
    const std::vector<DerivedVariable>& derived() const noexcept { return derived_; }
    const std::vector<Demand>& demands() const noexcept { return demands_; }

    bool is_message(std::string_view name) const noexcept;
    bool is_derived(std::string_view name) const noexcept;
    std::size_t message_index(std::string_view name) const;
    const DerivedVariable& derived_variable(std::string_view name) const;
    const Demand& demand(std::string_view label) const;

    /// Messages that `name` depends on through the derivation graph.
    std::set<std::string> message_closure(std::string_view name) const;

    friend bool operator==(const Network&, const Network&) = default;

private:
    std::vector<std::string> messages_;
    std::vector<DerivedVariable> derived_;
    std::vector<Demand> demands_;
};

/// A matrix literal whose entries are field elements written as fractions,
/// e.g. 1/2 for 2⁻¹. It is reduced into a particular GF(p) only when used.
struct CoefficientMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> entries;

    static CoefficientMatrix scalar(Rational value) { return {1, 1, {value}}; }
    /// Throws Errc::missing_inverse if a denominator vanishes mod p.
    Matrix over(const PrimeField& field) const;

    friend bool operator==(const CoefficientMatrix&, const CoefficientMatrix&) = default;
};

/// input name -> coefficient matrix
using LinearMap = std::map<std::string, CoefficientMatrix>;

struct LinearCode {
    PrimeField field;
    std::size_t k = 1;
    std::size_t n = 1;
    /// derived variable -> local encoding; each edge vector is Σ M_input · input.
    std::map<std::string, LinearMap> encoders;
    /// demand label -> local decoding.
    std::map<std::string, LinearMap> decoders;

    friend bool operator==(const LinearCode&, const LinearCode&) = default;
};

/// Global n×(k·|messages|) matrix of every derived variable.
std::map<std::string, Matrix> compose_global(const Network& net, const LinearCode& code);

struct DemandVerdict {
    std::string label;
    std::string target;
    bool ok = false;
    /// decoded map minus the selector of the target, k×(k·|messages|)
    Matrix residual;
};

struct Verdict {
    bool ok = false;
    std::vector<DemandVerdict> demands;
};

Verdict verify_solution(const Network& net, const LinearCode& code);

/// Messages ↦ their coordinate blocks, derived variables ↦ row space of their
/// global maps, all inside GF(p)^(k·|messages|).
SubspaceAssignment induced_assignment(const Network& net, const LinearCode& code);

struct CapacityBound {
    Rational value;
    std::string provenance;
    std::vector<std::string> trace;
};

/// Reduces `expr` with the network's zero-conditional constraints and message
/// independence, then substitutes H(message) = k and H(edge) <= n. `var_map`
/// renames inequality variables to network names; unmapped names map to
/// themselves.
CapacityBound capacity_bound_from_inequality(const Network& net, const RankExpression& expr,
                                             const std::map<std::string, std::string>& var_map = {});

/// k/n <= number of the demand's derived inputs that depend on its target.
CapacityBound dependency_cut_bound(const Network& net, std::string_view demand_label);
/// Minimum of dependency_cut_bound over the demands where it is defined.
CapacityBound dependency_cut_bound(const Network& net);

/// "butterfly", "t8" or "non-t8".
Network builtin_network(std::string_view name);
std::vector<std::string> builtin_network_names();

/// The scalar (k = n = 1) codes for the builtin networks, over GF(p).
LinearCode builtin_code(std::string_view name, std::uint64_t p);
std::vector<std::string> builtin_code_names();

/// `messages A,B`, `derive Z <- A,B`, `demand n9: A <- B,Z`.
Network parse_network(std::string_view text);
std::string format_network(const Network& net);

/// `field p`, `k 1`, `n 1`, `encode Z: A=[1] B=[1]`, `decode n9: Z=[1] B=[-1]`.
LinearCode parse_code(std::string_view text);
std::string format_code(const LinearCode& code);

} // namespace lri
