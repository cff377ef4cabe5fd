#pragma once

// Shannon entropies of finitely supported joint distributions.

#include "lri/expression.hpp"
#include "lri/rational.hpp"
#include "lri/subspace.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lri {

struct Atom {
    std::vector<std::int64_t> values;
    Rational probability;

    friend bool operator==(const Atom&, const Atom&) = default;
};

class JointDistribution {
public:
    /// Probabilities must be positive and sum to exactly 1; every value tuple
    /// must have one entry per variable. Equal tuples are merged.
    JointDistribution(std::vector<std::string> variables, std::vector<Atom> atoms);

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t index_of(std::string_view name) const;

    friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

private:
    std::vector<std::string> variables_;
    std::vector<Atom> atoms_;
};

/// Exact marginal over `vars`, keyed by the restricted value tuple.
std::vector<Atom> marginal(const JointDistribution& dist, const VarSet& vars);

/// Shannon entropy of the marginal of `vars` in the given log base; H(∅) = 0.
double entropy(const JointDistribution& dist, const VarSet& vars, double base = 2.0);

/// Σ terms of `expr` with H read as Shannon entropy.
double evaluate_on_distribution(const RankExpression& expr, const JointDistribution& dist, double base = 2.0);

/// "ingleton-4atom": A,B,C,D uniform over 0000, 1111, 0101, 0110.
JointDistribution builtin_distribution(std::string_view name);
std::vector<std::string> builtin_distribution_names();

/// u uniform on GF(p)^d; each variable takes the value (u·v₁, ..., u·v_r) for
/// its basis rows v_i. Base-p entropies then equal subspace ranks.
JointDistribution induce_distribution(const SubspaceAssignment& ctx);

/// `vars A,B` then `atom 0,1 : 1/4` lines.
JointDistribution parse_distribution(std::string_view text);
std::string format_distribution(const JointDistribution& dist);

} // namespace lri
