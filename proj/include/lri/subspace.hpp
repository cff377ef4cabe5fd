#pragma once

// Subspaces of GF(p)^d in canonical form and the rank functionals H, H(.|.),
// I and codimension over named collections of them.

#include "lri/field.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lri {

using Vector = std::vector<std::int64_t>;
using VarSet = std::set<std::string>;

/// A subspace stored by its reduced row echelon basis. Two subspaces are equal
/// exactly when their canonical bases are identical.
class Subspace {
public:
    static Subspace zero(PrimeField field, std::size_t ambient_dim);
    static Subspace full(PrimeField field, std::size_t ambient_dim);
    /// Row space of `generators`; zero rows and dependent rows are dropped.
    static Subspace row_space(const Matrix& generators);

    const PrimeField& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }

    bool contains(std::span<const Residue> vector) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

Subspace span(PrimeField field, std::size_t ambient_dim, const std::vector<Vector>& vectors);
Subspace join(std::span<const Subspace> subspaces);
Subspace join(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// dim(parent) - dim(sub); throws Errc::not_a_subspace unless sub ⊆ parent.
std::size_t codim(const Subspace& parent, const Subspace& sub);

/// dim drawn uniformly from [0, d], then the column span of a uniform
/// d×dim matrix. The result may have smaller dimension than the draw.
Subspace random_subspace(PrimeField field, std::size_t ambient_dim, std::mt19937_64& rng);
/// As above with the drawn dimension restricted to [0, max_dim].
Subspace random_subspace(PrimeField field, std::size_t ambient_dim, std::size_t max_dim, std::mt19937_64& rng);

/// Named subspaces over one common GF(p)^d, in insertion order.
class SubspaceAssignment {
public:
    SubspaceAssignment(PrimeField field, std::size_t ambient_dim) : field_(field), ambient_dim_(ambient_dim) {}

    const PrimeField& field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    const std::vector<std::pair<std::string, Subspace>>& bindings() const noexcept { return bindings_; }

    /// Adds or replaces a binding; the subspace must match field and ambient dimension.
    void bind(std::string name, Subspace subspace);
    const Subspace& at(std::string_view name) const;
    const Subspace* find(std::string_view name) const noexcept;
    bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }

    friend bool operator==(const SubspaceAssignment&, const SubspaceAssignment&) = default;

private:
    PrimeField field_;
    std::size_t ambient_dim_;
    std::vector<std::pair<std::string, Subspace>> bindings_;
};

/// H(S): dimension of the span of the named subspaces; H(∅) = 0.
std::int64_t joint_rank(const SubspaceAssignment& ctx, const VarSet& vars);
/// H(S|T) = H(S ∪ T) - H(T).
std::int64_t cond_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t);
/// I(S;T) = H(S) + H(T) - H(S ∪ T).
std::int64_t mutual_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t);
/// I(S;T|U) = H(S ∪ U) + H(T ∪ U) - H(U) - H(S ∪ T ∪ U).
std::int64_t cond_mutual_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t, const VarSet& given);

/// Text form: `field p`, `ambient d`, then `NAME = span{(c,...); (c,...)}` lines.
SubspaceAssignment parse_assignment(std::string_view text);
std::string format_assignment(const SubspaceAssignment& ctx);

} // namespace lri
