#pragma once

// Vector matroids: the independence structure of the columns of a matrix.

#include "lri/field.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lri {

using LabelSet = std::set<std::string>;

class VectorMatroid {
public:
    /// Column j of `representation` is the element labelled ground[j].
    VectorMatroid(std::vector<std::string> ground, Matrix representation);

    const std::vector<std::string>& ground() const noexcept { return ground_; }
    const Matrix& representation() const noexcept { return representation_; }
    const PrimeField& field() const noexcept { return representation_.field(); }

    std::size_t rank(const LabelSet& subset) const;
    std::size_t rank() const;
    bool is_independent(const LabelSet& subset) const;

    /// Bit j stands for ground()[j].
    std::size_t rank_of_mask(std::uint64_t mask) const;
    std::uint64_t mask_of(const LabelSet& subset) const;
    LabelSet labels_of(std::uint64_t mask) const;

private:
    std::vector<std::string> ground_;
    Matrix representation_;
};

constexpr std::size_t max_enumeration_ground = 20;
constexpr std::size_t max_axiom_ground = 12;

/// Maximal independent sets, sorted.
std::vector<LabelSet> bases(const VectorMatroid& m);
/// Minimal dependent sets, sorted.
std::vector<LabelSet> circuits(const VectorMatroid& m);

/// Checks (I1) ∅ independent, (I2) downward closure and (I3) exchange by
/// enumerating all pairs of independent sets. Returns a description of the
/// first failure, or nothing when all three hold.
std::optional<std::string> check_independence_axioms(const VectorMatroid& m);

/// "t8-example-2x5" (columns a..e) or "t8" (columns A,B,C,D,W,X,Y,Z), with the
/// integer matrix reduced mod p. At p = 3 "t8" represents T8; at p != 3 the
/// same matrix represents the non-T8 matroid.
VectorMatroid builtin_matroid(std::string_view name, std::uint64_t p);
std::vector<std::string> builtin_matroid_names();

/// Ground set, rank, bases and circuits, one item per line.
std::string format_matroid_report(const VectorMatroid& m);

std::string format_label_set(const LabelSet& s);

} // namespace lri
