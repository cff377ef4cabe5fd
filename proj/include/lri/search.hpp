#pragma once

#include "lri/expression.hpp"
#include "lri/subspace.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace lri {

/// Every variable is the zero subspace or a line of GF(p)^d. Assignments are
/// enumerated up to the action of GL(d, p), which preserves every rank: a
/// variable is either zero, a projective point inside the span of the lines
/// chosen so far, or the next unused standard basis vector.
struct ExhaustiveOneDim {
    /// Refuse to start when the reduced search space has more leaves than this.
    std::uint64_t max_leaves = 2'000'000'000;
};

/// Each trial binds every variable independently via random_subspace, with
/// the drawn dimension capped at max_dim (the ambient dimension when unset).
struct RandomTrials {
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::optional<std::size_t> max_dim;
};

using SearchStrategy = std::variant<ExhaustiveOneDim, RandomTrials>;

struct SearchOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

struct SearchResult {
    std::optional<SubspaceAssignment> violation;
    Rational residual;
    /// Enumeration index (exhaustive) or trial index (random) of the reported
    /// violation; the lowest such index, independent of worker count.
    std::uint64_t index = 0;
    /// Size of the search space: reduced leaves or trials.
    std::uint64_t space = 0;
};

/// Number of leaves the exhaustive strategy visits for n variables in GF(p)^d.
std::uint64_t exhaustive_leaf_count(std::uint64_t p, std::size_t ambient_dim, std::size_t variables);

SearchResult search_violation(const RankExpression& expr, PrimeField field, std::size_t ambient_dim,
                              const SearchStrategy& strategy, SearchOptions options = {});

/// Reads LRI_WORKERS, falling back to the available parallelism.
unsigned default_worker_count();

} // namespace lri
