#include "lri/search.hpp"

#include "lri/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace lri {

unsigned default_worker_count() {
    if (const char* env = std::getenv("LRI_WORKERS")) {
        char* end = nullptr;
        const auto n = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::size_t max_exhaustive_variables = 8;
constexpr std::size_t max_exhaustive_dim = 8;
constexpr auto saturated = std::numeric_limits<std::uint64_t>::max();
constexpr auto no_task = std::numeric_limits<std::size_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > saturated - b ? saturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > saturated / b ? saturated : a * b;
}

std::uint64_t points_in(std::uint64_t p, std::size_t r) {
    // (p^r - 1) / (p - 1) projective points in GF(p)^r.
    std::uint64_t total = 0;
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total = sat_add(total, power);
        power = sat_mul(power, p);
    }
    return total;
}

// leaves[i][r]: number of leaves below a node at variable i with span dimension r.
std::vector<std::vector<std::uint64_t>> leaf_table(std::uint64_t p, std::size_t d, std::size_t n) {
    std::vector<std::vector<std::uint64_t>> leaves(n + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (std::size_t r = 0; r <= d; ++r) leaves[n][r] = 1;
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t r = 0; r <= d; ++r) {
            auto t = sat_mul(1 + points_in(p, r), leaves[i + 1][r]);
            if (r < d) t = sat_add(t, leaves[i + 1][r + 1]);
            leaves[i][r] = t;
        }
    return leaves;
}

/// The expression as integer coefficients over variable-index masks; the true
/// residual is the integer total divided by `scale`.
struct CompiledExpression {
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
    std::int64_t scale = 1;
};

CompiledExpression compile(const RankExpression& expr) {
    if (expr.variables.size() > 32) throw Error(Errc::budget, "search supports at most 32 variables");
    CompiledExpression out;
    const auto form = joint_form(expr);
    std::int64_t lcm = 1;
    for (const auto& [support, c] : form) lcm = std::lcm(lcm, c.denominator());
    out.scale = lcm;
    for (const auto& [support, c] : form) {
        std::uint32_t mask = 0;
        for (const auto& v : support) {
            const auto it = std::find(expr.variables.begin(), expr.variables.end(), v);
            if (it == expr.variables.end())
                throw Error(Errc::unknown_variable, "variable " + v + " is not declared by the expression");
            mask |= std::uint32_t{1} << (it - expr.variables.begin());
        }
        out.terms.emplace_back(mask, c.numerator() * (lcm / c.denominator()));
    }
    return out;
}

/// Runs task(i, cancelled) for i in [0, count) on a pool and returns the lowest
/// i for which it succeeded. `cancelled()` turns true once a lower index has
/// already succeeded, so long tasks can stop early.
template <class Task>
std::optional<std::size_t> first_success(std::size_t count, unsigned workers, Task&& task) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{no_task};
    auto run = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= count || i > best.load()) return;
            auto cancelled = [&] { return best.load(std::memory_order_relaxed) < i; };
            if (task(i, cancelled)) {
                auto current = best.load();
                while (i < current && !best.compare_exchange_weak(current, i)) {
                }
            }
        }
    };
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    }
    const auto b = best.load();
    if (b == no_task) return std::nullopt;
    return b;
}

using Line = std::array<std::uint32_t, max_exhaustive_dim>;

class OneDimSweep {
public:
    OneDimSweep(const RankExpression& expr, PrimeField field, std::size_t d)
        : compiled_(compile(expr)), p_(static_cast<std::uint32_t>(field.modulus())), d_(d),
          n_(expr.variables.size()), leaves_(leaf_table(field.modulus(), d, expr.variables.size())) {
        points_.resize(d + 1);
        for (std::size_t r = 1; r <= d; ++r) {
            Line v{};
            enumerate_points(r, 0, v, false);
        }
        inv_.resize(p_);
        for (std::uint32_t a = 1; a < p_; ++a) inv_[a] = static_cast<std::uint32_t>(field.inverse(a));
    }

    std::uint64_t total() const noexcept { return leaves_[0][0]; }
    std::size_t variables() const noexcept { return n_; }
    std::int64_t scale() const noexcept { return compiled_.scale; }

    struct Node {
        std::vector<Line> chosen;
        std::size_t span_dim = 0;
        std::uint64_t first_leaf = 0;
    };

    struct Hit {
        std::uint64_t index;
        std::int64_t numerator;
        std::vector<Line> lines;
    };

    /// Nodes at `depth` in enumeration order.
    std::vector<Node> frontier(std::size_t depth) const {
        std::vector<Node> nodes{Node{}};
        for (std::size_t level = 0; level < depth; ++level) {
            std::vector<Node> next;
            for (const auto& node : nodes) {
                auto offset = node.first_leaf;
                for_each_choice(node.span_dim, [&](const Line& line, std::size_t new_dim) {
                    Node child{node.chosen, new_dim, offset};
                    child.chosen.push_back(line);
                    offset += leaves_[level + 1][new_dim];
                    next.push_back(std::move(child));
                    return true;
                });
            }
            nodes = std::move(next);
        }
        return nodes;
    }

    /// First violating leaf below `node` in enumeration order.
    template <class Cancelled>
    std::optional<Hit> first_violation(const Node& node, Cancelled&& cancelled) const {
        std::vector<Line> chosen = node.chosen;
        chosen.reserve(n_);
        State state{node.first_leaf, 0, std::nullopt, false};
        descend(chosen, node.span_dim, state, cancelled);
        if (state.stopped) return std::nullopt;
        return state.hit;
    }

private:
    struct State {
        std::uint64_t index;
        std::uint64_t visited;
        std::optional<Hit> hit;
        bool stopped;
    };

    void enumerate_points(std::size_t r, std::size_t pos, Line& v, bool leading_set) {
        if (pos == r) {
            if (leading_set) points_[r].push_back(v);
            return;
        }
        if (!leading_set) {
            v[pos] = 0;
            enumerate_points(r, pos + 1, v, false);
            v[pos] = 1;
            enumerate_points(r, pos + 1, v, true);
            v[pos] = 0;
            return;
        }
        for (std::uint32_t a = 0; a < p_; ++a) {
            v[pos] = a;
            enumerate_points(r, pos + 1, v, true);
        }
        v[pos] = 0;
    }

    // Choices for the next variable when the lines so far span e1..er:
    // zero, a point of that span, or e_{r+1}. `visit` returns false to stop.
    template <class F>
    void for_each_choice(std::size_t r, F&& visit) const {
        if (!visit(Line{}, r)) return;
        for (const auto& point : points_[r])
            if (!visit(point, r)) return;
        if (r < d_) {
            Line e{};
            e[r] = 1;
            visit(e, r + 1);
        }
    }

    template <class Cancelled>
    void descend(std::vector<Line>& chosen, std::size_t r, State& state, Cancelled& cancelled) const {
        if (chosen.size() == n_) {
            if ((++state.visited & 0x3FFF) == 0 && cancelled()) {
                state.stopped = true;
                return;
            }
            const auto value = residual(chosen);
            if (value < 0) state.hit = Hit{state.index, value, chosen};
            ++state.index;
            return;
        }
        for_each_choice(r, [&](const Line& line, std::size_t new_dim) {
            chosen.push_back(line);
            descend(chosen, new_dim, state, cancelled);
            chosen.pop_back();
            return !state.hit && !state.stopped;
        });
    }

    std::int64_t residual(const std::vector<Line>& lines) const {
        std::int64_t total = 0;
        for (const auto& [mask, c] : compiled_.terms) total += c * rank_of(lines, mask);
        return total;
    }

    std::int64_t rank_of(const std::vector<Line>& lines, std::uint32_t mask) const {
        std::array<Line, max_exhaustive_variables> basis;
        std::array<std::size_t, max_exhaustive_variables> pivot{};
        std::size_t rank = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(mask >> i & 1)) continue;
            Line v = lines[i];
            for (std::size_t b = 0; b < rank; ++b) {
                const auto factor = v[pivot[b]];
                if (factor == 0) continue;
                for (std::size_t c = 0; c < d_; ++c) v[c] = (v[c] + (p_ - factor) * basis[b][c]) % p_;
            }
            std::size_t lead = 0;
            while (lead < d_ && v[lead] == 0) ++lead;
            if (lead == d_) continue;
            const auto inv = inv_[v[lead]];
            for (std::size_t c = 0; c < d_; ++c) v[c] = v[c] * inv % p_;
            basis[rank] = v;
            pivot[rank] = lead;
            ++rank;
        }
        return static_cast<std::int64_t>(rank);
    }

    CompiledExpression compiled_;
    std::uint32_t p_;
    std::size_t d_;
    std::size_t n_;
    std::vector<std::vector<std::uint64_t>> leaves_;
    std::vector<std::vector<Line>> points_;
    std::vector<std::uint32_t> inv_;
};

SubspaceAssignment assignment_from_lines(const RankExpression& expr, PrimeField field, std::size_t d,
                                         const std::vector<Line>& lines) {
    SubspaceAssignment ctx(field, d);
    for (std::size_t i = 0; i < expr.variables.size(); ++i) {
        Vector v(lines[i].begin(), lines[i].begin() + static_cast<std::ptrdiff_t>(d));
        ctx.bind(expr.variables[i], span(field, d, {v}));
    }
    return ctx;
}

SearchResult exhaustive(const RankExpression& expr, PrimeField field, std::size_t d, const ExhaustiveOneDim& strategy,
                        unsigned workers) {
    if (expr.variables.size() > max_exhaustive_variables)
        throw Error(Errc::budget, "exhaustive-1dim supports at most " + std::to_string(max_exhaustive_variables) +
                                      " variables, expression has " + std::to_string(expr.variables.size()));
    if (d > max_exhaustive_dim)
        throw Error(Errc::budget, "exhaustive-1dim supports ambient dimension at most " +
                                      std::to_string(max_exhaustive_dim));
    if (field.modulus() > 65521) throw Error(Errc::budget, "exhaustive-1dim supports primes below 2^16");
    const auto leaves = exhaustive_leaf_count(field.modulus(), d, expr.variables.size());
    if (leaves > strategy.max_leaves)
        throw Error(Errc::budget, "exhaustive-1dim would visit " + std::to_string(leaves) +
                                      " assignments, limit is " + std::to_string(strategy.max_leaves));

    const OneDimSweep sweep(expr, field, d);
    SearchResult result;
    result.space = sweep.total();

    // Split at the shallowest depth giving enough tasks to balance the pool.
    std::size_t depth = 0;
    auto nodes = sweep.frontier(0);
    while (depth < sweep.variables() && nodes.size() < 64 * static_cast<std::size_t>(workers))
        nodes = sweep.frontier(++depth);

    std::vector<std::optional<OneDimSweep::Hit>> hits(nodes.size());
    const auto winner = first_success(nodes.size(), workers, [&](std::size_t i, auto& cancelled) {
        hits[i] = sweep.first_violation(nodes[i], cancelled);
        return hits[i].has_value();
    });
    if (!winner) return result;

    const auto& hit = *hits[*winner];
    result.index = hit.index;
    result.residual = Rational(hit.numerator, sweep.scale());
    result.violation = assignment_from_lines(expr, field, d, hit.lines);
    return result;
}

SubspaceAssignment random_assignment(const RankExpression& expr, PrimeField field, std::size_t d, std::size_t max_dim,
                                     std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    SubspaceAssignment ctx(field, d);
    for (const auto& v : expr.variables) ctx.bind(v, random_subspace(field, d, max_dim, rng));
    return ctx;
}

SearchResult random_trials(const RankExpression& expr, PrimeField field, std::size_t d, const RandomTrials& strategy,
                           unsigned workers) {
    const auto max_dim = strategy.max_dim.value_or(d);
    if (max_dim > d)
        throw Error(Errc::invalid_strategy, "max_dim " + std::to_string(max_dim) + " exceeds ambient dimension " +
                                                std::to_string(d));
    const auto form = joint_form(expr);
    for (const auto& [support, c] : form)
        for (const auto& v : support)
            if (std::find(expr.variables.begin(), expr.variables.end(), v) == expr.variables.end())
                throw Error(Errc::unknown_variable, "variable " + v + " is not declared by the expression");

    SearchResult result;
    result.space = strategy.trials;
    constexpr std::uint64_t chunk = 64;
    const auto chunks = static_cast<std::size_t>((strategy.trials + chunk - 1) / chunk);
    std::vector<std::optional<std::pair<std::uint64_t, Rational>>> hits(chunks);
    const auto winner = first_success(chunks, workers, [&](std::size_t i, auto&) {
        const auto end = std::min<std::uint64_t>(strategy.trials, (i + 1) * chunk);
        for (std::uint64_t t = i * chunk; t < end; ++t) {
            const auto ctx = random_assignment(expr, field, d, max_dim, strategy.seed, t);
            Rational total = 0;
            for (const auto& [support, c] : form) total += c * joint_rank(ctx, support);
            if (total < 0) {
                hits[i].emplace(t, total);
                return true;
            }
        }
        return false;
    });
    if (!winner) return result;
    const auto& [trial, residual] = *hits[*winner];
    result.index = trial;
    result.residual = residual;
    result.violation = random_assignment(expr, field, d, max_dim, strategy.seed, trial);
    return result;
}

} // namespace

std::uint64_t exhaustive_leaf_count(std::uint64_t p, std::size_t ambient_dim, std::size_t variables) {
    return leaf_table(p, ambient_dim, variables)[0][0];
}

SearchResult search_violation(const RankExpression& expr, PrimeField field, std::size_t ambient_dim,
                              const SearchStrategy& strategy, SearchOptions options) {
    const auto workers = options.workers == 0 ? default_worker_count() : options.workers;
    if (const auto* e = std::get_if<ExhaustiveOneDim>(&strategy)) return exhaustive(expr, field, ambient_dim, *e, workers);
    return random_trials(expr, field, ambient_dim, std::get<RandomTrials>(strategy), workers);
}

} // namespace lri
