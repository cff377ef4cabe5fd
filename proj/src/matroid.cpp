#include "lri/matroid.hpp"

#include "lri/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace lri {

VectorMatroid::VectorMatroid(std::vector<std::string> ground, Matrix representation)
    : ground_(std::move(ground)), representation_(std::move(representation)) {
    if (ground_.size() != representation_.cols())
        throw Error(Errc::dimension_mismatch, std::to_string(ground_.size()) + " labels for " +
                                                  std::to_string(representation_.cols()) + " columns");
    if (ground_.size() > 64) throw Error(Errc::size_limit, "ground sets are limited to 64 elements");
    auto sorted = ground_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::duplicate_name, "matroid labels must be unique");
}

std::uint64_t VectorMatroid::mask_of(const LabelSet& subset) const {
    std::uint64_t mask = 0;
    for (const auto& label : subset) {
        const auto it = std::find(ground_.begin(), ground_.end(), label);
        if (it == ground_.end()) throw Error(Errc::unknown_name, "unknown matroid element '" + label + "'");
        mask |= std::uint64_t{1} << (it - ground_.begin());
    }
    return mask;
}

LabelSet VectorMatroid::labels_of(std::uint64_t mask) const {
    LabelSet s;
    for (std::size_t j = 0; j < ground_.size(); ++j)
        if (mask >> j & 1) s.insert(ground_[j]);
    return s;
}

std::size_t VectorMatroid::rank_of_mask(std::uint64_t mask) const {
    std::vector<std::size_t> columns;
    for (std::size_t j = 0; j < ground_.size(); ++j)
        if (mask >> j & 1) columns.push_back(j);
    return lri::rank(representation_.select_columns(columns));
}

std::size_t VectorMatroid::rank(const LabelSet& subset) const { return rank_of_mask(mask_of(subset)); }

std::size_t VectorMatroid::rank() const { return lri::rank(representation_); }

bool VectorMatroid::is_independent(const LabelSet& subset) const { return rank(subset) == subset.size(); }

namespace {

void require_enumerable(const VectorMatroid& m) {
    if (m.ground().size() > max_enumeration_ground)
        throw Error(Errc::size_limit, "exhaustive enumeration needs at most " +
                                          std::to_string(max_enumeration_ground) + " elements, ground set has " +
                                          std::to_string(m.ground().size()));
}

// independent[mask] for every subset of the ground set.
std::vector<bool> independence_table(const VectorMatroid& m) {
    require_enumerable(m);
    const std::uint64_t count = std::uint64_t{1} << m.ground().size();
    std::vector<bool> independent(count);
    for (std::uint64_t mask = 0; mask < count; ++mask)
        independent[mask] = m.rank_of_mask(mask) == static_cast<std::size_t>(std::popcount(mask));
    return independent;
}

std::vector<LabelSet> sorted_sets(const VectorMatroid& m, const std::vector<std::uint64_t>& masks) {
    std::vector<LabelSet> sets;
    for (auto mask : masks) sets.push_back(m.labels_of(mask));
    std::sort(sets.begin(), sets.end());
    return sets;
}

} // namespace

std::vector<LabelSet> bases(const VectorMatroid& m) {
    const auto independent = independence_table(m);
    const auto r = static_cast<int>(m.rank());
    std::vector<std::uint64_t> found;
    for (std::uint64_t mask = 0; mask < independent.size(); ++mask)
        if (independent[mask] && std::popcount(mask) == r) found.push_back(mask);
    return sorted_sets(m, found);
}

std::vector<LabelSet> circuits(const VectorMatroid& m) {
    const auto independent = independence_table(m);
    std::vector<std::uint64_t> found;
    for (std::uint64_t mask = 1; mask < independent.size(); ++mask) {
        if (independent[mask]) continue;
        bool minimal = true;
        for (std::uint64_t rest = mask; rest && minimal; rest &= rest - 1)
            minimal = independent[mask & ~(rest & -rest)];
        if (minimal) found.push_back(mask);
    }
    return sorted_sets(m, found);
}

std::optional<std::string> check_independence_axioms(const VectorMatroid& m) {
    if (m.ground().size() > max_axiom_ground)
        throw Error(Errc::size_limit, "axiom checks need at most " + std::to_string(max_axiom_ground) + " elements");
    const auto independent = independence_table(m);
    if (!independent[0]) return "(I1) the empty set is dependent";
    for (std::uint64_t b = 0; b < independent.size(); ++b) {
        if (!independent[b]) continue;
        for (std::uint64_t a = b; a; a = (a - 1) & b)
            if (!independent[a]) return "(I2) " + format_label_set(m.labels_of(a)) + " is a dependent subset of independent " +
                                        format_label_set(m.labels_of(b));
    }
    for (std::uint64_t a = 0; a < independent.size(); ++a) {
        if (!independent[a]) continue;
        for (std::uint64_t b = 0; b < independent.size(); ++b) {
            if (!independent[b] || std::popcount(a) <= std::popcount(b)) continue;
            bool extended = false;
            for (std::uint64_t rest = a & ~b; rest && !extended; rest &= rest - 1)
                extended = independent[b | (rest & -rest)];
            if (!extended)
                return "(I3) no element of " + format_label_set(m.labels_of(a)) + " extends " +
                       format_label_set(m.labels_of(b));
        }
    }
    return std::nullopt;
}

VectorMatroid builtin_matroid(std::string_view name, std::uint64_t p) {
    const PrimeField field(p);
    if (name == "t8-example-2x5") {
        return VectorMatroid({"a", "b", "c", "d", "e"}, Matrix::from_rows(field, {{1, 0, 0, 1, 1}, {0, 1, 0, 0, 1}}));
    }
    if (name == "t8") {
        return VectorMatroid({"A", "B", "C", "D", "W", "X", "Y", "Z"}, Matrix::from_rows(field, {
                                                                           {1, 0, 0, 0, 0, 1, 1, 1},
                                                                           {0, 1, 0, 0, 1, 0, 1, 1},
                                                                           {0, 0, 1, 0, 1, 1, 0, 1},
                                                                           {0, 0, 0, 1, 1, 1, 1, 0},
                                                                       }));
    }
    throw Error(Errc::unknown_name, "unknown matroid '" + std::string(name) + "'");
}

std::vector<std::string> builtin_matroid_names() { return {"t8-example-2x5", "t8"}; }

std::string format_label_set(const LabelSet& s) {
    std::string out = "{";
    for (const auto& label : s) {
        if (out.size() > 1) out += ',';
        out += label;
    }
    return out + "}";
}

std::string format_matroid_report(const VectorMatroid& m) {
    std::ostringstream os;
    os << "field " << m.field().modulus() << '\n';
    os << "ground";
    for (const auto& label : m.ground()) os << ' ' << label;
    os << '\n';
    os << "rank " << m.rank() << '\n';
    const auto bs = bases(m);
    os << "bases " << bs.size() << '\n';
    for (const auto& b : bs) os << "base " << format_label_set(b) << '\n';
    const auto cs = circuits(m);
    os << "circuits " << cs.size() << '\n';
    for (const auto& c : cs) os << "circuit " << format_label_set(c) << '\n';
    return os.str();
}

} // namespace lri
