#include "lri/subspace.hpp"

#include "cursor.hpp"
#include "lri/error.hpp"

#include <algorithm>
#include <sstream>

namespace lri {

namespace {

void require_compatible(const Subspace& a, const Subspace& b) {
    if (a.field() != b.field())
        throw Error(Errc::field_mismatch, "subspaces over GF(" + std::to_string(a.field().modulus()) + ") and GF(" +
                                              std::to_string(b.field().modulus()) + ")");
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(Errc::dimension_mismatch, "subspaces of ambient dimension " + std::to_string(a.ambient_dim()) +
                                                  " and " + std::to_string(b.ambient_dim()));
}

} // namespace

Subspace Subspace::zero(PrimeField field, std::size_t ambient_dim) { return Subspace(Matrix(field, 0, ambient_dim)); }

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
    return Subspace(Matrix::identity(field, ambient_dim));
}

Subspace Subspace::row_space(const Matrix& generators) {
    auto r = rref(generators);
    return Subspace(r.reduced.select_rows(0, r.rank));
}

bool Subspace::contains(std::span<const Residue> vector) const {
    if (vector.size() != ambient_dim())
        throw Error(Errc::dimension_mismatch, "vector of length " + std::to_string(vector.size()) +
                                                  " in ambient dimension " + std::to_string(ambient_dim()));
    // Reduce against the RREF basis: subtract vector[pivot]·row for each pivot.
    const auto& f = field();
    std::vector<Residue> v(vector.begin(), vector.end());
    for (std::size_t r = 0; r < dim(); ++r) {
        const auto row = basis_.row(r);
        const auto pivot = static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](Residue x) { return x != 0; }) - row.begin());
        const auto factor = v[pivot];
        if (factor == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.sub(v[c], f.mul(factor, row[c]));
    }
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    require_compatible(*this, other);
    for (std::size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis().row(r))) return false;
    return true;
}

Subspace span(PrimeField field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    return Subspace::row_space(Matrix::from_rows(field, ambient_dim, vectors));
}

Subspace join(std::span<const Subspace> subspaces) {
    if (subspaces.empty()) throw Error(Errc::dimension_mismatch, "join of an empty sequence");
    Matrix stacked = subspaces.front().basis();
    for (const auto& s : subspaces.subspan(1)) {
        require_compatible(subspaces.front(), s);
        stacked = vstack(stacked, s.basis());
    }
    return Subspace::row_space(stacked);
}

Subspace join(const Subspace& a, const Subspace& b) {
    require_compatible(a, b);
    return Subspace::row_space(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_compatible(a, b);
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.field(), a.ambient_dim());
    // (u, w) with u·Ba + w·Bb = 0 gives u·Ba ∈ A ∩ B, and every element arises this way.
    const auto stacked = vstack(a.basis(), b.basis());
    const auto relations = kernel_basis(stacked.transpose());
    if (relations.rows() == 0) return Subspace::zero(a.field(), a.ambient_dim());
    std::vector<std::size_t> left(a.dim());
    for (std::size_t i = 0; i < left.size(); ++i) left[i] = i;
    return Subspace::row_space(mat_mul(relations.select_columns(left), a.basis()));
}

std::size_t codim(const Subspace& parent, const Subspace& sub) {
    if (!parent.contains(sub)) throw Error(Errc::not_a_subspace, "subspace is not contained in its claimed parent");
    return parent.dim() - sub.dim();
}

Subspace random_subspace(PrimeField field, std::size_t ambient_dim, std::mt19937_64& rng) {
    return random_subspace(field, ambient_dim, ambient_dim, rng);
}

Subspace random_subspace(PrimeField field, std::size_t ambient_dim, std::size_t max_dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim_dist(0, std::min(max_dim, ambient_dim));
    std::uniform_int_distribution<std::uint64_t> entry(0, field.modulus() - 1);
    const auto k = dim_dist(rng);
    // Generators are the k columns of a d×k matrix, i.e. rows of its transpose.
    Matrix generators(field, k, ambient_dim);
    for (std::size_t c = 0; c < ambient_dim; ++c)
        for (std::size_t j = 0; j < k; ++j) generators.set_residue(j, c, entry(rng));
    return Subspace::row_space(generators);
}

void SubspaceAssignment::bind(std::string name, Subspace subspace) {
    if (subspace.field() != field_)
        throw Error(Errc::field_mismatch, "binding " + name + " over GF(" + std::to_string(subspace.field().modulus()) +
                                              ") into a GF(" + std::to_string(field_.modulus()) + ") assignment");
    if (subspace.ambient_dim() != ambient_dim_)
        throw Error(Errc::dimension_mismatch, "binding " + name + " of ambient dimension " +
                                                  std::to_string(subspace.ambient_dim()) + " into ambient dimension " +
                                                  std::to_string(ambient_dim_));
    for (auto& [n, s] : bindings_)
        if (n == name) {
            s = std::move(subspace);
            return;
        }
    bindings_.emplace_back(std::move(name), std::move(subspace));
}

const Subspace* SubspaceAssignment::find(std::string_view name) const noexcept {
    for (const auto& [n, s] : bindings_)
        if (n == name) return &s;
    return nullptr;
}

const Subspace& SubspaceAssignment::at(std::string_view name) const {
    if (const auto* s = find(name)) return *s;
    throw Error(Errc::unbound_variable, "variable " + std::string(name) + " is not bound");
}

std::int64_t joint_rank(const SubspaceAssignment& ctx, const VarSet& vars) {
    Matrix stacked(ctx.field(), 0, ctx.ambient_dim());
    for (const auto& v : vars) stacked = vstack(stacked, ctx.at(v).basis());
    return static_cast<std::int64_t>(rank(stacked));
}

namespace {

VarSet unite(const VarSet& a, const VarSet& b) {
    VarSet u = a;
    u.insert(b.begin(), b.end());
    return u;
}

} // namespace

std::int64_t cond_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t) {
    return joint_rank(ctx, unite(s, t)) - joint_rank(ctx, t);
}

std::int64_t mutual_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t) {
    return joint_rank(ctx, s) + joint_rank(ctx, t) - joint_rank(ctx, unite(s, t));
}

std::int64_t cond_mutual_rank(const SubspaceAssignment& ctx, const VarSet& s, const VarSet& t, const VarSet& given) {
    return joint_rank(ctx, unite(s, given)) + joint_rank(ctx, unite(t, given)) - joint_rank(ctx, given) -
           joint_rank(ctx, unite(unite(s, t), given));
}

SubspaceAssignment parse_assignment(std::string_view text) {
    detail::Cursor in(text);
    in.skip_space();
    in.expect_keyword("field");
    const auto line = in.line();
    const auto col = in.column();
    const auto p = in.unsigned_integer();
    if (!is_prime(p)) throw ParseError(line, col, "field modulus " + std::to_string(p) + " is not prime");
    const PrimeField field(p);
    in.expect_line_end();
    in.skip_space();
    in.expect_keyword("ambient");
    const auto d = static_cast<std::size_t>(in.unsigned_integer());
    in.expect_line_end();

    SubspaceAssignment ctx(field, d);
    for (in.skip_space(); !in.at_end(); in.skip_space()) {
        const auto name_line = in.line();
        const auto name_col = in.column();
        auto name = in.identifier();
        if (ctx.contains(name)) throw ParseError(name_line, name_col, "variable " + name + " bound twice");
        in.expect('=');
        in.expect_keyword("span");
        in.expect('{');
        std::vector<Vector> vectors;
        if (!in.consume('}')) {
            do {
                in.skip_space();
                const auto vline = in.line();
                const auto vcol = in.column();
                in.expect('(');
                Vector v;
                if (!in.consume(')')) {
                    do v.push_back(in.integer());
                    while (in.consume(','));
                    in.expect(')');
                }
                if (v.size() != d)
                    throw ParseError(vline, vcol, "vector of length " + std::to_string(v.size()) +
                                                      " in ambient dimension " + std::to_string(d));
                vectors.push_back(std::move(v));
                in.skip_space();
            } while (in.consume(';'));
            in.skip_space();
            in.expect('}');
        }
        in.expect_line_end();
        ctx.bind(std::move(name), span(field, d, vectors));
    }
    return ctx;
}

std::string format_assignment(const SubspaceAssignment& ctx) {
    std::ostringstream os;
    os << "field " << ctx.field().modulus() << '\n' << "ambient " << ctx.ambient_dim() << '\n';
    for (const auto& [name, s] : ctx.bindings()) {
        os << name << " = span{";
        for (std::size_t r = 0; r < s.dim(); ++r) {
            if (r) os << "; ";
            os << '(';
            for (std::size_t c = 0; c < s.ambient_dim(); ++c) os << (c ? "," : "") << s.basis()(r, c);
            os << ')';
        }
        os << "}\n";
    }
    return os.str();
}

} // namespace lri
