#include "lri/field.hpp"

#include "lri/error.hpp"

#include <algorithm>
#include <ostream>

namespace lri {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::not_prime: return "not-prime";
    case Errc::zero_inverse: return "zero-inverse";
    case Errc::missing_inverse: return "missing-inverse";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::field_mismatch: return "field-mismatch";
    case Errc::not_a_subspace: return "not-a-subspace";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::unknown_variable: return "unknown-variable";
    case Errc::unknown_name: return "unknown-name";
    case Errc::syntax: return "syntax";
    case Errc::size_limit: return "size-limit";
    case Errc::budget: return "budget";
    case Errc::invalid_strategy: return "invalid-strategy";
    case Errc::unjustified_conditional: return "unjustified-conditional";
    case Errc::negative_edge_coefficient: return "negative-edge-coefficient";
    case Errc::nonpositive_denominator: return "nonpositive-denominator";
    case Errc::degenerate_demand: return "degenerate-demand";
    case Errc::invalid_network: return "invalid-network";
    case Errc::duplicate_name: return "duplicate-name";
    case Errc::invalid_distribution: return "invalid-distribution";
    }
    return "unknown";
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
    if (modulus >= (std::uint64_t{1} << 32) || !is_prime(modulus))
        throw Error(Errc::not_prime, "field modulus " + std::to_string(modulus) + " is not a word-sized prime");
}

Residue PrimeField::reduce(std::int64_t value) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    auto r = value % p;
    if (r < 0) r += p;
    return static_cast<Residue>(r);
}

Residue PrimeField::inverse(Residue a) const {
    a %= p_;
    if (a == 0)
        throw Error(Errc::zero_inverse, "0 has no inverse in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2).
    Residue result = 1;
    Residue base = a;
    for (auto e = p_ - 2; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
    }
    return result;
}

Residue PrimeField::from_fraction(std::int64_t num, std::int64_t den) const {
    const auto d = reduce(den);
    if (d == 0)
        throw Error(Errc::missing_inverse, std::to_string(den) + "^-1 does not exist in GF(" + std::to_string(p_) + ")");
    return mul(reduce(num), inverse(d));
}

std::int64_t PrimeField::balanced(Residue a) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    const auto v = static_cast<std::int64_t>(a % p_);
    return v > p / 2 ? v - p : v;
}

Residue field_inverse(const PrimeField& field, Residue a) { return field.inverse(a); }

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries)
    : Matrix(field, rows, cols) {
    if (entries.size() != rows * cols)
        throw Error(Errc::dimension_mismatch, "matrix literal has " + std::to_string(entries.size()) +
                                                  " entries, expected " + std::to_string(rows * cols));
    std::transform(entries.begin(), entries.end(), data_.begin(), [&](auto v) { return field_.reduce(v); });
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(Errc::dimension_mismatch, "row " + std::to_string(r) + " has length " +
                                                      std::to_string(rows[r].size()) + ", expected " +
                                                      std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

Matrix Matrix::from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (auto r : rows) v.emplace_back(r);
    return from_rows(field, v.empty() ? 0 : v.front().size(), v);
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
    Matrix s(field_, rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j] >= cols_) throw Error(Errc::dimension_mismatch, "column index out of range");
            s.data_[r * columns.size() + j] = data_[r * cols_ + columns[j]];
        }
    return s;
}

Matrix Matrix::select_rows(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw Error(Errc::dimension_mismatch, "row range out of bounds");
    Matrix s(field_, count, cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, s.data_.begin());
    return s;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << m(r, c);
        }
    }
    return os << ']';
}

RrefResult rref(const Matrix& m) {
    const auto& f = m.field();
    const auto rows = m.rows();
    const auto cols = m.cols();
    std::vector<Residue> a(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t r, std::size_t c) -> Residue& { return a[r * cols + c]; };

    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t pivot = lead;
        while (pivot < rows && at(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(lead, j));
        const auto inv = f.inverse(at(lead, c));
        for (std::size_t j = c; j < cols; ++j) at(lead, j) = f.mul(at(lead, j), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || at(r, c) == 0) continue;
            const auto factor = at(r, c);
            for (std::size_t j = c; j < cols; ++j) at(r, j) = f.sub(at(r, j), f.mul(factor, at(lead, j)));
        }
        pivots.push_back(c);
        ++lead;
    }

    Matrix reduced(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) reduced.set_residue(r, c, at(r, c));
    return {std::move(reduced), pivots.size(), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
    const auto& f = m.field();
    auto [reduced, rk, pivots] = rref(m);
    const auto cols = m.cols();

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    Matrix basis(f, cols - rk, cols);
    std::size_t out = 0;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        basis.set_residue(out, free, 1);
        for (std::size_t i = 0; i < rk; ++i) basis.set_residue(out, pivots[i], f.neg(reduced(i, free)));
        ++out;
    }
    return rref(basis).reduced;
}

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field())
        throw Error(Errc::field_mismatch, "GF(" + std::to_string(a.field().modulus()) + ") vs GF(" +
                                              std::to_string(b.field().modulus()) + ")");
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

} // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw Error(Errc::dimension_mismatch, "cannot multiply " + shape(a) + " by " + shape(b));
    const auto& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Residue acc = 0;
            for (std::size_t t = 0; t < a.cols(); ++t) acc = f.add(acc, f.mul(a(i, t), b(t, j)));
            c.set_residue(i, j, acc);
        }
    return c;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::dimension_mismatch, "cannot add " + shape(a) + " and " + shape(b));
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set_residue(i, j, a.field().add(a(i, j), b(i, j)));
    return c;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::dimension_mismatch, "cannot subtract " + shape(b) + " from " + shape(a));
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set_residue(i, j, a.field().sub(a(i, j), b(i, j)));
    return c;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    require_same_field(top, bottom);
    if (top.cols() != bottom.cols())
        throw Error(Errc::dimension_mismatch, "cannot stack " + shape(top) + " over " + shape(bottom));
    Matrix s(top.field(), top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) s.set_residue(r, c, top(r, c));
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) s.set_residue(top.rows() + r, c, bottom(r, c));
    return s;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
    require_same_field(left, right);
    if (left.rows() != right.rows())
        throw Error(Errc::dimension_mismatch, "cannot join " + shape(left) + " beside " + shape(right));
    Matrix s(left.field(), left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c = 0; c < left.cols(); ++c) s.set_residue(r, c, left(r, c));
        for (std::size_t c = 0; c < right.cols(); ++c) s.set_residue(r, left.cols() + c, right(r, c));
    }
    return s;
}

} // namespace lri
