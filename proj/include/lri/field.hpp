#pragma once

// Exact arithmetic over prime fields GF(p) and dense matrices over them.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace lri {

using Residue = std::uint64_t;

/// The scalar field GF(p). The modulus must be a prime below 2^32 so that a
/// product of two residues fits in 64 bits.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return p_; }
    std::uint64_t characteristic() const noexcept { return p_; }

    Residue reduce(std::int64_t value) const noexcept;
    Residue add(Residue a, Residue b) const noexcept { return (a + b) % p_; }
    Residue sub(Residue a, Residue b) const noexcept { return (a + p_ - b) % p_; }
    Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }

    /// Multiplicative inverse; throws Errc::zero_inverse for a ≡ 0.
    Residue inverse(Residue a) const;

    /// num · den⁻¹; throws Errc::missing_inverse when den ≡ 0 (mod p).
    Residue from_fraction(std::int64_t num, std::int64_t den) const;

    /// The residue as a signed integer in (-p/2, p/2], for printing.
    std::int64_t balanced(Residue a) const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols);
    Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_rows(PrimeField field, std::size_t cols,
                            const std::vector<std::vector<std::int64_t>>& rows);
    static Matrix from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t value) noexcept { data_[r * cols_ + c] = field_.reduce(value); }
    void set_residue(std::size_t r, std::size_t c, Residue value) noexcept { data_[r * cols_ + c] = value % field_.modulus(); }

    std::span<const Residue> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> entries() const noexcept { return data_; }

    bool is_zero() const noexcept;
    Matrix transpose() const;
    Matrix select_columns(std::span<const std::size_t> columns) const;
    Matrix select_rows(std::size_t first, std::size_t count) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

struct RrefResult {
    Matrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form with leftmost-nonzero pivoting. Zero rows are kept
/// at the bottom so that the shape is unchanged.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Rows span the right null space {x : m·x = 0}, in reduced row echelon form.
Matrix kernel_basis(const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);

/// [top; bottom]
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// [left | right]
Matrix hstack(const Matrix& left, const Matrix& right);

Residue field_inverse(const PrimeField& field, Residue a);

} // namespace lri
