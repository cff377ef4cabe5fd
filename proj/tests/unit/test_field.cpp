#include "lri/error.hpp"
#include "lri/field.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lri;

namespace {

Matrix random_matrix(PrimeField f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> entry(0, static_cast<std::int64_t>(f.modulus()) - 1);
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, entry(rng));
    return m;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    const PrimeField f3(3);
    CHECK(f3.reduce(-1) == 2);
    CHECK(f3.reduce(7) == 1);
    CHECK(f3.inverse(2) == 2);
    CHECK(f3.from_fraction(1, 2) == 2);
    CHECK(f3.balanced(2) == -1);

    const PrimeField f5(5);
    CHECK(f5.from_fraction(3, 2) == 4);
    CHECK(f5.from_fraction(-3, 2) == 1);
    for (Residue a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inverse(a)) == 1);
}

TEST_CASE("field errors") {
    CHECK_THROWS_AS(PrimeField(4), Error);
    CHECK_THROWS_AS(PrimeField(1), Error);
    try {
        PrimeField(3).inverse(0);
        FAIL("expected zero_inverse");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_inverse);
    }
    try {
        PrimeField(3).from_fraction(1, 3);
        FAIL("expected missing_inverse");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::missing_inverse);
    }
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(65535));
}

TEST_CASE("rref of a small matrix") {
    const PrimeField f(3);
    const auto m = Matrix::from_rows(f, {{0, 2, 1}, {1, 1, 0}, {1, 0, 1}});
    const auto r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(r.reduced == Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 2}, {0, 0, 0}}));
}

TEST_CASE("rank of the T8 representation depends on the characteristic") {
    const std::vector<std::vector<std::int64_t>> rows = {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}};
    CHECK(rank(Matrix::from_rows(PrimeField(3), 4, rows)) == 3);
    CHECK(rank(Matrix::from_rows(PrimeField(2), 4, rows)) == 4);
    CHECK(rank(Matrix::from_rows(PrimeField(5), 4, rows)) == 4);
}

TEST_CASE("kernel basis matches exhaustive enumeration") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 40; ++trial) {
            const auto m = random_matrix(f, 1 + trial % 3, 1 + trial % 4, rng);
            const auto k = kernel_basis(m);
            CHECK(oracle::span_set(static_cast<std::int64_t>(p), m.cols(), oracle::rows_of(k)) == oracle::kernel_set(m));
            CHECK(k.rows() + rank(m) == m.cols());
        }
    }
}

TEST_CASE("rref properties on random matrices") {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {2, 3, 7}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 60; ++trial) {
            const auto m = random_matrix(f, 1 + trial % 5, 1 + (trial / 5) % 5, rng);
            const auto once = rref(m);
            CHECK(rref(once.reduced).reduced == once.reduced);
            CHECK(rank(m) == rank(m.transpose()));
            CHECK(static_cast<std::int64_t>(rank(m)) ==
                  oracle::rank_of(static_cast<std::int64_t>(p), m.cols(), oracle::rows_of(m)));
        }
    }
}

TEST_CASE("matrix products and stacking") {
    const PrimeField f(5);
    const auto a = Matrix::from_rows(f, {{1, 2}, {3, 4}});
    const auto i = Matrix::identity(f, 2);
    CHECK(mat_mul(a, i) == a);
    CHECK(mat_mul(a, a) == Matrix::from_rows(f, {{7, 10}, {15, 22}}));
    CHECK(mat_sub(a, a).is_zero());
    CHECK(mat_add(a, a) == Matrix::from_rows(f, {{2, 4}, {6, 8}}));
    CHECK(vstack(a, i).rows() == 4);
    CHECK(hstack(a, i).cols() == 4);
    CHECK_THROWS_AS(mat_mul(a, Matrix(f, 3, 1)), Error);
    CHECK_THROWS_AS(mat_add(a, Matrix(PrimeField(3), 2, 2)), Error);
}
