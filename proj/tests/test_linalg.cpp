#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tracealg/linalg.hpp"

using namespace tracealg;

TEST_CASE("rref of the 3x3 incidence system", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    auto rr = rref(m);
    CHECK(rr.pivot_columns == std::vector<int>{0, 1, 2});
    CHECK(rank(m) == 3);
}

TEST_CASE("rref of the zero matrix", "[linalg]") {
    RationalMatrix z(3, 4);
    auto rr = rref(z);
    CHECK(rr.pivot_columns.empty());
    CHECK(rr.matrix == z);
    CHECK(rank(z) == 0);
}

TEST_CASE("rref collapses proportional rows", "[linalg]") {
    auto m = RationalMatrix::from_rows({{2, 4}, {1, 2}});
    auto rr = rref(m);
    CHECK(rr.pivot_columns == std::vector<int>{0});
    CHECK(rr.matrix == RationalMatrix::from_rows({{1, 2}, {0, 0}}));
}

TEST_CASE("kernel of a single equation", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 1}});
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Rational>{ratio(-1), ratio(1)});
}

TEST_CASE("kernel of the identity is empty", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(kernel_basis(m).empty());
}

TEST_CASE("solve reproduces the half-half-minus-half solution", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    auto x = solve(m, {ratio(1), ratio(0), ratio(0)});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<Rational>{ratio(1, 2), ratio(1, 2), ratio(-1, 2)});
}

TEST_CASE("solve on the identity returns the right-hand side", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 0}, {0, 1}});
    std::vector<Rational> b{ratio(7, 3), ratio(-2)};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);
}

TEST_CASE("solve detects inconsistent systems", "[linalg]") {
    auto m = RationalMatrix::from_rows({{1, 0}, {1, 0}});
    CHECK_FALSE(solve(m, {ratio(1), ratio(2)}).has_value());
}

TEST_CASE("rank plus kernel dimension equals column count", "[linalg]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 7);
        int cols = 1 + static_cast<int>(rng() % 7);
        auto m = testutil::random_matrix(rng, rows, cols);
        CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == cols);
    }
}

TEST_CASE("solve returns an actual solution on consistent systems", "[linalg]") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        auto m = testutil::random_matrix(rng, rows, cols);
        std::vector<Rational> v;
        for (int c = 0; c < cols; ++c) v.push_back(testutil::random_rational(rng));
        auto b = m.apply(v);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
}

TEST_CASE("rref is idempotent", "[linalg]") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        auto m = testutil::random_matrix(rng, rows, cols);
        auto once = rref(m);
        auto twice = rref(once.matrix);
        CHECK(once.matrix == twice.matrix);
        CHECK(once.pivot_columns == twice.pivot_columns);
    }
}

TEST_CASE("elimination results are identical across thread counts", "[linalg]") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 8);
        int cols = 1 + static_cast<int>(rng() % 8);
        auto m = testutil::random_matrix(rng, rows, cols);
        auto serial = rref(m, 1);
        auto parallel = rref(m, 4);
        CHECK(serial.matrix == parallel.matrix);
        CHECK(serial.pivot_columns == parallel.pivot_columns);
        CHECK(kernel_basis(m, 1) == kernel_basis(m, 4));
    }
}

TEST_CASE("column span solver matches rref-derived kernels", "[linalg]") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 7);
        int cols = 1 + static_cast<int>(rng() % 7);
        auto m = testutil::random_matrix(rng, rows, cols);
        auto expected = kernel_basis(m);

        ColumnSpanSolver solver;
        std::vector<std::vector<Rational>> got;
        for (int c = 0; c < cols; ++c) {
            SparseVec col;
            for (int r = 0; r < rows; ++r) {
                Rational v = m.at(r, c);
                if (!is_zero(v)) col.emplace_back(r, v);
            }
            auto outcome = solver.add_column(c, std::move(col));
            if (!outcome.independent) {
                std::vector<Rational> v(cols, Rational(0));
                v[c] = 1;
                for (const auto& [pid, coeff] : outcome.combination) v[pid] = -coeff;
                got.push_back(std::move(v));
            }
        }
        CHECK(solver.rank() == rank(m));
        CHECK(got == expected);
    }
}
