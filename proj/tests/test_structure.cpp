#include "doctest.h"

#include "coopinf/structure.hpp"
#include "test_util.hpp"

using namespace coopinf;

TEST_CASE("positive diagonal existence") {
    CHECK(has_positive_diagonal(Matrix::identity(3)));
    CHECK_FALSE(has_positive_diagonal(Matrix{{1, 1}, {0, 0}}));
    CHECK_FALSE(has_positive_diagonal(Matrix{{0, 1}, {0, 1}}));
    CHECK_THROWS_AS(has_positive_diagonal(Matrix(2, 3, 1.0)), DimensionError);
}

TEST_CASE("positive diagonal witness is a valid matching") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix m = testutil::random_binary_matrix(rng, 5, 0.4);
        const auto sigma = find_positive_diagonal(m);
        CHECK(sigma.has_value() == has_positive_diagonal(m));
        if (sigma) {
            CHECK(is_permutation(*sigma, 5));
            for (std::size_t i = 0; i < 5; ++i) CHECK(m(i, (*sigma)[i]) > 0.0);
        }
    }
}

TEST_CASE("diagonal counting matches known patterns") {
    CHECK(count_positive_diagonals(Matrix(3, 3, 1.0)) == 6);
    CHECK(count_positive_diagonals(Matrix{{1, 1}, {0, 1}}) == 1);
    CHECK(count_positive_diagonals(Matrix::identity(7)) == 1);
    CHECK(count_positive_diagonals(Matrix{{0, 1}, {0, 1}}) == 0);
}

TEST_CASE("diagonal counting refuses dimensions above the cap") {
    CHECK_THROWS_AS(count_positive_diagonals(Matrix::identity(21)), DomainError);
    CHECK_THROWS_AS(count_positive_diagonals(Matrix::identity(8), 7), DomainError);
}

TEST_CASE("diagonal counting agrees with brute-force enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 6; // up to 7x7
        const Matrix m = testutil::random_binary_matrix(rng, n, 0.45);
        CHECK(count_positive_diagonals(m) == testutil::brute_force_diagonal_count(m));
    }
}

TEST_CASE("exactly-one-diagonal decision") {
    CHECK(has_exactly_one_positive_diagonal(Matrix{{1, 1}, {0, 1}}));
    CHECK_FALSE(has_exactly_one_positive_diagonal(Matrix(2, 2, 1.0)));
    CHECK_FALSE(has_exactly_one_positive_diagonal(Matrix{{1, 0}, {1, 0}}));
}

TEST_CASE("peeling agrees with the permanent on random patterns") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Matrix m = testutil::random_binary_matrix(rng, n, 0.4);
        CHECK(has_exactly_one_positive_diagonal(m) ==
              (count_positive_diagonals(m) == 1));
    }
}

TEST_CASE("triangularization witnesses") {
    SUBCASE("already upper triangular") {
        const auto w = triangularize(Matrix{{1, 1}, {0, 1}});
        REQUIRE(w.has_value());
        CHECK(w->row_perm == Permutation{0, 1});
        CHECK(w->col_perm == Permutation{0, 1});
    }
    SUBCASE("row-swapped input") {
        const Matrix m{{0, 1}, {1, 1}};
        const auto w = triangularize(m);
        REQUIRE(w.has_value());
        CHECK(is_upper_triangular_with_positive_diagonal(
            joint_permute(m, w->row_perm, w->col_perm)));
    }
    SUBCASE("two diagonals yield no witness") {
        CHECK_FALSE(triangularize(Matrix(2, 2, 1.0)).has_value());
    }
    SUBCASE("no diagonal yields no witness") {
        CHECK_FALSE(triangularize(Matrix{{1, 0}, {1, 0}}).has_value());
    }
}

TEST_CASE("witnesses exist exactly for single-diagonal patterns and are valid") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Matrix m = testutil::random_binary_matrix(rng, n, 0.35);
        const auto w = triangularize(m);
        CHECK(w.has_value() == (count_positive_diagonals(m) == 1));
        if (w) {
            CHECK(is_upper_triangular_with_positive_diagonal(
                joint_permute(m, w->row_perm, w->col_perm)));
        }
    }
}

TEST_CASE("per-entry diagonal support") {
    const Matrix m{{1, 1}, {0, 1}};
    CHECK(diagonal_support_entry(m, 0, 0));
    CHECK_FALSE(diagonal_support_entry(m, 0, 1));
    CHECK(diagonal_support_entry(m, 1, 1));
    CHECK_THROWS_AS(diagonal_support_entry(m, 1, 0), InvalidValueError);

    const Matrix ones(4, 4, 1.0);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) CHECK(diagonal_support_entry(ones, i, j));
    }
}

TEST_CASE("support count is positive exactly when a diagonal exists") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Matrix m = testutil::random_binary_matrix(rng, n, 0.4);
        CHECK((count_positive_diagonals(m) > 0) == has_positive_diagonal(m));
    }
}
