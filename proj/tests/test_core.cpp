#include "doctest.h"

#include <cmath>

#include "coopinf/matrix.hpp"
#include "test_util.hpp"

using namespace coopinf;

TEST_CASE("row normalization scales rows to unit sum") {
    const auto L = row_normalize(Matrix{{1, 1}, {0, 1}});
    CHECK(L(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(L(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(L(1, 0) == 0.0);
    CHECK(L(1, 1) == 1.0);
}

TEST_CASE("row normalization keeps stochastic rows and zero rows") {
    CHECK(row_normalize(Matrix::identity(2)).matrix().same_entries(Matrix::identity(2)));

    // rows whose sum is exactly 1 are reproduced bit for bit
    const Matrix stochastic{{0.25, 0.75}, {0.625, 0.375}};
    CHECK(row_normalize(stochastic).matrix().same_entries(stochastic));

    const auto L = row_normalize(Matrix{{0, 0}, {3, 1}});
    CHECK(L(0, 0) == 0.0);
    CHECK(L(0, 1) == 0.0);
    CHECK(L(1, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(L(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("column normalization scales columns to unit sum") {
    const auto T = column_normalize(Matrix{{0.5, 0.5}, {0, 1}});
    CHECK(T(0, 0) == 1.0);
    CHECK(T(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(T(1, 0) == 0.0);
    CHECK(T(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("column normalization keeps permutations and zero columns") {
    const Matrix swap{{0, 1}, {1, 0}};
    CHECK(column_normalize(swap).matrix().same_entries(swap));

    const auto T = column_normalize(Matrix{{2, 0}, {2, 0}});
    CHECK(T(0, 0) == 0.5);
    CHECK(T(1, 0) == 0.5);
    CHECK(T(0, 1) == 0.0);
    CHECK(T(1, 1) == 0.0);
}

TEST_CASE("matrices reject negative and non-finite entries") {
    CHECK_THROWS_AS(Matrix({{1.0, -0.5}}), InvalidValueError);
    CHECK_THROWS_AS(Matrix({{1.0, std::nan("")}}), InvalidValueError);
    CHECK_THROWS_AS(Matrix({{1.0, std::numeric_limits<double>::infinity()}}),
                    InvalidValueError);
}

TEST_CASE("doubly stochastic test") {
    CHECK(is_doubly_stochastic(Matrix::identity(3), 1e-12));
    CHECK(is_doubly_stochastic(Matrix{{0.5, 0.5}, {0.5, 0.5}}, 1e-12));
    CHECK_FALSE(is_doubly_stochastic(Matrix{{1, 1}, {0, 1}}, 1e-12));
    CHECK_THROWS_AS(is_doubly_stochastic(Matrix(2, 3, 0.5), 1e-9), DimensionError);
}

TEST_CASE("joint permutation reindexes rows and columns") {
    const Permutation swap{1, 0};
    const Permutation id{0, 1};

    CHECK(joint_permute(Matrix::identity(2), swap, swap)
              .same_entries(Matrix::identity(2)));

    const Matrix m{{1, 2}, {3, 4}};
    const Matrix swapped = joint_permute(m, swap, id);
    CHECK(swapped.same_entries(Matrix{{3, 4}, {1, 2}}));
    CHECK(joint_permute(m, id, id).same_entries(m));

    CHECK_THROWS_AS(joint_permute(m, Permutation{0, 0}, id), InvalidValueError);
    CHECK_THROWS_AS(joint_permute(m, Permutation{0}, id), InvalidValueError);
}

TEST_CASE("normalization is idempotent and preserves zero patterns") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = testutil::random_matrix(rng, 4, 6, 0.35);
        // renormalizing rescales by a sum within one rounding of 1, so the
        // entries move by at most a couple of ulps
        const Matrix once = row_normalize(m).matrix();
        const Matrix twice = row_normalize(once).matrix();
        CHECK(max_abs_diff(once, twice) <= 5e-16);

        const Matrix conce = column_normalize(m).matrix();
        const Matrix ctwice = column_normalize(conce).matrix();
        CHECK(max_abs_diff(conce, ctwice) <= 5e-16);

        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) == 0.0) {
                    CHECK(once(i, j) == 0.0);
                    CHECK(conce(i, j) == 0.0);
                } else {
                    CHECK(once(i, j) > 0.0);
                    CHECK(conce(i, j) > 0.0);
                }
            }
        }
    }
}

TEST_CASE("row normalization commutes with joint permutation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = testutil::random_matrix(rng, 5, 5, 0.3);
        const auto rp = testutil::random_permutation(rng, 5);
        const auto cp = testutil::random_permutation(rng, 5);
        // row sums are accumulated in a different order on the two routes
        const Matrix a = row_normalize(joint_permute(m, rp, cp)).matrix();
        const Matrix b = joint_permute(row_normalize(m).matrix(), rp, cp);
        CHECK(max_abs_diff(a, b) <= 1e-15);
    }
}

TEST_CASE("stochastic wrappers enforce line sums but allow zero lines") {
    CHECK_NOTHROW(RowStochasticMatrix(Matrix{{0, 0}, {0.25, 0.75}}));
    CHECK_NOTHROW(ColumnStochasticMatrix(Matrix{{0, 0.5}, {0, 0.5}}));
    CHECK_THROWS_AS(RowStochasticMatrix(Matrix{{0.5, 0.4}, {0, 1}}), InvalidValueError);
    CHECK_THROWS_AS(ColumnStochasticMatrix(Matrix{{1, 1}, {0.5, 0}}), InvalidValueError);
}

TEST_CASE("space index invariants") {
    CHECK_THROWS_AS(SpaceIndex({"d1", "d1"}, {"h1"}, {1, 1}), InvalidValueError);
    CHECK_THROWS_AS(SpaceIndex({"d1"}, {"h1", "h1"}, {1}), InvalidValueError);
    CHECK_THROWS_AS(SpaceIndex({"d1", "d2"}, {"h1"}, {1}), DimensionError);
    CHECK_THROWS_AS(SpaceIndex({}, {"h1"}, {}), InvalidValueError);
    CHECK_THROWS_AS(SpaceIndex({"d1"}, {"h1"}, {-1}), InvalidValueError);

    const SpaceIndex idx({"d1", "d2"}, {"h1", "h2"}, {3, 5});
    const SpaceIndex swapped = idx.permuted({1, 0}, {0, 1});
    CHECK(swapped.dataset_labels() == std::vector<std::string>{"d2", "d1"});
    CHECK(swapped.dataset_sizes() == std::vector<std::int64_t>{5, 3});
    CHECK(swapped.concept_labels() == idx.concept_labels());
}

TEST_CASE("index travels through normalization and permutation") {
    const SpaceIndex idx({"d1", "d2"}, {"h1", "h2"}, {2, 3});
    const Matrix m = Matrix{{1, 1}, {0, 1}}.with_index(idx);
    CHECK(row_normalize(m).matrix().index() == idx);
    const Matrix p = joint_permute(m, {1, 0}, {0, 1});
    REQUIRE(p.index().has_value());
    CHECK(p.index()->dataset_labels()[0] == "d2");
}
