#include "doctest.h"

#include <cmath>

#include "coopinf/teaching.hpp"
#include "coopinf/transmission.hpp"
#include "test_util.hpp"

using namespace coopinf;

namespace {

RowStochasticMatrix rs(Matrix m) { return RowStochasticMatrix(std::move(m)); }
ColumnStochasticMatrix cs(Matrix m) { return ColumnStochasticMatrix(std::move(m)); }

} // namespace

TEST_CASE("transmission index of the canonical 2x2 pairs") {
    const auto T = cs(Matrix::identity(2));
    CHECK(transmission_index(rs(Matrix::identity(2)), T) == 1.0);
    CHECK(transmission_index(rs(Matrix{{0, 1}, {1, 0}}), T) == 0.0);
    CHECK(transmission_index(rs(Matrix{{0.5, 0.5}, {0.5, 0.5}}), T) == 0.5);
}

TEST_CASE("transmission index after one cooperative step of [[1,1],[0,1]]") {
    const auto L = rs(Matrix{{0.5, 0.5}, {0, 1}});
    const auto T = cs(Matrix{{1, 1.0 / 3.0}, {0, 2.0 / 3.0}});
    CHECK(transmission_index(L, T) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("transmission index rejects mismatched shapes") {
    CHECK_THROWS_AS(
        transmission_index(rs(Matrix::identity(2)), cs(Matrix::identity(3))),
        DimensionError);
}

TEST_CASE("certificate for an optimal pair") {
    const auto cert = ti_certificate(rs(Matrix::identity(2)), cs(Matrix::identity(2)));
    CHECK(cert.ti_value == 1.0);
    CHECK(cert.condition_i_holds);
    CHECK(cert.condition_ii_holds);
    CHECK(cert.violations.empty());
}

TEST_CASE("ambiguous learner violates condition (i)") {
    const auto cert = ti_certificate(rs(Matrix{{0.5, 0.5}, {0.5, 0.5}}),
                                     cs(Matrix::identity(2)));
    CHECK(cert.ti_value == 0.5);
    CHECK_FALSE(cert.condition_i_holds);
    CHECK(cert.condition_ii_holds);
    // the teacher is positive only on the diagonal, so those are the
    // entries where L != 1 can violate (i)
    CHECK(cert.violations ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
}

TEST_CASE("zero column violates condition (ii)") {
    const Matrix c{{1, 0}, {0, 0}};
    const auto cert = ti_certificate(row_normalize(c), column_normalize(c));
    CHECK(cert.ti_value == 0.5);
    CHECK(cert.condition_i_holds);
    CHECK_FALSE(cert.condition_ii_holds);
    CHECK(cert.zero_columns_learner == std::vector<std::size_t>{1});
    CHECK(cert.zero_columns_teacher == std::vector<std::size_t>{1});
}

TEST_CASE("certificate soundness: both conditions hold exactly at TI = 1") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        // Random optimal pair: assign each concept a private pool of rows.
        const std::size_t cols = 2 + trial % 3;
        const std::size_t rows = cols + trial % 3;
        std::vector<std::size_t> owner(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            owner[i] = i < cols ? i : rng() % cols;
        }
        std::vector<double> l(rows * cols, 0.0), t(rows * cols, 0.0);
        std::vector<std::size_t> pool_size(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            l[i * cols + owner[i]] = 1.0;
            ++pool_size[owner[i]];
        }
        for (std::size_t i = 0; i < rows; ++i) {
            t[i * cols + owner[i]] = 1.0 / static_cast<double>(pool_size[owner[i]]);
        }
        const auto learner = rs(Matrix(rows, cols, std::move(l)));
        const auto teacher = cs(Matrix(rows, cols, std::move(t)));

        const auto cert = ti_certificate(learner, teacher, 1e-12);
        CHECK(cert.condition_i_holds);
        CHECK(cert.condition_ii_holds);
        CHECK(std::abs(cert.ti_value - 1.0) <= 1e-12);
        CHECK(rows >= cols); // optimal transmission needs at least |H| data sets
    }
}

TEST_CASE("TI stays within [0,1] and is invariant under joint permutations") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix m = testutil::random_matrix(rng, 4, 4, 0.3);
        const auto learner = row_normalize(m);
        const auto teacher = column_normalize(m);
        const double ti = transmission_index(learner, teacher);
        CHECK(ti >= 0.0);
        CHECK(ti <= 1.0 + 1e-15);

        const auto rp = testutil::random_permutation(rng, 4);
        const auto cp = testutil::random_permutation(rng, 4);
        const double permuted = transmission_index(joint_permute(learner, rp, cp),
                                                   joint_permute(teacher, rp, cp));
        CHECK(permuted == doctest::Approx(ti).epsilon(1e-14));
    }
}

TEST_CASE("expected teaching dimension of the 2x2 consistency family") {
    const std::vector<std::int64_t> sizes{2, 3};
    auto etd_of = [&](const Matrix& c) {
        return expected_teaching_dimension(row_normalize(c), column_normalize(c), sizes);
    };
    CHECK(etd_of(Matrix{{1, 0}, {0, 0}}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(etd_of(Matrix::identity(2)) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(etd_of(Matrix{{1, 1}, {0, 0}}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(etd_of(Matrix{{1, 1}, {0, 1}}) ==
          doctest::Approx((3.0 * 2 + 2.0 * 3) / 5.0).epsilon(1e-14));
}

TEST_CASE("ETD equals ATD bit for bit on permutation consistency matrices") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const auto p = testutil::random_permutation(rng, n);
        std::vector<double> data(n * n, 0.0);
        std::vector<std::int64_t> sizes(n);
        for (std::size_t i = 0; i < n; ++i) {
            data[i * n + p[i]] = 1.0;
            sizes[i] = 1 + static_cast<std::int64_t>(rng() % 100);
        }
        const Matrix c(n, n, std::move(data));
        const double etd =
            expected_teaching_dimension(row_normalize(c), column_normalize(c), sizes);
        const auto atd = average_teaching_dimension(ConsistencyMatrix(c, sizes));
        REQUIRE_FALSE(atd.is_infinite());
        CHECK(etd == atd.value()); // integer sums are exact in either order
    }
}

TEST_CASE("expected teaching dimension is undefined at zero transmission") {
    const auto learner = rs(Matrix{{0, 1}, {1, 0}});
    const auto teacher = cs(Matrix::identity(2));
    const std::vector<std::int64_t> sizes{1, 1};
    CHECK_THROWS_AS(expected_teaching_dimension(learner, teacher, sizes), DomainError);
    CHECK_THROWS_AS(expected_teaching_dimension(learner, teacher,
                                                std::vector<std::int64_t>{1}),
                    DimensionError);
}

TEST_CASE("machine teaching picks the argmax data set per concept") {
    // version-space learner over threshold classifiers, all six data sets
    const Matrix table{{1, 0, 0},
                       {0.5, 0.5, 0},
                       {1.0 / 3, 1.0 / 3, 1.0 / 3},
                       {0, 1, 0},
                       {0, 0.5, 0.5},
                       {0, 0, 1}};
    const auto learner = rs(table);
    const auto teacher = machine_teaching_matrix(learner);
    CHECK(teacher(0, 0) == 1.0);
    CHECK(teacher(3, 1) == 1.0);
    CHECK(teacher(5, 2) == 1.0);
    CHECK(transmission_index(learner, teacher) == doctest::Approx(1.0).epsilon(1e-15));

    // keeping only the three data sets anchored at the smallest instance
    const Matrix head{{1, 0, 0}, {0.5, 0.5, 0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    const auto small = rs(head);
    const auto small_teacher = machine_teaching_matrix(small);
    CHECK(small_teacher.matrix().same_entries(Matrix::identity(3)));
    CHECK(transmission_index(small, small_teacher) ==
          doctest::Approx(11.0 / 18.0).epsilon(1e-14));
}

TEST_CASE("machine teaching on an identity learner is the identity") {
    const auto teacher = machine_teaching_matrix(rs(Matrix::identity(4)));
    CHECK(teacher.matrix().same_entries(Matrix::identity(4)));
}

TEST_CASE("machine teaching tie handling") {
    const auto learner = rs(Matrix{{0.5, 0.5}, {0.5, 0.5}});
    const auto split = machine_teaching_matrix(learner, TieRule::kUniformSplit);
    CHECK(split(0, 0) == 0.5);
    CHECK(split(1, 0) == 0.5);
    const auto lowest = machine_teaching_matrix(learner, TieRule::kLowestIndex);
    CHECK(lowest(0, 0) == 1.0);
    CHECK(lowest(1, 0) == 0.0);
}

TEST_CASE("machine teaching rejects unteachable concepts") {
    CHECK_THROWS_AS(machine_teaching_matrix(rs(Matrix{{1, 0}, {1, 0}})), DomainError);
}

TEST_CASE("simulation reproduces deterministic pairs") {
    CHECK(simulate_transmission(rs(Matrix::identity(2)), cs(Matrix::identity(2)),
                                2000, 1) == 1.0);
    CHECK(simulate_transmission(rs(Matrix{{0, 1}, {1, 0}}), cs(Matrix::identity(2)),
                                2000, 1) == 0.0);
}

TEST_CASE("simulation is reproducible and concentrates around TI") {
    const auto learner = rs(Matrix{{0.5, 0.5}, {0, 1}});
    const auto teacher = cs(Matrix{{1, 1.0 / 3.0}, {0, 2.0 / 3.0}});
    const double a = simulate_transmission(learner, teacher, 50'000, 9);
    const double b = simulate_transmission(learner, teacher, 50'000, 9);
    CHECK(a == b);

    const std::int64_t episodes = 100'000;
    const double ti = 2.0 / 3.0;
    const double band =
        3.0 * std::sqrt(ti * (1.0 - ti) / static_cast<double>(episodes));
    const double estimate = simulate_transmission(learner, teacher, episodes, 5);
    CHECK(std::abs(estimate - ti) <= band);
}

TEST_CASE("simulation rejects undefined samplers") {
    // teacher never selects data for concept 1
    CHECK_THROWS_AS(simulate_transmission(rs(Matrix{{1, 0}, {0, 1}}),
                                          cs(Matrix{{1, 0}, {0, 0}}), 1000, 0),
                    DomainError);
    // data set 1 has no learner posterior but can be selected
    CHECK_THROWS_AS(simulate_transmission(rs(Matrix{{1, 0}, {0, 0}}),
                                          cs(Matrix{{0.5, 1}, {0.5, 0}}), 1000, 0),
                    DomainError);
}
