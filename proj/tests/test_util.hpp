#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "coopinf/matrix.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline coopinf::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                     std::size_t cols, double zero_prob = 0.0) {
    std::vector<double> data(rows * cols);
    for (auto& v : data) {
        v = 0.05 + uniform01(rng); // bounded away from zero unless zeroed out
        if (zero_prob > 0.0 && uniform01(rng) < zero_prob) v = 0.0;
    }
    return coopinf::Matrix(rows, cols, std::move(data));
}

/// Square 0/1 matrix whose entries follow independent Bernoulli(one_prob).
inline coopinf::Matrix random_binary_matrix(std::mt19937_64& rng, std::size_t n,
                                            double one_prob = 0.5) {
    std::vector<double> data(n * n);
    for (auto& v : data) v = uniform01(rng) < one_prob ? 1.0 : 0.0;
    return coopinf::Matrix(n, n, std::move(data));
}

/// n x n 0/1 matrix decoded from the low n*n bits of mask (row-major).
inline coopinf::Matrix binary_matrix_from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<double> data(n * n);
    for (std::size_t k = 0; k < n * n; ++k) data[k] = (mask >> k) & 1u ? 1.0 : 0.0;
    return coopinf::Matrix(n, n, std::move(data));
}

inline coopinf::Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
    coopinf::Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Brute-force positive-diagonal count: iterates all n! permutations.
/// Independent of the Ryser implementation it cross-checks.
inline std::uint64_t brute_force_diagonal_count(const coopinf::Matrix& m) {
    const std::size_t n = m.rows();
    coopinf::Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::uint64_t count = 0;
    do {
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i) positive = m(i, p[i]) > 0.0;
        if (positive) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

/// Brute-force permutation-matrix test.
inline bool is_permutation_matrix(const coopinf::Matrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::size_t row_ones = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0 && m(i, j) != 1.0) return false;
            if (m(i, j) == 1.0) ++row_ones;
        }
        if (row_ones != 1) return false;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::size_t col_ones = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (m(i, j) == 1.0) ++col_ones;
        }
        if (col_ones != 1) return false;
    }
    return true;
}

} // namespace testutil
