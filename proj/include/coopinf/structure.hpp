#pragma once

#include <cstdint>
#include <optional>

#include "coopinf/matrix.hpp"

namespace coopinf {

/// Exact diagonal counting uses Ryser's O(2^n n) permanent; above this
/// dimension it is refused. The exactly-one decision (peeling) has no cap.
inline constexpr std::size_t kPermanentDimensionCap = 20;

/// True iff some permutation sigma has m(i, sigma(i)) > 0 for every i,
/// i.e. the positivity pattern admits a perfect matching.
bool has_positive_diagonal(const Matrix& m);

/// A matching witness: sigma with m(i, sigma(i)) > 0 for all i, or nullopt.
std::optional<Permutation> find_positive_diagonal(const Matrix& m);

/// Number of positive diagonals = permanent of the 0/1 positivity pattern.
/// Throws DomainError above `cap`.
std::uint64_t count_positive_diagonals(const Matrix& m,
                                       std::size_t cap = kPermanentDimensionCap);

/// Decides "exactly one positive diagonal" without counting, by repeatedly
/// peeling rows/columns that contain a single positive entry. Works at any
/// dimension.
bool has_exactly_one_positive_diagonal(const Matrix& m);

/// Row/column permutations that rearrange a matrix into upper-triangular form
/// with a positive main diagonal: joint_permute(m, row_perm, col_perm) is
/// upper triangular. Exists iff the matrix has exactly one positive diagonal.
struct TriangularizationWitness {
    Permutation row_perm;
    Permutation col_perm;
};

/// Witness from the peeling order, or nullopt when the count of positive
/// diagonals is not exactly one.
std::optional<TriangularizationWitness> triangularize(const Matrix& m);

/// True iff some positive diagonal passes through (i, j). Requires
/// m(i, j) > 0; decided by matching on the minor that deletes row i, col j.
bool diagonal_support_entry(const Matrix& m, std::size_t i, std::size_t j);

/// True iff m is square, m(k, k) > 0 for all k, and m(i, j) == 0 for i > j.
bool is_upper_triangular_with_positive_diagonal(const Matrix& m);

} // namespace coopinf
