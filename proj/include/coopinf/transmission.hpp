#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coopinf/matrix.hpp"

namespace coopinf {

/// Average over concepts of the probability that teacher-selected data leads
/// the learner back to the intended concept:
///   TI(L, T) = (1/|H|) * sum_{i,j} L(i,j) * T(i,j).
double transmission_index(const RowStochasticMatrix& learner,
                          const ColumnStochasticMatrix& teacher);

/// Optimality certificate for TI = 1. The two conditions:
///   (i)  L(i,j) = 1 wherever T(i,j) > 0;
///   (ii) neither L nor T has a zero column.
/// TI = 1 (within tol) holds exactly when both conditions do.
struct TiCertificate {
    double ti_value = 0.0;
    bool condition_i_holds = false;
    bool condition_ii_holds = false;
    /// Entries with T(i,j) > tol but L(i,j) != 1, violating condition (i).
    std::vector<std::pair<std::size_t, std::size_t>> violations;
    /// Columns of L (resp. T) with no entry above tol, violating condition (ii).
    std::vector<std::size_t> zero_columns_learner;
    std::vector<std::size_t> zero_columns_teacher;
};

TiCertificate ti_certificate(const RowStochasticMatrix& learner,
                             const ColumnStochasticMatrix& teacher,
                             double tol = kStochasticTol);

/// Transmission-weighted expected data-set size:
///   ETD = sum_{i,j} |D_i| L(i,j) T(i,j) / sum_{i,j} L(i,j) T(i,j).
/// Throws DomainError when the denominator is zero (TI = 0), where the
/// quantity is undefined.
double expected_teaching_dimension(const RowStochasticMatrix& learner,
                                   const ColumnStochasticMatrix& teacher,
                                   std::span<const std::int64_t> dataset_sizes);

/// Tie handling when several data sets maximize the learner's posterior for a
/// concept. The source setting leaves this open, so both are provided.
enum class TieRule {
    kUniformSplit, ///< share the selection mass equally over all argmax rows
    kLowestIndex,  ///< deterministic pick of the first argmax row
};

/// Greedy one-shot teacher: column j places all selection mass on the row(s)
/// maximizing L(., j). Throws DomainError for a concept no data set supports
/// (an all-zero column of L).
ColumnStochasticMatrix machine_teaching_matrix(const RowStochasticMatrix& learner,
                                               TieRule tie_rule = TieRule::kUniformSplit);

/// Monte Carlo estimate of TI: repeatedly draw a concept uniformly, a data
/// set from the teacher's column, and the learner's guess from that row;
/// returns the fraction of episodes where the guess matches the concept.
///
/// Randomness is MT19937-64 seeded with `seed`; uniform doubles come from the
/// top 53 bits, and categorical draws walk the cumulative row/column. Results
/// are bit-for-bit reproducible for a fixed seed.
double simulate_transmission(const RowStochasticMatrix& learner,
                             const ColumnStochasticMatrix& teacher,
                             std::int64_t episodes, std::uint64_t seed);

} // namespace coopinf
