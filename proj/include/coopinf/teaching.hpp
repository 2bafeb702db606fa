#pragma once

#include <cstdint>
#include <vector>

#include "coopinf/matrix.hpp"

namespace coopinf {

/// Teaching-dimension value on the extended real line: a finite nonnegative
/// number, or infinity when a concept has no teaching set. Infinity is a
/// first-class state, not a sentinel; addition and min follow extended-real
/// rules.
class TeachingDimension {
public:
    TeachingDimension() = default;
    explicit TeachingDimension(double value);
    static TeachingDimension infinite();

    bool is_infinite() const;
    /// Finite value; +infinity when is_infinite().
    double value() const { return value_; }

    friend TeachingDimension operator+(TeachingDimension a, TeachingDimension b);
    friend TeachingDimension min(TeachingDimension a, TeachingDimension b);
    friend bool operator==(TeachingDimension, TeachingDimension) = default;

private:
    double value_ = 0.0;
};

/// 0/1 record of which concepts are consistent with which data sets
/// (rows = data sets, columns = concepts), together with the data-set sizes
/// that teaching-dimension computations weigh.
class ConsistencyMatrix {
public:
    /// Entries must be exactly 0 or 1; sizes length must equal the row count.
    ConsistencyMatrix(Matrix entries, std::vector<std::int64_t> dataset_sizes);
    /// Convenience constructor assigning every data set size 1.
    static ConsistencyMatrix with_unit_sizes(Matrix entries);

    const Matrix& matrix() const { return m_; }
    std::size_t rows() const { return m_.rows(); }
    std::size_t cols() const { return m_.cols(); }
    bool at(std::size_t r, std::size_t c) const { return m_(r, c) != 0.0; }
    const std::vector<std::int64_t>& dataset_sizes() const { return sizes_; }

private:
    Matrix m_;
    std::vector<std::int64_t> sizes_;
};

/// Independent Bernoulli draw per entry: C(i,j) ~ Bernoulli(mprob(i,j)).
/// Entries of mprob must lie in [0,1]. Sizes come from mprob's SpaceIndex when
/// present, else default to 1. Deterministic per seed (MT19937-64, row-major
/// entry order).
ConsistencyMatrix sample_consistency(const Matrix& mprob, std::uint64_t seed);

/// Deterministic decision rule: entry 1 iff mprob(i,j) > threshold.
/// Threshold must lie in (0,1).
ConsistencyMatrix threshold_round(const Matrix& mprob, double threshold);

/// TD of one concept: row i teaches column j iff C(i,j) = 1 and C(i,j') = 0
/// for every other column j'. Returns the minimum size over teaching rows, or
/// infinity when the concept has none.
TeachingDimension teaching_dimension(const ConsistencyMatrix& c,
                                     std::size_t concept_index);

/// Mean of teaching_dimension over all concepts; infinite if any concept's
/// TD is infinite.
TeachingDimension average_teaching_dimension(const ConsistencyMatrix& c);

/// Rows that teach each concept: result[j] lists the rows consistent with
/// concept j and nothing else. Any row appears under at most one concept.
std::vector<std::vector<std::size_t>> teaching_sets(const ConsistencyMatrix& c);

/// Threshold-classifier learning problem: classifiers h_theta label an
/// instance x negative when x < theta and positive otherwise. Both lists must
/// be nonempty and strictly increasing.
struct ThresholdProblem {
    std::vector<int> thresholds;
    std::vector<int> instances;
};

/// Version-space learner over all two-example data sets {(x1,-), (x2,+)} with
/// x1 < x2, enumerated in lexicographic (x1, x2) order. Each row spreads
/// uniform posterior mass over the thresholds theta with x1 < theta <= x2.
/// Throws DomainError if some data set is consistent with no threshold.
/// The result carries a SpaceIndex with rows labeled "{x1,-,x2,+}", columns
/// labeled "h<theta>", and every data-set size 2.
RowStochasticMatrix build_threshold_learner(const ThresholdProblem& problem);

} // namespace coopinf
