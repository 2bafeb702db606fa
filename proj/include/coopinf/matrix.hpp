#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopinf/errors.hpp"

namespace coopinf {

/// Default absolute tolerance for row/column sum checks. Sinkhorn limits are
/// reached numerically, never exactly, so stochasticity is always "within
/// tolerance".
inline constexpr double kStochasticTol = 1e-9;

/// A permutation of {0, ..., n-1}, stored as the image sequence.
using Permutation = std::vector<std::size_t>;

/// True iff `p` is a bijection on {0, ..., n-1}.
bool is_permutation(const Permutation& p, std::size_t n);

/// Identity permutation of length n.
Permutation identity_permutation(std::size_t n);

/// Labeled concept space and data-set space. Rows of every matrix in this
/// library index data sets, columns index concepts.
class SpaceIndex {
public:
    SpaceIndex(std::vector<std::string> dataset_labels,
               std::vector<std::string> concept_labels,
               std::vector<std::int64_t> dataset_sizes);

    /// Labels "d1..dN" / "h1..hM", all data-set sizes 1.
    static SpaceIndex with_default_labels(std::size_t num_datasets,
                                          std::size_t num_concepts);

    std::size_t num_datasets() const { return dataset_labels_.size(); }
    std::size_t num_concepts() const { return concept_labels_.size(); }
    const std::vector<std::string>& dataset_labels() const { return dataset_labels_; }
    const std::vector<std::string>& concept_labels() const { return concept_labels_; }
    const std::vector<std::int64_t>& dataset_sizes() const { return dataset_sizes_; }

    /// Index relabeled under a joint row/column permutation:
    /// new row i describes old row row_perm[i], and likewise for columns.
    SpaceIndex permuted(const Permutation& row_perm, const Permutation& col_perm) const;

    friend bool operator==(const SpaceIndex&, const SpaceIndex&) = default;

private:
    std::vector<std::string> dataset_labels_;
    std::vector<std::string> concept_labels_;
    std::vector<std::int64_t> dataset_sizes_;
};

/// Dense nonnegative matrix, rows = data sets, columns = concepts.
/// Immutable after construction; every entry is finite and >= 0.
class Matrix {
public:
    /// rows x cols matrix filled with `fill`.
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Takes row-major storage; data.size() must equal rows*cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data,
           std::optional<SpaceIndex> index = std::nullopt);

    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    /// Bounds-checked access.
    double at(std::size_t r, std::size_t c) const;

    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data_.data() + r * cols_, cols_);
    }
    std::span<const double> data() const { return data_; }

    const std::optional<SpaceIndex>& index() const { return index_; }

    /// Copy with the given SpaceIndex attached (dimensions must agree).
    Matrix with_index(SpaceIndex index) const;
    /// Copy with no SpaceIndex attached.
    Matrix without_index() const;

    /// Entrywise equality of values and shape; the index is ignored.
    bool same_entries(const Matrix& other) const;

private:
    void validate() const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    std::optional<SpaceIndex> index_;
};

/// Matrix whose rows each sum to 1 within `tol`, or are entirely zero
/// (zero rows model data sets that are never selected).
class RowStochasticMatrix {
public:
    explicit RowStochasticMatrix(Matrix m, double tol = kStochasticTol);

    const Matrix& matrix() const { return m_; }
    std::size_t rows() const { return m_.rows(); }
    std::size_t cols() const { return m_.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    Matrix m_;
};

/// Matrix whose columns each sum to 1 within `tol`, or are entirely zero.
class ColumnStochasticMatrix {
public:
    explicit ColumnStochasticMatrix(Matrix m, double tol = kStochasticTol);

    const Matrix& matrix() const { return m_; }
    std::size_t rows() const { return m_.rows(); }
    std::size_t cols() const { return m_.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    Matrix m_;
};

/// Scales each nonzero row to sum 1. Zero rows are preserved.
RowStochasticMatrix row_normalize(const Matrix& m);

/// Scales each nonzero column to sum 1. Zero columns are preserved.
ColumnStochasticMatrix column_normalize(const Matrix& m);

/// True iff m is square and every row sum and column sum is within `tol` of 1.
bool is_doubly_stochastic(const Matrix& m, double tol);

/// Reindexed copy: out(i, j) = m(row_perm[i], col_perm[j]). An attached
/// SpaceIndex is permuted along.
Matrix joint_permute(const Matrix& m, const Permutation& row_perm,
                     const Permutation& col_perm);
RowStochasticMatrix joint_permute(const RowStochasticMatrix& m,
                                  const Permutation& row_perm,
                                  const Permutation& col_perm);
ColumnStochasticMatrix joint_permute(const ColumnStochasticMatrix& m,
                                     const Permutation& row_perm,
                                     const Permutation& col_perm);

/// max_{i,j} |a(i,j) - b(i,j)|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace coopinf
