#include "coopinf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace coopinf {

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw InvalidValueError(std::string("duplicate ") + what + " label: " + label);
        }
    }
}

} // namespace

bool is_permutation(const Permutation& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t v : p) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

SpaceIndex::SpaceIndex(std::vector<std::string> dataset_labels,
                       std::vector<std::string> concept_labels,
                       std::vector<std::int64_t> dataset_sizes)
    : dataset_labels_(std::move(dataset_labels)),
      concept_labels_(std::move(concept_labels)),
      dataset_sizes_(std::move(dataset_sizes)) {
    if (dataset_labels_.empty() || concept_labels_.empty()) {
        throw InvalidValueError("concept and data-set spaces must be nonempty");
    }
    if (dataset_sizes_.size() != dataset_labels_.size()) {
        throw DimensionError("dataset_sizes length must match the number of data sets");
    }
    for (std::int64_t s : dataset_sizes_) {
        if (s < 0) throw InvalidValueError("data-set sizes must be nonnegative");
    }
    check_unique(dataset_labels_, "data set");
    check_unique(concept_labels_, "concept");
}

SpaceIndex SpaceIndex::with_default_labels(std::size_t num_datasets,
                                           std::size_t num_concepts) {
    std::vector<std::string> ds(num_datasets), cs(num_concepts);
    for (std::size_t i = 0; i < num_datasets; ++i) ds[i] = "d" + std::to_string(i + 1);
    for (std::size_t j = 0; j < num_concepts; ++j) cs[j] = "h" + std::to_string(j + 1);
    return SpaceIndex(std::move(ds), std::move(cs),
                      std::vector<std::int64_t>(num_datasets, 1));
}

SpaceIndex SpaceIndex::permuted(const Permutation& row_perm,
                                const Permutation& col_perm) const {
    if (!is_permutation(row_perm, num_datasets()) ||
        !is_permutation(col_perm, num_concepts())) {
        throw InvalidValueError("index maps must be bijections of the label ranges");
    }
    std::vector<std::string> ds(num_datasets()), cs(num_concepts());
    std::vector<std::int64_t> sizes(num_datasets());
    for (std::size_t i = 0; i < num_datasets(); ++i) {
        ds[i] = dataset_labels_[row_perm[i]];
        sizes[i] = dataset_sizes_[row_perm[i]];
    }
    for (std::size_t j = 0; j < num_concepts(); ++j) cs[j] = concept_labels_[col_perm[j]];
    return SpaceIndex(std::move(ds), std::move(cs), std::move(sizes));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    validate();
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data,
               std::optional<SpaceIndex> index)
    : rows_(rows), cols_(cols), data_(std::move(data)), index_(std::move(index)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("matrix storage size does not match rows*cols");
    }
    validate();
    if (index_ && (index_->num_datasets() != rows_ || index_->num_concepts() != cols_)) {
        throw DimensionError("attached SpaceIndex does not match matrix dimensions");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged initializer rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    validate();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
    return m;
}

double Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    return (*this)(r, c);
}

Matrix Matrix::with_index(SpaceIndex index) const {
    Matrix out = *this;
    if (index.num_datasets() != rows_ || index.num_concepts() != cols_) {
        throw DimensionError("attached SpaceIndex does not match matrix dimensions");
    }
    out.index_ = std::move(index);
    return out;
}

Matrix Matrix::without_index() const {
    Matrix out = *this;
    out.index_.reset();
    return out;
}

bool Matrix::same_entries(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

void Matrix::validate() const {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("matrices must have at least one row and one column");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidValueError("matrix entries must be finite");
        if (v < 0.0) throw InvalidValueError("matrix entries must be nonnegative");
    }
}

namespace {

// Zero rows/columns are legal in stochastic matrices: they model data sets
// (concepts) that are never selected.
void check_line_sums(const Matrix& m, bool by_rows, double tol, const char* what) {
    const std::size_t outer = by_rows ? m.rows() : m.cols();
    const std::size_t inner = by_rows ? m.cols() : m.rows();
    for (std::size_t i = 0; i < outer; ++i) {
        double sum = 0.0;
        bool all_zero = true;
        for (std::size_t k = 0; k < inner; ++k) {
            const double v = by_rows ? m(i, k) : m(k, i);
            sum += v;
            all_zero = all_zero && v == 0.0;
        }
        if (all_zero) continue;
        if (std::abs(sum - 1.0) > tol) {
            throw InvalidValueError(std::string(what) + " " + std::to_string(i) +
                                    " sums to " + std::to_string(sum) +
                                    ", expected 1 or an all-zero line");
        }
    }
}

} // namespace

RowStochasticMatrix::RowStochasticMatrix(Matrix m, double tol) : m_(std::move(m)) {
    check_line_sums(m_, true, tol, "row");
}

ColumnStochasticMatrix::ColumnStochasticMatrix(Matrix m, double tol) : m_(std::move(m)) {
    check_line_sums(m_, false, tol, "column");
}

RowStochasticMatrix row_normalize(const Matrix& m) {
    std::vector<double> out(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i * m.cols() + j] = sum == 0.0 ? 0.0 : m(i, j) / sum;
        }
    }
    return RowStochasticMatrix(Matrix(m.rows(), m.cols(), std::move(out), m.index()));
}

ColumnStochasticMatrix column_normalize(const Matrix& m) {
    std::vector<double> out(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out[i * m.cols() + j] = sum == 0.0 ? 0.0 : m(i, j) / sum;
        }
    }
    return ColumnStochasticMatrix(Matrix(m.rows(), m.cols(), std::move(out), m.index()));
}

bool is_doubly_stochastic(const Matrix& m, double tol) {
    if (!m.is_square()) throw DimensionError("doubly stochastic test requires a square matrix");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row_sum = 0.0, col_sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row_sum += m(i, j);
            col_sum += m(j, i);
        }
        if (std::abs(row_sum - 1.0) > tol || std::abs(col_sum - 1.0) > tol) return false;
    }
    return true;
}

Matrix joint_permute(const Matrix& m, const Permutation& row_perm,
                     const Permutation& col_perm) {
    if (!is_permutation(row_perm, m.rows()) || !is_permutation(col_perm, m.cols())) {
        throw InvalidValueError("index maps must be bijections of the matrix dimensions");
    }
    std::vector<double> out(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i * m.cols() + j] = m(row_perm[i], col_perm[j]);
        }
    }
    std::optional<SpaceIndex> index;
    if (m.index()) index = m.index()->permuted(row_perm, col_perm);
    return Matrix(m.rows(), m.cols(), std::move(out), std::move(index));
}

RowStochasticMatrix joint_permute(const RowStochasticMatrix& m,
                                  const Permutation& row_perm,
                                  const Permutation& col_perm) {
    return RowStochasticMatrix(joint_permute(m.matrix(), row_perm, col_perm));
}

ColumnStochasticMatrix joint_permute(const ColumnStochasticMatrix& m,
                                     const Permutation& row_perm,
                                     const Permutation& col_perm) {
    return ColumnStochasticMatrix(joint_permute(m.matrix(), row_perm, col_perm));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff requires matching shapes");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    }
    return worst;
}

} // namespace coopinf
