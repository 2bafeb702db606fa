#include "coopinf/transmission.hpp"

#include <cmath>
#include <random>

namespace coopinf {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("learner and teacher matrices must have identical dimensions");
    }
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws an index with probability weight[k] (weights sum to ~1); zero-weight
// indices are never drawn. Assumes at least one positive weight.
template <typename WeightAt>
std::size_t draw_categorical(std::mt19937_64& rng, std::size_t n, WeightAt weight) {
    const double u = uniform_unit(rng);
    double cum = 0.0;
    std::size_t last_positive = n;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = weight(k);
        if (w <= 0.0) continue;
        last_positive = k;
        cum += w;
        if (u < cum) return k;
    }
    return last_positive; // u fell into the rounding gap past the last weight
}

} // namespace

double transmission_index(const RowStochasticMatrix& learner,
                          const ColumnStochasticMatrix& teacher) {
    require_same_shape(learner.matrix(), teacher.matrix());
    double sum = 0.0;
    for (std::size_t i = 0; i < learner.rows(); ++i) {
        for (std::size_t j = 0; j < learner.cols(); ++j) {
            sum += learner(i, j) * teacher(i, j);
        }
    }
    return sum / static_cast<double>(learner.cols());
}

TiCertificate ti_certificate(const RowStochasticMatrix& learner,
                             const ColumnStochasticMatrix& teacher, double tol) {
    require_same_shape(learner.matrix(), teacher.matrix());
    TiCertificate cert;
    cert.ti_value = transmission_index(learner, teacher);

    for (std::size_t i = 0; i < learner.rows(); ++i) {
        for (std::size_t j = 0; j < learner.cols(); ++j) {
            if (teacher(i, j) > tol && std::abs(learner(i, j) - 1.0) > tol) {
                cert.violations.emplace_back(i, j);
            }
        }
    }
    cert.condition_i_holds = cert.violations.empty();

    for (std::size_t j = 0; j < learner.cols(); ++j) {
        bool learner_zero = true, teacher_zero = true;
        for (std::size_t i = 0; i < learner.rows(); ++i) {
            if (learner(i, j) > tol) learner_zero = false;
            if (teacher(i, j) > tol) teacher_zero = false;
        }
        if (learner_zero) cert.zero_columns_learner.push_back(j);
        if (teacher_zero) cert.zero_columns_teacher.push_back(j);
    }
    cert.condition_ii_holds =
        cert.zero_columns_learner.empty() && cert.zero_columns_teacher.empty();
    return cert;
}

double expected_teaching_dimension(const RowStochasticMatrix& learner,
                                   const ColumnStochasticMatrix& teacher,
                                   std::span<const std::int64_t> dataset_sizes) {
    require_same_shape(learner.matrix(), teacher.matrix());
    if (dataset_sizes.size() != learner.rows()) {
        throw DimensionError("dataset_sizes length must match the number of data sets");
    }
    double numerator = 0.0, denominator = 0.0;
    for (std::size_t i = 0; i < learner.rows(); ++i) {
        for (std::size_t j = 0; j < learner.cols(); ++j) {
            const double w = learner(i, j) * teacher(i, j);
            numerator += static_cast<double>(dataset_sizes[i]) * w;
            denominator += w;
        }
    }
    if (denominator == 0.0) {
        throw DomainError("ETD undefined: transmission index is zero");
    }
    return numerator / denominator;
}

ColumnStochasticMatrix machine_teaching_matrix(const RowStochasticMatrix& learner,
                                               TieRule tie_rule) {
    const std::size_t rows = learner.rows(), cols = learner.cols();
    std::vector<double> out(rows * cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double best = 0.0;
        for (std::size_t i = 0; i < rows; ++i) best = std::max(best, learner(i, j));
        if (best == 0.0) {
            throw DomainError("unteachable concept: column " + std::to_string(j) +
                              " of the learner matrix is zero");
        }
        std::vector<std::size_t> argmax;
        for (std::size_t i = 0; i < rows; ++i) {
            if (learner(i, j) == best) argmax.push_back(i);
        }
        if (tie_rule == TieRule::kLowestIndex) {
            out[argmax.front() * cols + j] = 1.0;
        } else {
            const double share = 1.0 / static_cast<double>(argmax.size());
            for (std::size_t i : argmax) out[i * cols + j] = share;
        }
    }
    return ColumnStochasticMatrix(
        Matrix(rows, cols, std::move(out), learner.matrix().index()));
}

double simulate_transmission(const RowStochasticMatrix& learner,
                             const ColumnStochasticMatrix& teacher,
                             std::int64_t episodes, std::uint64_t seed) {
    require_same_shape(learner.matrix(), teacher.matrix());
    if (episodes <= 0) throw InvalidValueError("episode count must be positive");

    const std::size_t rows = learner.rows(), cols = learner.cols();
    std::mt19937_64 rng(seed);
    std::int64_t hits = 0;
    for (std::int64_t e = 0; e < episodes; ++e) {
        const std::size_t concept_idx =
            std::min<std::size_t>(cols - 1,
                                  static_cast<std::size_t>(uniform_unit(rng) *
                                                           static_cast<double>(cols)));
        double column_mass = 0.0;
        for (std::size_t i = 0; i < rows; ++i) column_mass += teacher(i, concept_idx);
        if (column_mass == 0.0) {
            throw DomainError("teacher never selects data for concept " +
                              std::to_string(concept_idx));
        }
        const std::size_t data_idx = draw_categorical(
            rng, rows, [&](std::size_t i) { return teacher(i, concept_idx); });

        double row_mass = 0.0;
        for (std::size_t j = 0; j < cols; ++j) row_mass += learner(data_idx, j);
        if (row_mass == 0.0) {
            throw DomainError("undefined learner posterior: data set " +
                              std::to_string(data_idx) + " has a zero learner row");
        }
        const std::size_t guess = draw_categorical(
            rng, cols, [&](std::size_t j) { return learner(data_idx, j); });
        if (guess == concept_idx) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(episodes);
}

} // namespace coopinf
