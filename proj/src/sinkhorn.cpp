#include "coopinf/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coopinf/structure.hpp"
#include "coopinf/transmission.hpp"

namespace coopinf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_prior_vector(const std::vector<double>& p, std::size_t expected,
                        const char* what) {
    if (p.size() != expected) {
        throw DimensionError(std::string(what) + " prior length does not match the matrix");
    }
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidValueError(std::string(what) + " prior entries must be nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
        throw InvalidValueError(std::string(what) + " prior must sum to 1");
    }
}

// Product along the reference diagonal, accumulated in log space so that
// large dimensions do not underflow. A zero entry yields exactly 0.
double diagonal_product(const std::vector<double>& data, std::size_t cols,
                        const Permutation& sigma) {
    double log_sum = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double v = data[i * cols + sigma[i]];
        if (v == 0.0) return 0.0;
        log_sum += std::log(v);
    }
    return std::exp(log_sum);
}

bool is_permutation_pattern(const Matrix& m) {
    if (!m.is_square()) return false;
    const std::size_t n = m.rows();
    std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) > 0.0) {
                ++row_count[i];
                ++col_count[j];
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (row_count[k] != 1 || col_count[k] != 1) return false;
    }
    return true;
}

} // namespace

Priors Priors::uniform(std::size_t num_datasets, std::size_t num_concepts) {
    if (num_datasets == 0 || num_concepts == 0) {
        throw InvalidValueError("prior dimensions must be positive");
    }
    return Priors{
        std::vector<double>(num_concepts, 1.0 / static_cast<double>(num_concepts)),
        std::vector<double>(num_datasets, 1.0 / static_cast<double>(num_datasets))};
}

bool Priors::is_uniform() const {
    auto flat = [](const std::vector<double>& p) {
        for (double v : p) {
            if (v != p.front()) return false;
        }
        return true;
    };
    return flat(concept_prior) && flat(dataset_prior);
}

void Priors::validate(std::size_t num_datasets, std::size_t num_concepts) const {
    check_prior_vector(concept_prior, num_concepts, "concept");
    check_prior_vector(dataset_prior, num_datasets, "data-set");
}

CooperativeResult cooperative_iterate(const Matrix& m, const Priors& priors,
                                      const IterationOptions& opts) {
    priors.validate(m.rows(), m.cols());
    if (opts.max_iter < 1) throw InvalidValueError("max_iter must be at least 1");
    if (!(opts.tol >= 0.0)) throw InvalidValueError("tolerance must be nonnegative");

    bool any_positive = false;
    for (double v : m.data()) any_positive = any_positive || v > 0.0;
    if (!any_positive) {
        throw DomainError("cooperative inference is undefined for an all-zero matrix");
    }

    if (opts.reference_diagonal) {
        if (!m.is_square()) {
            throw DimensionError("reference diagonals require a square matrix");
        }
        if (!is_permutation(*opts.reference_diagonal, m.rows())) {
            throw InvalidValueError("reference diagonal must be a permutation");
        }
    }
    const bool record = opts.record_trace || opts.reference_diagonal.has_value();

    const std::size_t rows = m.rows(), cols = m.cols();
    const auto& a = priors.concept_prior;
    const auto& b = priors.dataset_prior;

    // One matrix seeds the first half-step and is replaced by a genuine
    // iterate immediately; residuals against the seed are meaningless, so the
    // first computed iterate of each side reports an infinite residual.
    std::vector<double> learner(rows * cols, 0.0), teacher(rows * cols, 0.0);
    if (opts.start == StartSide::kLearner) {
        teacher.assign(m.data().begin(), m.data().end());
    } else {
        learner.assign(m.data().begin(), m.data().end());
    }
    std::vector<double> scratch(rows * cols);
    bool learner_is_iterate = false, teacher_is_iterate = false;

    // learner <- rownorm(teacher * diag(a))
    auto learner_update = [&]() {
        double worst = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < cols; ++j) sum += teacher[i * cols + j] * a[j];
            for (std::size_t j = 0; j < cols; ++j) {
                const std::size_t k = i * cols + j;
                const double v = sum == 0.0 ? 0.0 : teacher[k] * a[j] / sum;
                worst = std::max(worst, std::abs(v - learner[k]));
                scratch[k] = v;
            }
        }
        learner.swap(scratch);
        const double res = learner_is_iterate ? worst : kInf;
        learner_is_iterate = true;
        return res;
    };

    // teacher <- colnorm(diag(b) * learner)
    auto teacher_update = [&]() {
        double worst = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rows; ++i) sum += b[i] * learner[i * cols + j];
            for (std::size_t i = 0; i < rows; ++i) {
                const std::size_t k = i * cols + j;
                const double v = sum == 0.0 ? 0.0 : b[i] * learner[k] / sum;
                worst = std::max(worst, std::abs(v - teacher[k]));
                scratch[k] = v;
            }
        }
        teacher.swap(scratch);
        const double res = teacher_is_iterate ? worst : kInf;
        teacher_is_iterate = true;
        return res;
    };

    std::vector<TraceEntry> trace;
    auto record_side = [&](std::int64_t step, char side, double residual,
                           const std::vector<double>& data) {
        if (!record) return;
        double prod = std::numeric_limits<double>::quiet_NaN();
        if (opts.reference_diagonal) {
            prod = diagonal_product(data, cols, *opts.reference_diagonal);
        }
        trace.push_back(TraceEntry{step, side, residual, prod});
    };

    std::int64_t step = 0;
    double residual = kInf;
    bool converged = false;
    while (step < opts.max_iter) {
        ++step;
        double res_learner, res_teacher;
        if (opts.start == StartSide::kLearner) {
            res_learner = learner_update();
            record_side(step, 'L', res_learner, learner);
            res_teacher = teacher_update();
            record_side(step, 'T', res_teacher, teacher);
        } else {
            res_teacher = teacher_update();
            record_side(step, 'T', res_teacher, teacher);
            res_learner = learner_update();
            record_side(step, 'L', res_learner, learner);
        }
        residual = std::max(res_learner, res_teacher);
        if (residual <= opts.tol) {
            converged = true;
            break;
        }
    }

    return CooperativeResult{
        RowStochasticMatrix(Matrix(rows, cols, std::move(learner), m.index())),
        ColumnStochasticMatrix(Matrix(rows, cols, std::move(teacher), m.index())),
        step, converged, residual, std::move(trace)};
}

double cooperative_index(const Matrix& m, CiMode mode, std::int64_t max_iter,
                         double tol) {
    if (!m.is_square()) {
        throw DimensionError("the cooperative index requires a square matrix");
    }
    if (!has_positive_diagonal(m)) {
        throw DomainError("Sinkhorn limit does not exist for this pattern: "
                          "no positive diagonal");
    }

    Matrix work = mode == CiMode::kStructural ? prune_to_diagonal_support(m) : m;
    if (mode == CiMode::kStructural && is_permutation_pattern(work)) {
        return 1.0;
    }
    IterationOptions opts;
    opts.max_iter = max_iter;
    opts.tol = tol;
    const CooperativeResult result =
        cooperative_iterate(work, Priors::uniform(m.rows(), m.cols()), opts);
    return transmission_index(result.learner, result.teacher);
}

Matrix prune_to_diagonal_support(const Matrix& m) {
    if (!m.is_square()) {
        throw DimensionError("diagonal-support pruning requires a square matrix");
    }
    if (!has_positive_diagonal(m)) {
        throw DomainError("no positive diagonal: every entry would be pruned");
    }
    std::vector<double> out(m.data().begin(), m.data().end());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) > 0.0 && !diagonal_support_entry(m, i, j)) {
                out[i * m.cols() + j] = 0.0;
            }
        }
    }
    return Matrix(m.rows(), m.cols(), std::move(out), m.index());
}

} // namespace coopinf
