#include "coopinf/teaching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace coopinf {

TeachingDimension::TeachingDimension(double value) : value_(value) {
    if (std::isnan(value_) || value_ < 0.0) {
        throw InvalidValueError("teaching dimension must be nonnegative or infinite");
    }
}

TeachingDimension TeachingDimension::infinite() {
    return TeachingDimension(std::numeric_limits<double>::infinity());
}

bool TeachingDimension::is_infinite() const { return std::isinf(value_); }

TeachingDimension operator+(TeachingDimension a, TeachingDimension b) {
    return TeachingDimension(a.value_ + b.value_);
}

TeachingDimension min(TeachingDimension a, TeachingDimension b) {
    return TeachingDimension(std::min(a.value_, b.value_));
}

ConsistencyMatrix::ConsistencyMatrix(Matrix entries,
                                     std::vector<std::int64_t> dataset_sizes)
    : m_(std::move(entries)), sizes_(std::move(dataset_sizes)) {
    for (double v : m_.data()) {
        if (v != 0.0 && v != 1.0) {
            throw InvalidValueError("consistency matrices hold exactly 0 or 1");
        }
    }
    if (sizes_.size() != m_.rows()) {
        throw DimensionError("dataset_sizes length must match the number of data sets");
    }
    for (std::int64_t s : sizes_) {
        if (s < 0) throw InvalidValueError("data-set sizes must be nonnegative");
    }
}

ConsistencyMatrix ConsistencyMatrix::with_unit_sizes(Matrix entries) {
    std::vector<std::int64_t> sizes(entries.rows(), 1);
    return ConsistencyMatrix(std::move(entries), std::move(sizes));
}

namespace {

std::vector<std::int64_t> sizes_for(const Matrix& m) {
    if (m.index()) return m.index()->dataset_sizes();
    return std::vector<std::int64_t>(m.rows(), 1);
}

void require_probabilities(const Matrix& m) {
    for (double v : m.data()) {
        if (v > 1.0) {
            throw InvalidValueError("probability entries must lie in [0, 1]");
        }
    }
}

} // namespace

ConsistencyMatrix sample_consistency(const Matrix& mprob, std::uint64_t seed) {
    require_probabilities(mprob);
    std::mt19937_64 rng(seed);
    std::vector<double> out(mprob.rows() * mprob.cols());
    for (std::size_t i = 0; i < mprob.rows(); ++i) {
        for (std::size_t j = 0; j < mprob.cols(); ++j) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            out[i * mprob.cols() + j] = u < mprob(i, j) ? 1.0 : 0.0;
        }
    }
    return ConsistencyMatrix(
        Matrix(mprob.rows(), mprob.cols(), std::move(out), mprob.index()),
        sizes_for(mprob));
}

ConsistencyMatrix threshold_round(const Matrix& mprob, double threshold) {
    require_probabilities(mprob);
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidValueError("rounding threshold must lie strictly inside (0, 1)");
    }
    std::vector<double> out(mprob.rows() * mprob.cols());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = mprob.data()[k] > threshold ? 1.0 : 0.0;
    }
    return ConsistencyMatrix(
        Matrix(mprob.rows(), mprob.cols(), std::move(out), mprob.index()),
        sizes_for(mprob));
}

TeachingDimension teaching_dimension(const ConsistencyMatrix& c,
                                     std::size_t concept_index) {
    if (concept_index >= c.cols()) {
        throw DimensionError("concept index out of range");
    }
    TeachingDimension best = TeachingDimension::infinite();
    for (std::size_t i = 0; i < c.rows(); ++i) {
        if (!c.at(i, concept_index)) continue;
        bool unique = true;
        for (std::size_t j = 0; j < c.cols() && unique; ++j) {
            if (j != concept_index && c.at(i, j)) unique = false;
        }
        if (unique) {
            best = min(best, TeachingDimension(
                                 static_cast<double>(c.dataset_sizes()[i])));
        }
    }
    return best;
}

TeachingDimension average_teaching_dimension(const ConsistencyMatrix& c) {
    TeachingDimension total;
    for (std::size_t j = 0; j < c.cols(); ++j) {
        total = total + teaching_dimension(c, j);
    }
    if (total.is_infinite()) return total;
    return TeachingDimension(total.value() / static_cast<double>(c.cols()));
}

std::vector<std::vector<std::size_t>> teaching_sets(const ConsistencyMatrix& c) {
    std::vector<std::vector<std::size_t>> sets(c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i) {
        std::size_t consistent = 0, only = 0;
        for (std::size_t j = 0; j < c.cols(); ++j) {
            if (c.at(i, j)) {
                ++consistent;
                only = j;
            }
        }
        if (consistent == 1) sets[only].push_back(i);
    }
    return sets;
}

RowStochasticMatrix build_threshold_learner(const ThresholdProblem& problem) {
    const auto& thetas = problem.thresholds;
    const auto& xs = problem.instances;
    if (thetas.empty() || xs.empty()) {
        throw InvalidValueError("threshold problems need nonempty thresholds and instances");
    }
    if (!std::is_sorted(thetas.begin(), thetas.end(), std::less_equal<int>())) {
        throw InvalidValueError("thresholds must be strictly increasing");
    }
    if (!std::is_sorted(xs.begin(), xs.end(), std::less_equal<int>())) {
        throw InvalidValueError("instances must be strictly increasing");
    }

    std::vector<double> entries;
    std::vector<std::string> row_labels;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        for (std::size_t q = p + 1; q < xs.size(); ++q) {
            const int x1 = xs[p], x2 = xs[q];
            // h_theta is consistent with {(x1,-), (x2,+)} iff x1 < theta <= x2.
            std::vector<std::size_t> consistent;
            for (std::size_t t = 0; t < thetas.size(); ++t) {
                if (x1 < thetas[t] && thetas[t] <= x2) consistent.push_back(t);
            }
            if (consistent.empty()) {
                throw DomainError("malformed problem: data set {" + std::to_string(x1) +
                                  ",-," + std::to_string(x2) +
                                  ",+} is consistent with no threshold");
            }
            std::vector<double> row(thetas.size(), 0.0);
            const double mass = 1.0 / static_cast<double>(consistent.size());
            for (std::size_t t : consistent) row[t] = mass;
            entries.insert(entries.end(), row.begin(), row.end());
            row_labels.push_back("{" + std::to_string(x1) + ",-," +
                                 std::to_string(x2) + ",+}");
        }
    }

    std::vector<std::string> col_labels;
    col_labels.reserve(thetas.size());
    for (int t : thetas) col_labels.push_back("h" + std::to_string(t));
    const std::size_t num_rows = row_labels.size();
    SpaceIndex index(std::move(row_labels), std::move(col_labels),
                     std::vector<std::int64_t>(num_rows, 2));
    return RowStochasticMatrix(
        Matrix(num_rows, thetas.size(), std::move(entries), std::move(index)));
}

} // namespace coopinf
