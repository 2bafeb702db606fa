#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coopinf/matrix.hpp"

namespace coopinf {

/// Learner prior over concepts and teacher prior over data sets. Each vector
/// is nonnegative and sums to 1 within kStochasticTol.
struct Priors {
    std::vector<double> concept_prior; // length |H|
    std::vector<double> dataset_prior; // length |D|

    static Priors uniform(std::size_t num_datasets, std::size_t num_concepts);
    bool is_uniform() const;
    void validate(std::size_t num_datasets, std::size_t num_concepts) const;
};

/// Which half-step opens the iteration. The default runs the learner update
/// first; the teacher-first variant is the symmetric alternative.
enum class StartSide { kLearner, kTeacher };

/// One recorded half-step of the iteration.
struct TraceEntry {
    std::int64_t step = 0;            ///< full-iteration index, starting at 1
    char side = 'L';                  ///< 'L' or 'T'
    double residual = 0.0;            ///< max entrywise change of this side's matrix
    double diagonal_product = 0.0;    ///< product along the reference diagonal (NaN if none)
};

struct IterationOptions {
    std::int64_t max_iter = 1'000'000;
    double tol = 1e-10;
    StartSide start = StartSide::kLearner;
    /// When set, the product of entries along this positive diagonal is
    /// recorded after every half-step; these products form a nondecreasing
    /// sequence bounded by 1. Accumulated in log space.
    std::optional<Permutation> reference_diagonal;
    /// Record TraceEntry rows; implied by reference_diagonal.
    bool record_trace = false;
};

struct CooperativeResult {
    RowStochasticMatrix learner;
    ColumnStochasticMatrix teacher;
    std::int64_t iterations = 0;
    bool converged = false;
    double residual = 0.0; ///< max entrywise change over the last full step
    std::vector<TraceEntry> trace;
};

/// Alternating prior-weighted row/column normalization of the shared
/// likelihood matrix. Each full step applies the learner update
/// L -> rownorm(T * diag(concept_prior)) and the teacher update
/// T -> colnorm(diag(dataset_prior) * L), in the order given by `start`,
/// with T initialized from m. Stops when the max entrywise change of both
/// matrices is at most tol, or after max_iter steps. Zero rows and zero
/// columns of m stay fixed throughout.
CooperativeResult cooperative_iterate(const Matrix& m, const Priors& priors,
                                      const IterationOptions& opts = {});

enum class CiMode {
    kIterative,  ///< iterate m as given and evaluate TI at the limit
    kStructural, ///< prune entries off every positive diagonal first;
                 ///< a permutation pattern short-circuits to exactly 1
};

/// Cooperative Index: TI evaluated at the Sinkhorn fixed point of m under
/// uniform priors. Requires m square with at least one positive diagonal
/// (throws DomainError otherwise). Structural mode is the recommended path:
/// after pruning, the iteration converges geometrically.
double cooperative_index(const Matrix& m, CiMode mode = CiMode::kStructural,
                         std::int64_t max_iter = 1'000'000, double tol = 1e-10);

/// Zeroes every entry of m lying on no positive diagonal. The surviving
/// pattern equals the support of the Sinkhorn limit. Requires at least one
/// positive diagonal.
Matrix prune_to_diagonal_support(const Matrix& m);

} // namespace coopinf
