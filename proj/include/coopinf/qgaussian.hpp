#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coopinf/matrix.hpp"

namespace coopinf {

/// Unit-variance q-Gaussian density
///   N_q(z; mu) = sqrt(beta)/C_q * e_q(-beta (z - mu)^2),  beta = 1/(5 - 3q),
/// where e_q is the q-exponential and C_q the exact normalizing constant.
/// Compact support of radius 1/sqrt(beta (1-q)) for q < 1, the standard
/// normal at q = 1, fat tails for q > 1. Requires q < 5/3 so that beta > 0.
class QGaussian {
public:
    explicit QGaussian(double q, double mu = 0.0);

    double q() const { return q_; }
    double mu() const { return mu_; }
    double beta() const { return beta_; }

    /// Density at z; exactly 0 outside the support when q < 1.
    double density(double z) const;

    /// Support half-width around mu; +infinity for q >= 1.
    double support_radius() const;

private:
    double q_;
    double mu_;
    double beta_;
    double norm_;     // sqrt(beta) / C_q
    double exponent_; // 1 / (1 - q), unused when q == 1
    double coef_;     // (1 - q) * beta, unused when q == 1
};

double q_gaussian_density(double z, const QGaussian& params);

/// Regular search grid for one-dimensional maximum-likelihood location fits.
struct FitGrid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1e-3;

    std::vector<double> points() const;
};

struct FitResult {
    double location = 0.0;   ///< grid point maximizing the likelihood
    double likelihood = 0.0; ///< the maximized product of densities
};

/// Grid-search maximum likelihood of a constant fit: the grid point b
/// maximizing prod_i N_q(y_i; b). Ties break toward the smallest b. The grid
/// must cover [min(ys), max(ys)]. Throws DomainError when every grid point
/// has zero likelihood, which happens for compact-support q when the data
/// spread exceeds the support diameter.
FitResult ml_horizontal_fit(std::span<const double> ys, double q,
                            const FitGrid& grid);

/// Polynomial-regression comparison scenario. Six observations at
/// x = {-1,-1,0,0,1,1} with responses {a, -a, D+a, D-a, a, -a}; the first
/// four form data set D1, all six form D2, and the hypotheses are a line and
/// a parabola sharing the q-Gaussian error model. D/a acts as the
/// signal-to-noise ratio of the quadratic component.
struct RegressionScenario {
    double a = 0.0;
    double delta = 0.0;
    double q = 0.0;
    FitGrid fit_grid;

    /// Offsets in [-(delta+a)-1, delta+a+1]; the ML location is always
    /// bracketed by the data range.
    static RegressionScenario with_default_grid(double q, double a, double delta,
                                                double fit_step = 1e-3);
    void validate() const;

    /// The six responses, in presentation order.
    std::vector<double> responses() const;
};

/// 2x2 likelihood matrix of the scenario. Rows index the data sets {D1, D2},
/// columns the hypotheses {line, parabola}:
///   m(0,0) = m(0,1): both hypotheses interpolate D1's two per-location
///                    midpoints, so each entry is the squared per-location
///                    maximum of N_q(c-a) N_q(c+a);
///   m(1,0): grid-search ML of a horizontal line through all six responses;
///   m(1,1) = N_q(a; 0)^6: the parabola through the three midpoints.
/// Infeasible fits produce zero entries, never errors: a zero is meaningful.
Matrix build_regression_matrix(const RegressionScenario& scenario);

/// build_regression_matrix plus the symmetry cross-checks. The midpoint
/// closed forms agree with the grid search whenever the density is
/// log-concave (q <= 1); for fat tails the paired-product maximum can sit
/// off-center, which the flags report.
struct RegressionMatrixDetails {
    Matrix m{1, 1, 0.0};
    double horizontal_location = 0.0; ///< ML offset of the line fit (NaN if infeasible)
    double m11_closed_form = 0.0;     ///< N_q(a;0)^4
    double m22_closed_form = 0.0;     ///< N_q(a;0)^6, the value placed in m(1,1)
    double m11_grid = 0.0;            ///< per-location grid maximum squared, placed in m(0,0)
    double m22_grid = 0.0;            ///< per-location grid maximum cubed (cross-check)
    bool m11_off_center = false;      ///< grid search strictly beat the midpoint
    bool m22_off_center = false;
};

RegressionMatrixDetails build_regression_matrix_details(const RegressionScenario& s);

/// One axis of the cooperative-index sweep.
struct SweepGrid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::vector<double> points() const;
};

/// Cooperative index over a grid of (a, delta) scenarios. Cells are laid out
/// delta-major: ci[di * a_values.size() + ai]. Undefined cells (no positive
/// diagonal, or any per-cell construction failure) hold NaN.
struct PhaseDiagram {
    std::vector<double> a_values;
    std::vector<double> delta_values;
    std::vector<double> ci;

    double at(std::size_t ai, std::size_t di) const {
        return ci[di * a_values.size() + ai];
    }
};

inline constexpr SweepGrid kDefaultAGrid{0.05, 3.0, 0.05};
inline constexpr SweepGrid kDefaultDeltaGrid{0.10, 3.0, 0.05};

/// Sweeps the scenario grid and evaluates the structural-mode cooperative
/// index per cell. Cells are independent; they are computed in parallel and
/// the result is identical for any thread count (0 = hardware default).
PhaseDiagram phase_diagram(double q, const SweepGrid& a_grid = kDefaultAGrid,
                           const SweepGrid& delta_grid = kDefaultDeltaGrid,
                           double fit_step = 1e-3, unsigned threads = 0);

/// CSV with header "a,delta,ci", one row per cell, delta-major; NaN cells
/// emit an empty ci field. Values use fixed notation with `precision`
/// decimals.
void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram,
                             int precision = 6);

} // namespace coopinf
