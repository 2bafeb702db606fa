#include "coopinf/qgaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "coopinf/sinkhorn.hpp"
#include "coopinf/structure.hpp"

namespace coopinf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sqrt_pi() { return std::sqrt(std::acos(-1.0)); }

// Exact normalizing constant of the q-exponential kernel, three branches.
double normalizer(double q) {
    if (q == 1.0) return sqrt_pi();
    if (q < 1.0) {
        const double one_minus = 1.0 - q;
        return 2.0 * sqrt_pi() * std::tgamma(1.0 / one_minus) /
               ((3.0 - q) * std::sqrt(one_minus) *
                std::tgamma((3.0 - q) / (2.0 * one_minus)));
    }
    const double q_minus = q - 1.0;
    return sqrt_pi() * std::tgamma((3.0 - q) / (2.0 * q_minus)) /
           (std::sqrt(q_minus) * std::tgamma(1.0 / q_minus));
}

} // namespace

QGaussian::QGaussian(double q, double mu) : q_(q), mu_(mu) {
    if (!std::isfinite(q) || !std::isfinite(mu)) {
        throw InvalidValueError("q and mu must be finite");
    }
    if (q >= 5.0 / 3.0) {
        throw InvalidValueError("q must be below 5/3 for a unit-variance q-Gaussian");
    }
    beta_ = 1.0 / (5.0 - 3.0 * q);
    norm_ = std::sqrt(beta_) / normalizer(q);
    exponent_ = q == 1.0 ? 0.0 : 1.0 / (1.0 - q);
    coef_ = (1.0 - q) * beta_;
}

double QGaussian::density(double z) const {
    const double dz = z - mu_;
    if (q_ == 1.0) {
        return norm_ * std::exp(-beta_ * dz * dz);
    }
    const double t = 1.0 - coef_ * dz * dz;
    if (t <= 0.0) return 0.0; // outside the compact support (q < 1 only)
    double kernel;
    if (exponent_ == 1.0) {
        kernel = t;
    } else if (exponent_ == -2.0) {
        kernel = 1.0 / (t * t);
    } else {
        kernel = std::pow(t, exponent_);
    }
    return norm_ * kernel;
}

double QGaussian::support_radius() const {
    if (q_ >= 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(beta_ * (1.0 - q_));
}

double q_gaussian_density(double z, const QGaussian& params) {
    return params.density(z);
}

std::vector<double> FitGrid::points() const {
    if (!(step > 0.0) || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidValueError("fit grid needs lo < hi and a positive step");
    }
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>((hi - lo) / step) + 2);
    for (std::size_t k = 0;; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        if (x > hi + step * 1e-9) break;
        pts.push_back(x);
    }
    return pts;
}

FitResult ml_horizontal_fit(std::span<const double> ys, double q,
                            const FitGrid& grid) {
    if (ys.empty()) throw InvalidValueError("cannot fit an empty sample");
    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    if (grid.lo > *lo_it || grid.hi < *hi_it) {
        throw InvalidValueError("fit grid must cover the data range");
    }
    const QGaussian base(q, 0.0);
    FitResult best{0.0, 0.0};
    bool found = false;
    for (double b : grid.points()) {
        double likelihood = 1.0;
        for (double y : ys) {
            likelihood *= base.density(y - b);
            if (likelihood == 0.0) break;
        }
        if (likelihood > best.likelihood) { // strict: ties keep the smallest b
            best = FitResult{b, likelihood};
            found = true;
        }
    }
    if (!found) {
        throw DomainError("no feasible fit: every offset leaves some point "
                          "outside the likelihood support");
    }
    return best;
}

RegressionScenario RegressionScenario::with_default_grid(double q, double a,
                                                         double delta,
                                                         double fit_step) {
    RegressionScenario s;
    s.a = a;
    s.delta = delta;
    s.q = q;
    s.fit_grid = FitGrid{-(delta + a) - 1.0, delta + a + 1.0, fit_step};
    s.validate();
    return s;
}

void RegressionScenario::validate() const {
    if (!(a > 0.0) || !(delta > 0.0) || !std::isfinite(a) || !std::isfinite(delta)) {
        throw InvalidValueError("scenario requires positive finite a and delta");
    }
    if (!(fit_grid.step > 0.0) || !(fit_grid.lo < fit_grid.hi)) {
        throw InvalidValueError("fit grid needs lo < hi and a positive step");
    }
}

std::vector<double> RegressionScenario::responses() const {
    return {a, -a, delta + a, delta - a, a, -a};
}

namespace {

// Best achievable likelihood of one x-location's response pair {m-a, m+a}
// when the hypothesis may choose the fitted value freely: the grid maximum
// over c of N_q(c-a) N_q(c+a). Zero when the pair is wider than the support.
double per_location_best(const QGaussian& base, double a, const FitGrid& grid) {
    double best = 0.0;
    for (double c : grid.points()) {
        best = std::max(best, base.density(c - a) * base.density(c + a));
    }
    return best;
}

} // namespace

RegressionMatrixDetails build_regression_matrix_details(const RegressionScenario& s) {
    s.validate();
    const QGaussian base(s.q, 0.0);

    RegressionMatrixDetails d;
    const double pair_best = per_location_best(base, s.a, s.fit_grid);
    const double at_midpoint = base.density(s.a) * base.density(-s.a);

    d.m11_grid = pair_best * pair_best;
    d.m11_closed_form = at_midpoint * at_midpoint;
    d.m22_grid = pair_best * pair_best * pair_best;
    d.m22_closed_form = std::pow(base.density(s.a), 6.0);

    // Off-center means the search strictly improved on the symmetric fit
    // (possible only for the non-log-concave fat-tailed branch).
    const double slack = 1.0 + 1e-9;
    d.m11_off_center = pair_best > at_midpoint * slack;
    d.m22_off_center = d.m11_off_center;

    double m21 = 0.0;
    d.horizontal_location = kNaN;
    const std::vector<double> ys = s.responses();
    try {
        const FitResult fit = ml_horizontal_fit(ys, s.q, s.fit_grid);
        m21 = fit.likelihood;
        d.horizontal_location = fit.location;
    } catch (const DomainError&) {
        // infeasible fit: the entry is a legitimate zero
    }

    d.m = Matrix(2, 2,
                 {d.m11_grid, d.m11_grid, m21, d.m22_closed_form},
                 SpaceIndex({"D1", "D2"}, {"line", "parabola"}, {4, 6}));
    return d;
}

Matrix build_regression_matrix(const RegressionScenario& scenario) {
    return build_regression_matrix_details(scenario).m;
}

std::vector<double> SweepGrid::points() const {
    if (!(step > 0.0) || !(lo <= hi)) {
        throw InvalidValueError("sweep grid needs lo <= hi and a positive step");
    }
    std::vector<double> pts;
    for (std::size_t k = 0;; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        if (x > hi + step * 1e-9) break;
        pts.push_back(x);
    }
    return pts;
}

PhaseDiagram phase_diagram(double q, const SweepGrid& a_grid,
                           const SweepGrid& delta_grid, double fit_step,
                           unsigned threads) {
    PhaseDiagram diagram;
    diagram.a_values = a_grid.points();
    diagram.delta_values = delta_grid.points();
    const std::size_t na = diagram.a_values.size();
    const std::size_t nd = diagram.delta_values.size();
    diagram.ci.assign(na * nd, kNaN);

    auto compute_cell = [&](std::size_t di, std::size_t ai) {
        try {
            const RegressionScenario s = RegressionScenario::with_default_grid(
                q, diagram.a_values[ai], diagram.delta_values[di], fit_step);
            const Matrix m = build_regression_matrix(s);
            if (!has_positive_diagonal(m)) return; // stays NaN
            diagram.ci[di * na + ai] = cooperative_index(m, CiMode::kStructural);
        } catch (const Error&) {
            // per-cell failures are recorded as NaN, never thrown
        }
    };

    unsigned n_threads = threads != 0 ? threads : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(nd)));
    if (n_threads == 1) {
        for (std::size_t di = 0; di < nd; ++di) {
            for (std::size_t ai = 0; ai < na; ++ai) compute_cell(di, ai);
        }
    } else {
        // Cells are independent and write to disjoint slots, so a static
        // split over delta rows is deterministic.
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t di = t; di < nd; di += n_threads) {
                    for (std::size_t ai = 0; ai < na; ++ai) compute_cell(di, ai);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return diagram;
}

void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram,
                             int precision) {
    char buf[64];
    auto fixed = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.*f", precision, v);
        return std::string(buf);
    };
    out << "a,delta,ci\n";
    for (std::size_t di = 0; di < diagram.delta_values.size(); ++di) {
        for (std::size_t ai = 0; ai < diagram.a_values.size(); ++ai) {
            const double ci = diagram.at(ai, di);
            out << fixed(diagram.a_values[ai]) << ',' << fixed(diagram.delta_values[di])
                << ',';
            if (!std::isnan(ci)) out << fixed(ci);
            out << '\n';
        }
    }
}

} // namespace coopinf
