// coopinf: command-line front end for the cooperative-inference toolkit.
// Every command reads matrices from files (headerless CSV or the JSON schema
// in matrix_io.hpp), prints deterministic text, and maps failures to the exit
// codes documented in --help.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coopinf/matrix.hpp"
#include "coopinf/matrix_io.hpp"
#include "coopinf/qgaussian.hpp"
#include "coopinf/sinkhorn.hpp"
#include "coopinf/structure.hpp"
#include "coopinf/teaching.hpp"
#include "coopinf/transmission.hpp"

namespace {

using namespace coopinf;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  command-line usage error\n"
    "  2  file I/O error (unreadable or unwritable path)\n"
    "  3  malformed input (unparseable file or invalid values)\n"
    "  4  dimension mismatch\n"
    "  5  domain error (no positive diagonal, undefined ETD, unteachable\n"
    "     concept, infeasible fit, dimension above the permanent cap)\n";

struct CommonOptions {
    double tol = 1e-10;
    std::int64_t max_iter = 1'000'000;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string output;
    int precision = 6;
};

MatrixFormat parse_format(const std::string& name) {
    if (name == "csv") return MatrixFormat::kCsv;
    if (name == "json") return MatrixFormat::kJson;
    throw InvalidValueError("unknown format '" + name + "' (expected csv or json)");
}

std::string fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string scientific(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    return buf;
}

// Fixed formatting with trailing zeros trimmed: 2.000000 -> 2, 2.500000 -> 2.5.
std::string trimmed(double v, int precision) {
    if (std::isinf(v)) return "inf";
    std::string s = fixed(v, precision);
    if (s.find('.') != std::string::npos) {
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

// Writes to --output when given, else to stdout.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw IoError("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void print_matrix(std::ostream& out, const Matrix& m, int precision) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << fixed(m(i, j), precision);
        }
        out << '\n';
    }
}

void print_permutation(std::ostream& out, const char* name, const Permutation& p) {
    out << name << ':';
    for (std::size_t v : p) out << ' ' << v;
    out << '\n';
}

std::vector<std::int64_t> resolve_sizes(const Matrix& m,
                                        const std::vector<std::int64_t>& flag_sizes) {
    if (!flag_sizes.empty()) {
        if (flag_sizes.size() != m.rows()) {
            throw DimensionError("--sizes must list one size per matrix row");
        }
        return flag_sizes;
    }
    if (m.index()) return m.index()->dataset_sizes();
    throw InvalidValueError(
        "data-set sizes required: pass --sizes or use the JSON format");
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidValueError(std::string(flag) + " expects lo:hi");
    }
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidValueError(std::string(flag) + " expects numeric lo:hi");
    }
}

int run_ti(const CommonOptions& common, const std::string& learner_path,
           const std::string& teacher_path) {
    const MatrixFormat fmt = parse_format(common.format);
    const RowStochasticMatrix learner(read_matrix_file(learner_path, fmt));
    const ColumnStochasticMatrix teacher(read_matrix_file(teacher_path, fmt));
    const TiCertificate cert = ti_certificate(learner, teacher, common.tol);

    OutputStream output(common.output);
    std::ostream& out = output.get();
    out << "TI = " << fixed(cert.ti_value, common.precision) << '\n';
    out << "condition (i) holds: " << (cert.condition_i_holds ? "yes" : "no") << '\n';
    out << "condition (ii) holds: " << (cert.condition_ii_holds ? "yes" : "no") << '\n';
    if (!cert.violations.empty()) {
        out << "condition (i) violated at:";
        for (const auto& [i, j] : cert.violations) out << " (" << i << ',' << j << ')';
        out << '\n';
    }
    for (std::size_t j : cert.zero_columns_learner) {
        out << "zero learner column: " << j << '\n';
    }
    for (std::size_t j : cert.zero_columns_teacher) {
        out << "zero teacher column: " << j << '\n';
    }
    return 0;
}

int run_etd(const CommonOptions& common, const std::string& matrix_path,
            const std::vector<std::int64_t>& sizes_flag) {
    const Matrix m = read_matrix_file(matrix_path, parse_format(common.format));
    const auto sizes = resolve_sizes(m, sizes_flag);
    const double etd =
        expected_teaching_dimension(row_normalize(m), column_normalize(m), sizes);
    OutputStream output(common.output);
    output.get() << "ETD = " << fixed(etd, common.precision) << '\n';
    return 0;
}

int run_atd(const CommonOptions& common, const std::string& matrix_path,
            const std::vector<std::int64_t>& sizes_flag) {
    const Matrix m = read_matrix_file(matrix_path, parse_format(common.format));
    const ConsistencyMatrix c(m, resolve_sizes(m, sizes_flag));
    const TeachingDimension atd = average_teaching_dimension(c);
    OutputStream output(common.output);
    output.get() << "ATD = " << trimmed(atd.value(), common.precision) << '\n';
    return 0;
}

int run_ci(const CommonOptions& common, const std::string& matrix_path,
           const std::string& mode_name) {
    const Matrix m = read_matrix_file(matrix_path, parse_format(common.format));
    if (!m.is_square()) {
        throw DimensionError("the cooperative index requires a square matrix");
    }
    if (!has_positive_diagonal(m)) {
        throw DomainError("Sinkhorn limit does not exist for this pattern: "
                          "no positive diagonal");
    }

    double ci = 0.0;
    std::int64_t iterations = 0;
    if (mode_name == "structural") {
        ci = cooperative_index(m, CiMode::kStructural, common.max_iter, common.tol);
        if (ci != 1.0) {
            IterationOptions opts;
            opts.max_iter = common.max_iter;
            opts.tol = common.tol;
            const auto result = cooperative_iterate(
                prune_to_diagonal_support(m),
                Priors::uniform(m.rows(), m.cols()), opts);
            iterations = result.iterations;
        }
    } else if (mode_name == "iterative") {
        IterationOptions opts;
        opts.max_iter = common.max_iter;
        opts.tol = common.tol;
        const auto result =
            cooperative_iterate(m, Priors::uniform(m.rows(), m.cols()), opts);
        iterations = result.iterations;
        ci = transmission_index(result.learner, result.teacher);
    } else {
        throw InvalidValueError("unknown mode '" + mode_name +
                                "' (expected structural or iterative)");
    }

    OutputStream output(common.output);
    std::ostream& out = output.get();
    out << "CI = " << fixed(ci, common.precision) << '\n';
    out << "iterations: " << iterations << '\n';
    if (m.rows() <= kPermanentDimensionCap) {
        out << "positive diagonals: " << count_positive_diagonals(m) << '\n';
    } else {
        out << "positive diagonals: not computed (dimension above "
            << kPermanentDimensionCap << ")\n";
    }
    const auto witness = triangularize(m);
    out << "triangularizable: " << (witness ? "yes" : "no") << '\n';
    if (witness) {
        print_permutation(out, "row_perm", witness->row_perm);
        print_permutation(out, "col_perm", witness->col_perm);
    }
    return 0;
}

int run_sinkhorn(const CommonOptions& common, const std::string& matrix_path,
                 const std::string& start_name, const std::string& trace_path,
                 const std::string& learner_out, const std::string& teacher_out) {
    const MatrixFormat fmt = parse_format(common.format);
    const Matrix m = read_matrix_file(matrix_path, fmt);

    IterationOptions opts;
    opts.max_iter = common.max_iter;
    opts.tol = common.tol;
    if (start_name == "teacher") {
        opts.start = StartSide::kTeacher;
    } else if (start_name != "learner") {
        throw InvalidValueError("unknown start side '" + start_name +
                                "' (expected learner or teacher)");
    }
    if (!trace_path.empty()) {
        opts.record_trace = true;
        if (m.is_square()) opts.reference_diagonal = find_positive_diagonal(m);
    }

    const CooperativeResult result =
        cooperative_iterate(m, Priors::uniform(m.rows(), m.cols()), opts);

    if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) {
            throw IoError("cannot open '" + trace_path +
                                         "' for writing");
        }
        trace << "step,side,residual,diagonal_product\n";
        for (const auto& entry : result.trace) {
            trace << entry.step << ',' << entry.side << ','
                  << scientific(entry.residual, common.precision) << ',';
            if (!std::isnan(entry.diagonal_product)) {
                trace << scientific(entry.diagonal_product, common.precision);
            }
            trace << '\n';
        }
    }
    if (!learner_out.empty()) write_matrix_file(learner_out, result.learner.matrix(), fmt);
    if (!teacher_out.empty()) write_matrix_file(teacher_out, result.teacher.matrix(), fmt);

    OutputStream output(common.output);
    std::ostream& out = output.get();
    out << "iterations: " << result.iterations << '\n';
    out << "converged: " << (result.converged ? "yes" : "no") << '\n';
    out << "residual: " << scientific(result.residual, common.precision) << '\n';
    out << "L =\n";
    print_matrix(out, result.learner.matrix(), common.precision);
    out << "T =\n";
    print_matrix(out, result.teacher.matrix(), common.precision);
    return 0;
}

int run_diagonals(const CommonOptions& common, const std::string& matrix_path) {
    const Matrix m = read_matrix_file(matrix_path, parse_format(common.format));
    OutputStream output(common.output);
    output.get() << "positive diagonals: " << count_positive_diagonals(m) << '\n';
    return 0;
}

int run_triangularize(const CommonOptions& common, const std::string& matrix_path) {
    const Matrix m = read_matrix_file(matrix_path, parse_format(common.format));
    const auto witness = triangularize(m);
    OutputStream output(common.output);
    std::ostream& out = output.get();
    if (!witness) {
        out << "none\n";
        return 0;
    }
    print_permutation(out, "row_perm", witness->row_perm);
    print_permutation(out, "col_perm", witness->col_perm);
    return 0;
}

int run_mt_demo(const CommonOptions& common) {
    const ThresholdProblem problem{{1, 2, 3}, {0, 1, 2, 3}};
    const RowStochasticMatrix learner = build_threshold_learner(problem);
    const SpaceIndex& index = *learner.matrix().index();

    OutputStream output(common.output);
    std::ostream& out = output.get();

    std::size_t label_width = 0;
    for (const auto& l : index.dataset_labels()) {
        label_width = std::max(label_width, l.size());
    }
    const std::size_t cell_width = static_cast<std::size_t>(common.precision) + 2;
    out << std::string(label_width, ' ');
    for (const auto& h : index.concept_labels()) {
        out << "  " << std::string(cell_width > h.size() ? cell_width - h.size() : 0, ' ')
            << h;
    }
    out << '\n';
    for (std::size_t i = 0; i < learner.rows(); ++i) {
        const std::string& label = index.dataset_labels()[i];
        out << label << std::string(label_width - label.size(), ' ');
        for (std::size_t j = 0; j < learner.cols(); ++j) {
            out << "  " << fixed(learner(i, j), common.precision);
        }
        out << '\n';
    }

    const ColumnStochasticMatrix full_teacher = machine_teaching_matrix(learner);
    out << "TI(full) = "
        << fixed(transmission_index(learner, full_teacher), common.precision) << '\n';

    // Same learner restricted to the three data sets anchored at instance 0.
    const std::size_t kept = 3;
    std::vector<double> truncated(learner.matrix().data().begin(),
                                  learner.matrix().data().begin() +
                                      static_cast<std::ptrdiff_t>(kept * learner.cols()));
    const RowStochasticMatrix small(
        Matrix(kept, learner.cols(), std::move(truncated)));
    const ColumnStochasticMatrix small_teacher = machine_teaching_matrix(small);
    out << "TI(truncated) = "
        << fixed(transmission_index(small, small_teacher), common.precision) << '\n';
    return 0;
}

int run_simulate(const CommonOptions& common, const std::string& learner_path,
                 const std::string& teacher_path, std::int64_t episodes) {
    const MatrixFormat fmt = parse_format(common.format);
    const RowStochasticMatrix learner(read_matrix_file(learner_path, fmt));
    const ColumnStochasticMatrix teacher(read_matrix_file(teacher_path, fmt));
    const double estimate =
        simulate_transmission(learner, teacher, episodes, common.seed);
    OutputStream output(common.output);
    output.get() << "simulated TI = " << fixed(estimate, common.precision) << '\n';
    return 0;
}

int run_phase_diagram(const CommonOptions& common, double q,
                      const std::string& a_range, const std::string& delta_range,
                      double step, double fit_step, unsigned threads) {
    const auto [a_lo, a_hi] = parse_range(a_range, "--a-range");
    const auto [d_lo, d_hi] = parse_range(delta_range, "--delta-range");
    const PhaseDiagram diagram = phase_diagram(
        q, SweepGrid{a_lo, a_hi, step}, SweepGrid{d_lo, d_hi, step}, fit_step, threads);
    OutputStream output(common.output);
    write_phase_diagram_csv(output.get(), diagram, common.precision);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative-inference toolkit: transmission and cooperative "
                 "indices, teaching dimensions, Sinkhorn fixed points, and "
                 "q-Gaussian regression sweeps"};
    app.require_subcommand(1);
    app.footer(kExitCodeHelp);

    CommonOptions common;
    std::string learner_path, teacher_path, matrix_path;
    std::vector<std::int64_t> sizes_flag;
    std::string mode_name = "structural";
    std::string start_name = "learner";
    std::string trace_path, learner_out, teacher_out;
    std::int64_t episodes = 100'000;
    double q_value = 0.0;
    std::string a_range = "0.05:3.0", delta_range = "0.1:3.0";
    double sweep_step = 0.05, fit_step = 1e-3;
    unsigned threads = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", common.tol, "numeric tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-iter", common.max_iter, "iteration cap")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", common.seed, "random seed");
        cmd->add_option("--format", common.format, "matrix file format: csv or json");
        cmd->add_option("--output", common.output, "write output to this path");
        cmd->add_option("--precision", common.precision, "decimals in printed numbers")
            ->check(CLI::Range(0, 17));
    };

    auto* ti_cmd = app.add_subcommand(
        "ti", "transmission index and optimality certificate of an (L, T) pair");
    ti_cmd->add_option("learner", learner_path, "row-stochastic matrix file")->required();
    ti_cmd->add_option("teacher", teacher_path, "column-stochastic matrix file")->required();
    add_common(ti_cmd);

    auto* etd_cmd = app.add_subcommand(
        "etd", "expected teaching dimension of a likelihood matrix's normalizations");
    etd_cmd->add_option("matrix", matrix_path, "nonnegative matrix file")->required();
    etd_cmd->add_option("--sizes", sizes_flag, "data-set sizes (one per row)")
        ->delimiter(',');
    add_common(etd_cmd);

    auto* atd_cmd = app.add_subcommand(
        "atd", "average teaching dimension of a 0/1 consistency matrix");
    atd_cmd->add_option("matrix", matrix_path, "0/1 matrix file")->required();
    atd_cmd->add_option("--sizes", sizes_flag, "data-set sizes (one per row)")
        ->delimiter(',');
    add_common(atd_cmd);

    auto* ci_cmd = app.add_subcommand(
        "ci", "cooperative index with the structure verdict");
    ci_cmd->add_option("matrix", matrix_path, "square nonnegative matrix file")->required();
    ci_cmd->add_option("--mode", mode_name, "structural (default) or iterative");
    add_common(ci_cmd);

    auto* sink_cmd = app.add_subcommand(
        "sinkhorn", "alternating-normalization fixed point with optional trace");
    sink_cmd->add_option("matrix", matrix_path, "nonnegative matrix file")->required();
    sink_cmd->add_option("--start", start_name, "first half-step: learner or teacher");
    sink_cmd->add_option("--trace", trace_path,
                         "write per-half-step CSV (step,side,residual,diagonal_product)");
    sink_cmd->add_option("--out-learner", learner_out, "write the learner limit here");
    sink_cmd->add_option("--out-teacher", teacher_out, "write the teacher limit here");
    add_common(sink_cmd);

    auto* diag_cmd = app.add_subcommand(
        "diagonals", "count positive diagonals (pattern permanent)");
    diag_cmd->add_option("matrix", matrix_path, "square matrix file")->required();
    add_common(diag_cmd);

    auto* tri_cmd = app.add_subcommand(
        "triangularize", "upper-triangular rearrangement witness, if one exists");
    tri_cmd->add_option("matrix", matrix_path, "square matrix file")->required();
    add_common(tri_cmd);

    auto* mt_cmd = app.add_subcommand(
        "mt-demo", "threshold-classifier machine-teaching walkthrough");
    add_common(mt_cmd);

    auto* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo estimate of the transmission index");
    sim_cmd->add_option("learner", learner_path, "row-stochastic matrix file")->required();
    sim_cmd->add_option("teacher", teacher_path, "column-stochastic matrix file")->required();
    sim_cmd->add_option("--episodes", episodes, "number of episodes")
        ->check(CLI::PositiveNumber);
    add_common(sim_cmd);

    auto* phase_cmd = app.add_subcommand(
        "phase-diagram", "cooperative-index sweep over (a, delta) scenarios");
    phase_cmd->add_option("--q", q_value, "q-Gaussian shape parameter (q < 5/3)")
        ->required();
    phase_cmd->add_option("--a-range", a_range, "noise half-spread range lo:hi");
    phase_cmd->add_option("--delta-range", delta_range, "signal range lo:hi");
    phase_cmd->add_option("--step", sweep_step, "grid step for both axes")
        ->check(CLI::PositiveNumber);
    phase_cmd->add_option("--fit-step", fit_step, "offset resolution of the ML grid search")
        ->check(CLI::PositiveNumber);
    phase_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    add_common(phase_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ti_cmd) return run_ti(common, learner_path, teacher_path);
        if (*etd_cmd) return run_etd(common, matrix_path, sizes_flag);
        if (*atd_cmd) return run_atd(common, matrix_path, sizes_flag);
        if (*ci_cmd) return run_ci(common, matrix_path, mode_name);
        if (*sink_cmd) {
            return run_sinkhorn(common, matrix_path, start_name, trace_path,
                                learner_out, teacher_out);
        }
        if (*diag_cmd) return run_diagonals(common, matrix_path);
        if (*tri_cmd) return run_triangularize(common, matrix_path);
        if (*mt_cmd) return run_mt_demo(common);
        if (*sim_cmd) return run_simulate(common, learner_path, teacher_path, episodes);
        if (*phase_cmd) {
            return run_phase_diagram(common, q_value, a_range, delta_range,
                                     sweep_step, fit_step, threads);
        }
    } catch (const ParseError& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 3;
    } catch (const InvalidValueError& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 3;
    } catch (const DimensionError& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 5;
    } catch (const IoError& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "coopinf: " << e.what() << '\n';
        return 5;
    }
    return 1;
}
