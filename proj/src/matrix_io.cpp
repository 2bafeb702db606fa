#include "coopinf/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace coopinf {

namespace {

double parse_entry(const std::string& token, std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + token +
                         "' is not a number");
    }
    for (std::size_t k = consumed; k < token.size(); ++k) {
        if (!std::isspace(static_cast<unsigned char>(token[k]))) {
            throw ParseError("line " + std::to_string(line_no) + ": '" + token +
                             "' is not a number");
        }
    }
    return value;
}

std::string format_entry(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Matrix wrap_entries(std::size_t rows, std::size_t cols, std::vector<double> data,
                    std::optional<SpaceIndex> index) {
    try {
        return Matrix(rows, cols, std::move(data), std::move(index));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid matrix: ") + e.what());
    }
}

} // namespace

Matrix read_matrix_csv(std::istream& in) {
    std::vector<double> data;
    std::size_t cols = 0, rows = 0, line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::stringstream fields(line);
        std::string token;
        std::size_t this_cols = 0;
        while (std::getline(fields, token, ',')) {
            data.push_back(parse_entry(token, line_no));
            ++this_cols;
        }
        if (cols == 0) {
            cols = this_cols;
        } else if (this_cols != cols) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(cols) + " entries, found " +
                             std::to_string(this_cols));
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("matrix file is empty");
    return wrap_entries(rows, cols, std::move(data), std::nullopt);
}

Matrix read_matrix_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries")) {
        throw ParseError("JSON matrix must be an object with an \"entries\" array");
    }

    std::vector<double> data;
    std::size_t rows = 0, cols = 0;
    try {
        const auto& entries = doc.at("entries");
        rows = entries.size();
        for (const auto& row : entries) {
            if (rows && cols == 0) cols = row.size();
            if (row.size() != cols) throw ParseError("ragged \"entries\" rows");
            for (const auto& v : row) data.push_back(v.get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid \"entries\": ") + e.what());
    }
    if (rows == 0 || cols == 0) throw ParseError("\"entries\" must be nonempty");

    std::optional<SpaceIndex> index;
    if (doc.contains("concepts") || doc.contains("datasets") ||
        doc.contains("dataset_sizes")) {
        try {
            std::vector<std::string> concepts, datasets;
            std::vector<std::int64_t> sizes;
            if (doc.contains("concepts")) {
                concepts = doc.at("concepts").get<std::vector<std::string>>();
            } else {
                for (std::size_t j = 0; j < cols; ++j)
                    concepts.push_back("h" + std::to_string(j + 1));
            }
            if (doc.contains("datasets")) {
                datasets = doc.at("datasets").get<std::vector<std::string>>();
            } else {
                for (std::size_t i = 0; i < rows; ++i)
                    datasets.push_back("d" + std::to_string(i + 1));
            }
            if (doc.contains("dataset_sizes")) {
                sizes = doc.at("dataset_sizes").get<std::vector<std::int64_t>>();
            } else {
                sizes.assign(rows, 1);
            }
            index = SpaceIndex(std::move(datasets), std::move(concepts), std::move(sizes));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid matrix labels: ") + e.what());
        } catch (const Error& e) {
            throw ParseError(std::string("invalid matrix labels: ") + e.what());
        }
    }
    return wrap_entries(rows, cols, std::move(data), std::move(index));
}

Matrix read_matrix_file(const std::filesystem::path& path, MatrixFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return format == MatrixFormat::kCsv ? read_matrix_csv(in)
                                            : read_matrix_json(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_entry(m(i, j));
        }
        out << '\n';
    }
}

void write_matrix_json(std::ostream& out, const Matrix& m) {
    nlohmann::json doc;
    if (m.index()) {
        doc["concepts"] = m.index()->concept_labels();
        doc["datasets"] = m.index()->dataset_labels();
        doc["dataset_sizes"] = m.index()->dataset_sizes();
    }
    auto& entries = doc["entries"];
    entries = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        entries.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m,
                       MatrixFormat format) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    if (format == MatrixFormat::kCsv) {
        write_matrix_csv(out, m);
    } else {
        write_matrix_json(out, m);
    }
}

} // namespace coopinf
