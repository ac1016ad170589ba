#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mglasso/path.hpp"
#include "mglasso/stars.hpp"
#include "mglasso/synthetic.hpp"
#include "mglasso/types.hpp"

namespace mglasso::io {

using json = nlohmann::json;  // plain json: keys serialized in sorted order

inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

// Atomic write: temp file in the same directory, then rename.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// FNV-1a 64-bit content digest, hex encoded; used for input provenance in the
// run manifest, not for security.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

inline std::string digest_file(const std::filesystem::path& path) { return fnv1a_hex(read_text(path)); }

// ---------------------------------------------------------------------------
// CSV: comma separated, one header row, '.' decimal point, doubles written
// with 17 significant digits. Lines starting with '#' are comments; readers
// skip them. Writers may emit a leading comment referencing the run manifest.
// ---------------------------------------------------------------------------

struct CsvData {
    Matrix values;
    std::vector<std::string> column_names;
};

inline std::string csv_to_string(const Matrix& values, const std::vector<std::string>& column_names,
                                 const std::vector<std::string>& comments = {}) {
    if (static_cast<Eigen::Index>(column_names.size()) != values.cols())
        throw DataError("csv: header size does not match column count");
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t j = 0; j < column_names.size(); ++j)
        out << column_names[j] << (j + 1 < column_names.size() ? "," : "\n");
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j)
            out << format_double(values(i, j)) << (j + 1 < values.cols() ? "," : "\n");
    return out.str();
}

inline void write_csv(const std::filesystem::path& path, const Matrix& values,
                      const std::vector<std::string>& column_names, const std::vector<std::string>& comments = {}) {
    write_text_atomic(path, csv_to_string(values, column_names, comments));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

inline CsvData read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    CsvData data;
    std::string line;
    long line_number = 0;
    std::vector<std::vector<double>> rows;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (!have_header) {
            data.column_names = fields;
            have_header = true;
            continue;
        }
        if (fields.size() != data.column_names.size())
            throw DataError(path.string() + ": line " + std::to_string(line_number) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(data.column_names.size()));
        std::vector<double> row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            try {
                std::size_t used = 0;
                row[j] = std::stod(fields[j], &used);
                if (used != fields[j].size()) throw std::invalid_argument(fields[j]);
            } catch (const std::exception&) {
                throw DataError(path.string() + ": line " + std::to_string(line_number) +
                                " has a non-numeric field '" + fields[j] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw DataError(path.string() + ": missing header row");
    data.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(data.column_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return data;
}

inline DataMatrix read_data_csv(const std::filesystem::path& path) {
    CsvData csv = read_csv(path);
    DataMatrix out;
    out.values = std::move(csv.values);
    out.column_names = std::move(csv.column_names);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// JSON serializers. All output objects carry a "manifest" reference.
// ---------------------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [i, j] : g.edges()) {
        json e = {{"i", i}, {"j", j}};
        if (g.weights) e["weight"] = (*g.weights)(i, j);
        edges.push_back(e);
    }
    return {{"p", g.size()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    const int p = j.at("p").get<int>();
    Graph g = Graph::empty(p);
    g.weights = Matrix::Zero(p, p);
    for (const auto& e : j.at("edges")) {
        const int a = e.at("i").get<int>();
        const int b = e.at("j").get<int>();
        if (a < 0 || b < 0 || a >= p || b >= p || a == b) throw DataError("graph edge out of range");
        g.adjacency(a, b) = g.adjacency(b, a) = true;
        const double w = e.contains("weight") ? e.at("weight").get<double>() : 1.0;
        (*g.weights)(a, b) = (*g.weights)(b, a) = w;
    }
    return g;
}

inline json partition_to_json(const Partition& part) {
    return {{"labels", part.labels}, {"num_clusters", part.num_clusters}};
}

inline Partition partition_from_json(const json& j) {
    return Partition::from_labels(j.at("labels").get<std::vector<int>>());
}

inline json hierarchy_to_json(const Hierarchy& h, EdgeRule rule = EdgeRule::Or, double tol = 1e-8) {
    json levels = json::array();
    for (const auto& level : h.levels) {
        json entry = {{"lambda2", level.lambda2},
                      {"labels", level.partition.labels},
                      {"num_clusters", level.partition.num_clusters},
                      {"converged", level.converged},
                      {"duality_gap", level.duality_gap},
                      {"start_objective", level.start_objective},
                      {"inner_iterations", level.inner_iterations}};
        entry["graph"] = graph_to_json(graph_from_beta(level.beta, rule, tol));
        entry["cluster_graph"] = graph_to_json(cluster_level_graph(level.beta, level.partition, rule, tol));
        levels.push_back(entry);
    }
    json merges = json::array();
    for (const auto& m : h.merges) merges.push_back({{"lambda2", m.lambda2}, {"kept", m.kept}, {"absorbed", m.absorbed}});
    return {{"levels", levels}, {"merges", merges}};
}

inline json truth_to_json(const GroundTruth& truth) {
    return {{"adjacency", graph_to_json(truth.adjacency)},
            {"labels", truth.labels.labels},
            {"num_clusters", truth.labels.num_clusters},
            {"rho", truth.rho},
            {"diagonal_shift", truth.diagonal_shift},
            {"num_edges", truth.adjacency.edge_count()}};
}

inline json stars_to_json(const StarsResult& res) {
    return {{"grid", res.grid},
            {"instabilities", res.instabilities},
            {"monotonized", res.monotonized},
            {"replicate_failures", res.failed},
            {"selected_lambda1", res.selected_lambda1},
            {"selected_index", res.selected_index},
            {"selected", res.selected}};
}

}  // namespace mglasso::io
