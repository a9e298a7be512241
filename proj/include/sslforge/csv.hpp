#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"

namespace sslforge {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

inline bool parse_double_strict(const std::string& s, double& out) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return false;
    const std::size_t e = s.find_last_not_of(" \t") + 1;
    const char* first = s.data() + b;
    const char* last = s.data() + e;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace detail

// Comma-separated, header mandatory, no quoting. An empty cell in the
// label column is the sole unlabeled marker; such rows go to unlabeled_X.
// Labels that all parse as numbers are kept numeric (classification
// re-indexes them at validation); otherwise they are treated as
// categories in sorted order and class_names records the originals.
inline SSLDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path + "': empty file");
    const auto header = detail::split_csv_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_column) label_idx = j;
    if (label_idx == header.size())
        throw DataError("'" + path + "': label column '" + label_column + "' not found");
    const std::size_t n_features = header.size() - 1;
    if (n_features == 0) throw DataError("'" + path + "': no feature columns");

    std::vector<std::vector<double>> labeled_rows, unlabeled_rows;
    std::vector<std::string> raw_labels;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("'" + path + "': row " + std::to_string(row_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        std::vector<double> feats;
        feats.reserve(n_features);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) continue;
            double v;
            if (!detail::parse_double_strict(cells[j], v))
                throw DataError("'" + path + "': unparseable numeric cell '" + cells[j] +
                                "' at row " + std::to_string(row_no) + ", column '" +
                                header[j] + "'");
            feats.push_back(v);
        }
        const std::string& label_cell = cells[label_idx];
        if (label_cell.empty()) {
            unlabeled_rows.push_back(std::move(feats));
        } else {
            labeled_rows.push_back(std::move(feats));
            raw_labels.push_back(label_cell);
        }
    }
    if (labeled_rows.empty()) throw DataError("'" + path + "': zero labeled rows");

    SSLDataset d;
    d.X = Matrix(labeled_rows.size(), n_features);
    for (std::size_t i = 0; i < labeled_rows.size(); ++i)
        for (std::size_t j = 0; j < n_features; ++j) d.X(i, j) = labeled_rows[i][j];
    d.unlabeled_X = Matrix(unlabeled_rows.size(), n_features);
    for (std::size_t i = 0; i < unlabeled_rows.size(); ++i)
        for (std::size_t j = 0; j < n_features; ++j) d.unlabeled_X(i, j) = unlabeled_rows[i][j];

    bool all_numeric = true;
    std::vector<double> numeric(raw_labels.size());
    for (std::size_t i = 0; i < raw_labels.size() && all_numeric; ++i)
        all_numeric = detail::parse_double_strict(raw_labels[i], numeric[i]);

    if (all_numeric) {
        d.y = std::move(numeric);
    } else {
        std::map<std::string, std::size_t> cats;
        for (const auto& s : raw_labels) cats.emplace(s, 0);
        std::size_t next = 0;
        d.class_names.resize(cats.size());
        for (auto& [name, index] : cats) {
            index = next++;
            d.class_names[index] = name;
        }
        d.n_classes = cats.size();
        d.y.resize(raw_labels.size());
        for (std::size_t i = 0; i < raw_labels.size(); ++i)
            d.y[i] = static_cast<double>(cats.at(raw_labels[i]));
    }
    return d;
}

// Writes features plus a fully-populated label column (generator output).
inline void write_csv(const std::string& path, const Matrix& X, const LabelArray& y,
                      const std::string& label_column = "label") {
    if (X.rows() != y.size()) throw DataError("write_csv: label count mismatch");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t j = 0; j < X.cols(); ++j) out << 'f' << j << ',';
    out << label_column << '\n';
    std::ostringstream line;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        line.str("");
        for (std::size_t j = 0; j < X.cols(); ++j) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", X(i, j));
            line << buf << ',';
        }
        line << format_label(y[i]);
        out << line.str() << '\n';
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace sslforge
