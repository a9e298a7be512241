#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

enum class TaskKind { classification, regression, clustering };

inline std::string to_string(TaskKind k) {
    switch (k) {
        case TaskKind::classification: return "classification";
        case TaskKind::regression: return "regression";
        case TaskKind::clustering: return "clustering";
    }
    return "?";
}

inline TaskKind task_kind_from_string(const std::string& s) {
    if (s == "classification") return TaskKind::classification;
    if (s == "regression") return TaskKind::regression;
    if (s == "clustering") return TaskKind::clustering;
    throw ConfigError("unknown task kind '" + s + "'");
}

// Per-sample targets. Classification stores dense class indices 0..K-1
// (exact small integers in double); regression stores real targets.
using LabelArray = std::vector<double>;

inline std::string format_label(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// The universal fit input: labeled (X, y) plus an unlabeled feature matrix.
struct SSLDataset {
    FeatureMatrix X;
    LabelArray y;
    FeatureMatrix unlabeled_X;

    // Populated by validation (classification): original label for each
    // dense class index, so predictions can be mapped back on output.
    std::vector<std::string> class_names;
    std::size_t n_classes = 0;

    std::size_t n_labeled() const { return X.rows(); }
    std::size_t n_unlabeled() const { return unlabeled_X.rows(); }
    std::size_t n_features() const { return X.cols(); }

    // Labeled rows followed by unlabeled rows.
    FeatureMatrix all_X() const { return Matrix::vstack(X, unlabeled_X); }
};

// Checks all dataset invariants; for classification re-indexes labels to
// dense 0..K-1, keeping the original labels as class_names.
inline SSLDataset validate_dataset(const SSLDataset& d, TaskKind kind) {
    if (d.X.rows() == 0) throw DataError("empty labeled set");
    if (d.X.cols() < 1) throw DataError("feature matrix needs at least one column");
    if (d.X.rows() != d.y.size())
        throw DataError("labeled rows (" + std::to_string(d.X.rows()) +
                        ") != label count (" + std::to_string(d.y.size()) + ")");
    if (!d.unlabeled_X.empty() && d.unlabeled_X.cols() != d.X.cols())
        throw DataError("feature-dimension mismatch: labeled has " +
                        std::to_string(d.X.cols()) + " columns, unlabeled has " +
                        std::to_string(d.unlabeled_X.cols()));
    if (!d.X.all_finite() || !d.unlabeled_X.all_finite())
        throw DataError("non-finite value in feature matrix");
    for (double v : d.y)
        if (!std::isfinite(v)) throw DataError("non-finite label value");

    SSLDataset out = d;
    if (kind == TaskKind::regression) {
        out.class_names.clear();
        out.n_classes = 0;
        return out;
    }

    // classification / clustering: dense re-indexing of label values
    std::map<double, std::size_t> remap;
    for (double v : d.y) remap.emplace(v, 0);
    std::size_t next = 0;
    for (auto& [value, index] : remap) index = next++;

    const bool already_named = !d.class_names.empty();
    if (already_named && d.class_names.size() < remap.size())
        throw DataError("class_names shorter than distinct label count");

    out.n_classes = remap.size();
    if (!already_named) {
        out.class_names.resize(remap.size());
        for (const auto& [value, index] : remap) out.class_names[index] = format_label(value);
    } else if (remap.size() < d.class_names.size()) {
        // names came from an upstream loader; keep only classes present
        std::vector<std::string> kept(remap.size());
        for (const auto& [value, index] : remap)
            kept[index] = d.class_names[static_cast<std::size_t>(value)];
        out.class_names = kept;
    }
    for (std::size_t i = 0; i < out.y.size(); ++i)
        out.y[i] = static_cast<double>(remap.at(d.y[i]));

    if (kind == TaskKind::classification && out.n_classes < 2)
        throw DataError("degenerate labeled set: only one class present");
    return out;
}

// Hard labels plus an optional per-class score matrix.
struct Prediction {
    LabelArray labels;
    bool has_scores = false;
    Matrix scores;  // n_samples x n_classes when present

    static Prediction from_labels(LabelArray l) {
        Prediction p;
        p.labels = std::move(l);
        return p;
    }

    // Labels = per-row argmax with lowest-index tie-break.
    static Prediction from_scores(Matrix s) {
        Prediction p;
        p.labels.resize(s.rows());
        for (std::size_t i = 0; i < s.rows(); ++i) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < s.cols(); ++c)
                if (s(i, c) > s(i, best)) best = c;
            p.labels[i] = static_cast<double>(best);
        }
        p.scores = std::move(s);
        p.has_scores = true;
        return p;
    }
};

}  // namespace sslforge
