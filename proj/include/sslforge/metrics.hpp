#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Scalar metric values by name, plus the confusion matrix artifact for
// classification. The 16 scalar metrics split 7 classification +
// 5 regression + 4 clustering; see metric_names().
struct MetricReport {
    std::map<std::string, double> values;
    Matrix confusion;
    bool has_confusion = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::size_t label_space(const LabelArray& a, const LabelArray& b) {
    double m = -1.0;
    for (double v : a) m = std::max(m, v);
    for (double v : b) m = std::max(m, v);
    return static_cast<std::size_t>(m) + 1;
}

}  // namespace detail

inline MetricReport classification_metrics(const LabelArray& y_true, const LabelArray& y_pred,
                                           const Matrix* scores = nullptr) {
    if (y_true.size() != y_pred.size())
        throw DataError("classification_metrics: length mismatch");
    if (y_true.empty()) throw DataError("classification_metrics: empty input");
    const std::size_t n = y_true.size();
    const std::size_t K = detail::label_space(y_true, y_pred);

    MetricReport r;
    r.confusion = Matrix(K, K);
    r.has_confusion = true;
    double correct = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.confusion(static_cast<std::size_t>(y_true[i]), static_cast<std::size_t>(y_pred[i])) +=
            1.0;
        if (y_true[i] == y_pred[i]) correct += 1.0;
    }
    r.values["accuracy"] = correct / static_cast<double>(n);

    double prec_sum = 0.0, rec_sum = 0.0, f1_sum = 0.0;
    double tp_total = 0.0, fp_total = 0.0, fn_total = 0.0;
    for (std::size_t c = 0; c < K; ++c) {
        double tp = r.confusion(c, c), fp = 0.0, fn = 0.0, support = 0.0;
        for (std::size_t o = 0; o < K; ++o) {
            if (o != c) {
                fp += r.confusion(o, c);
                fn += r.confusion(c, o);
            }
            support += r.confusion(c, o);
        }
        if (support == 0.0)
            r.warnings.push_back("class " + std::to_string(c) +
                                 " absent from y_true; precision/recall counted as 0");
        const double prec = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double rec = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        prec_sum += prec;
        rec_sum += rec;
        f1_sum += prec + rec > 0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
        tp_total += tp;
        fp_total += fp;
        fn_total += fn;
    }
    r.values["precision_macro"] = prec_sum / static_cast<double>(K);
    r.values["recall_macro"] = rec_sum / static_cast<double>(K);
    r.values["f1_macro"] = f1_sum / static_cast<double>(K);
    const double micro_p = tp_total + fp_total > 0 ? tp_total / (tp_total + fp_total) : 0.0;
    const double micro_r = tp_total + fn_total > 0 ? tp_total / (tp_total + fn_total) : 0.0;
    r.values["f1_micro"] =
        micro_p + micro_r > 0 ? 2.0 * micro_p * micro_r / (micro_p + micro_r) : 0.0;

    if (scores) {
        if (scores->rows() != n) throw DataError("classification_metrics: score rows mismatch");
        double ll = 0.0;
        double top_k = 0.0;
        const std::size_t k = 2;
        for (std::size_t i = 0; i < n; ++i) {
            const auto t = static_cast<std::size_t>(y_true[i]);
            const double p = std::clamp((*scores)(i, t), 1e-15, 1.0 - 1e-15);
            ll -= std::log(p);
            // rank classes by (-score, class index); hit if true in top k
            std::size_t better = 0;
            for (std::size_t c = 0; c < scores->cols(); ++c) {
                if (c == t) continue;
                if ((*scores)(i, c) > (*scores)(i, t) ||
                    ((*scores)(i, c) == (*scores)(i, t) && c < t))
                    ++better;
            }
            if (better < k) top_k += 1.0;
        }
        r.values["log_loss"] = ll / static_cast<double>(n);
        r.values["top_k_accuracy"] = top_k / static_cast<double>(n);
    }
    return r;
}

inline MetricReport regression_metrics(const LabelArray& y_true, const LabelArray& y_pred) {
    if (y_true.size() != y_pred.size()) throw DataError("regression_metrics: length mismatch");
    if (y_true.empty()) throw DataError("regression_metrics: empty input");
    const std::size_t n = y_true.size();

    MetricReport r;
    double se = 0.0, ae = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y_pred[i] - y_true[i];
        se += d * d;
        ae += std::abs(d);
    }
    const double mse = se / static_cast<double>(n);
    r.values["mse"] = mse;
    r.values["rmse"] = std::sqrt(mse);
    r.values["mae"] = ae / static_cast<double>(n);

    if (n >= 2) {
        double mean = 0.0;
        for (double v : y_true) mean += v;
        mean /= static_cast<double>(n);
        double ss_tot = 0.0;
        for (double v : y_true) ss_tot += (v - mean) * (v - mean);
        if (ss_tot == 0.0) {
            r.values["r2"] = se == 0.0 ? 1.0 : 0.0;
            r.warnings.push_back("r2: constant y_true");
        } else {
            r.values["r2"] = 1.0 - se / ss_tot;
        }
    } else {
        r.warnings.push_back("r2 skipped: needs at least 2 samples");
    }

    double ape = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (y_true[i] == 0.0) continue;
        ape += std::abs((y_pred[i] - y_true[i]) / y_true[i]);
        ++counted;
    }
    if (counted < n) r.warnings.push_back("mape: zero targets skipped");
    if (counted > 0) r.values["mape"] = ape / static_cast<double>(counted);
    else r.warnings.push_back("mape skipped: all targets zero");
    return r;
}

inline MetricReport clustering_metrics(const LabelArray& labels_true,
                                       const LabelArray& labels_pred) {
    if (labels_true.size() != labels_pred.size())
        throw DataError("clustering_metrics: length mismatch");
    if (labels_true.empty()) throw DataError("clustering_metrics: empty input");
    const std::size_t n = labels_true.size();

    // contingency table over the distinct values of each labeling
    std::map<double, std::size_t> tmap, pmap;
    for (double v : labels_true) tmap.emplace(v, 0);
    for (double v : labels_pred) pmap.emplace(v, 0);
    std::size_t next = 0;
    for (auto& [v, i] : tmap) i = next++;
    next = 0;
    for (auto& [v, i] : pmap) i = next++;
    const std::size_t R = tmap.size(), C = pmap.size();
    Matrix table(R, C);
    for (std::size_t i = 0; i < n; ++i)
        table(tmap.at(labels_true[i]), pmap.at(labels_pred[i])) += 1.0;

    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::vector<double> a(R, 0.0), b(C, 0.0);
    double pairs_both = 0.0;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            a[i] += table(i, j);
            b[j] += table(i, j);
            pairs_both += choose2(table(i, j));
        }
    double pairs_a = 0.0, pairs_b = 0.0;
    for (double x : a) pairs_a += choose2(x);
    for (double x : b) pairs_b += choose2(x);
    const double pairs_n = choose2(static_cast<double>(n));

    MetricReport r;
    {
        const double expected = pairs_n > 0 ? pairs_a * pairs_b / pairs_n : 0.0;
        const double maximum = 0.5 * (pairs_a + pairs_b);
        r.values["ari"] =
            maximum == expected ? 1.0 : (pairs_both - expected) / (maximum - expected);
    }
    {
        double h_true = 0.0, h_pred = 0.0, mi = 0.0;
        const auto dn = static_cast<double>(n);
        for (double x : a)
            if (x > 0) h_true -= x / dn * std::log(x / dn);
        for (double x : b)
            if (x > 0) h_pred -= x / dn * std::log(x / dn);
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) {
                const double nij = table(i, j);
                if (nij == 0.0) continue;
                mi += nij / dn * std::log(nij * dn / (a[i] * b[j]));
            }
        const double denom = 0.5 * (h_true + h_pred);
        r.values["nmi"] = denom > 0 ? mi / denom : 1.0;  // two trivial partitions agree
    }
    {
        // pair-counting: TP = pairs together in both
        const double tp = pairs_both;
        const double fp = pairs_b - pairs_both;
        const double fn = pairs_a - pairs_both;
        const double denom = std::sqrt((tp + fp) * (tp + fn));
        r.values["fmi"] = denom > 0 ? tp / denom : (pairs_a == 0 && pairs_b == 0 ? 1.0 : 0.0);
    }
    {
        double matched = 0.0;
        for (std::size_t j = 0; j < C; ++j) {
            double best = 0.0;
            for (std::size_t i = 0; i < R; ++i) best = std::max(best, table(i, j));
            matched += best;
        }
        r.values["purity"] = matched / static_cast<double>(n);
    }
    return r;
}

// The 16 scalar metric names grouped by task kind.
inline const std::vector<std::string>& metric_names(TaskKind kind) {
    static const std::vector<std::string> cls = {
        "accuracy",  "precision_macro", "recall_macro",  "f1_macro",
        "f1_micro",  "log_loss",        "top_k_accuracy"};
    static const std::vector<std::string> reg = {"mse", "rmse", "mae", "r2", "mape"};
    static const std::vector<std::string> clu = {"ari", "nmi", "fmi", "purity"};
    switch (kind) {
        case TaskKind::classification: return cls;
        case TaskKind::regression: return reg;
        case TaskKind::clustering: return clu;
    }
    return cls;
}

inline bool metric_higher_is_better(const std::string& name) {
    return !(name == "log_loss" || name == "mse" || name == "rmse" || name == "mae" ||
             name == "mape");
}

inline bool metric_known(const std::string& name) {
    for (TaskKind k : {TaskKind::classification, TaskKind::regression, TaskKind::clustering})
        for (const auto& m : metric_names(k))
            if (m == name) return true;
    return false;
}

inline TaskKind metric_task(const std::string& name) {
    for (TaskKind k : {TaskKind::classification, TaskKind::regression, TaskKind::clustering})
        for (const auto& m : metric_names(k))
            if (m == name) return k;
    throw ConfigError("unknown metric '" + name + "'");
}

// Evaluates one named metric for a prediction against ground truth.
inline double evaluate_metric(const std::string& name, const LabelArray& y_true,
                              const Prediction& pred) {
    const TaskKind kind = metric_task(name);
    MetricReport rep;
    switch (kind) {
        case TaskKind::classification:
            rep = classification_metrics(y_true, pred.labels,
                                         pred.has_scores ? &pred.scores : nullptr);
            break;
        case TaskKind::regression:
            rep = regression_metrics(y_true, pred.labels);
            break;
        case TaskKind::clustering:
            rep = clustering_metrics(y_true, pred.labels);
            break;
    }
    const auto it = rep.values.find(name);
    if (it == rep.values.end())
        throw DataError("metric '" + name + "' unavailable (missing scores?)");
    return it->second;
}

}  // namespace sslforge
