#pragma once

#include <algorithm>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Indices of the k nearest training rows by Minkowski-p distance.
// Exact distance ties break toward the lower training index.
inline std::vector<std::size_t> k_nearest(const Matrix& train, std::span<const double> q,
                                          std::size_t k, double p) {
    const std::size_t n = train.rows();
    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = {minkowski_distance(train.row(i), q, p), i};
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> out(std::min(k, n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = order[i].second;
    return out;
}

// k-nearest-neighbour classifier: majority vote (ties to the lowest class
// index), or inverse-distance weighted vote when `weighted` is set, in
// which case exact duplicates of the query take the whole vote.
class KnnClassifier {
public:
    KnnClassifier(std::size_t k = 5, double p = 2.0, bool weighted = false)
        : k_(k), p_(p), weighted_(weighted) {
        if (k_ < 1) throw ConfigError("knn: invalid parameter k, must be >= 1");
        if (p_ < 1.0) throw ConfigError("knn: invalid parameter p, must be >= 1");
    }

    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes) {
        if (k_ > X.rows())
            throw ConfigError("knn: k=" + std::to_string(k_) + " exceeds training rows " +
                              std::to_string(X.rows()));
        X_ = X;
        y_ = y;
        n_classes_ = n_classes;
    }

    Matrix predict_proba(const Matrix& X) const {
        Matrix proba(X.rows(), n_classes_);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const auto nn = k_nearest(X_, X.row(i), k_, p_);
            if (!weighted_) {
                for (std::size_t j : nn)
                    proba(i, static_cast<std::size_t>(y_[j])) += 1.0 / nn.size();
                continue;
            }
            bool exact = false;
            for (std::size_t j : nn)
                if (minkowski_distance(X_.row(j), X.row(i), p_) == 0.0) exact = true;
            double total = 0.0;
            std::vector<double> w(nn.size());
            for (std::size_t t = 0; t < nn.size(); ++t) {
                const double d = minkowski_distance(X_.row(nn[t]), X.row(i), p_);
                w[t] = exact ? (d == 0.0 ? 1.0 : 0.0) : 1.0 / d;
                total += w[t];
            }
            for (std::size_t t = 0; t < nn.size(); ++t)
                proba(i, static_cast<std::size_t>(y_[nn[t]])) += w[t] / total;
        }
        return proba;
    }

    Prediction predict(const Matrix& X) const { return Prediction::from_scores(predict_proba(X)); }

    std::size_t n_classes() const { return n_classes_; }

private:
    std::size_t k_;
    double p_;
    bool weighted_;
    Matrix X_;
    LabelArray y_;
    std::size_t n_classes_ = 0;
};

// k-nearest-neighbour regressor: mean (or inverse-distance weighted mean)
// of the neighbour targets.
class KnnRegressor {
public:
    KnnRegressor(std::size_t k = 5, double p = 2.0, bool weighted = false)
        : k_(k), p_(p), weighted_(weighted) {
        if (k_ < 1) throw ConfigError("knn: invalid parameter k, must be >= 1");
        if (p_ < 1.0) throw ConfigError("knn: invalid parameter p, must be >= 1");
    }

    void fit(const Matrix& X, const LabelArray& y) {
        if (k_ > X.rows())
            throw ConfigError("knn: k=" + std::to_string(k_) + " exceeds training rows " +
                              std::to_string(X.rows()));
        X_ = X;
        y_ = y;
    }

    double predict_one(std::span<const double> q) const {
        const auto nn = k_nearest(X_, q, k_, p_);
        if (!weighted_) {
            double s = 0.0;
            for (std::size_t j : nn) s += y_[j];
            return s / static_cast<double>(nn.size());
        }
        bool exact = false;
        for (std::size_t j : nn)
            if (minkowski_distance(X_.row(j), q, p_) == 0.0) exact = true;
        double num = 0.0, den = 0.0;
        for (std::size_t j : nn) {
            const double d = minkowski_distance(X_.row(j), q, p_);
            const double w = exact ? (d == 0.0 ? 1.0 : 0.0) : 1.0 / d;
            num += w * y_[j];
            den += w;
        }
        return num / den;
    }

    LabelArray predict(const Matrix& X) const {
        LabelArray out(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_one(X.row(i));
        return out;
    }

    const Matrix& train_X() const { return X_; }
    const LabelArray& train_y() const { return y_; }
    std::size_t k() const { return k_; }
    double p() const { return p_; }

private:
    std::size_t k_;
    double p_;
    bool weighted_;
    Matrix X_;
    LabelArray y_;
};

}  // namespace sslforge
