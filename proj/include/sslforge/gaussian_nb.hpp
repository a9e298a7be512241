#pragma once

#include <cmath>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

inline double log_sum_exp(std::span<const double> v) {
    double m = v[0];
    for (double x : v) m = std::max(m, x);
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// Naive Bayes with per-class diagonal Gaussians; variances floored at
// 1e-9 so constant features stay finite. Supports sample weights.
class GaussianNB {
public:
    static constexpr double kVarFloor = 1e-9;

    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
             const std::vector<double>* sample_weights = nullptr) {
        const std::size_t n = X.rows(), d = X.cols();
        n_classes_ = n_classes;
        dims_ = d;
        log_prior_.assign(n_classes, 0.0);
        mean_ = Matrix(n_classes, d);
        var_ = Matrix(n_classes, d);

        std::vector<double> class_weight(n_classes, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = sample_weights ? (*sample_weights)[i] : 1.0;
            const auto c = static_cast<std::size_t>(y[i]);
            class_weight[c] += w;
            total += w;
            for (std::size_t j = 0; j < d; ++j) mean_(c, j) += w * X(i, j);
        }
        for (std::size_t c = 0; c < n_classes; ++c) {
            if (class_weight[c] <= 0.0)
                throw DataError("gaussian_nb: class " + std::to_string(c) +
                                " has no (weighted) samples");
            for (std::size_t j = 0; j < d; ++j) mean_(c, j) /= class_weight[c];
            log_prior_[c] = std::log(class_weight[c] / total);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double w = sample_weights ? (*sample_weights)[i] : 1.0;
            const auto c = static_cast<std::size_t>(y[i]);
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = X(i, j) - mean_(c, j);
                var_(c, j) += w * diff * diff;
            }
        }
        for (std::size_t c = 0; c < n_classes; ++c)
            for (std::size_t j = 0; j < d; ++j)
                var_(c, j) = std::max(var_(c, j) / class_weight[c], kVarFloor);
    }

    Matrix predict_proba(const Matrix& X) const {
        if (X.cols() != dims_) throw DataError("gaussian_nb: feature-dimension mismatch");
        Matrix proba(X.rows(), n_classes_);
        std::vector<double> logp(n_classes_);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            for (std::size_t c = 0; c < n_classes_; ++c) {
                double lp = log_prior_[c];
                for (std::size_t j = 0; j < dims_; ++j) {
                    const double diff = X(i, j) - mean_(c, j);
                    lp += -0.5 * (std::log(2.0 * M_PI * var_(c, j)) +
                                  diff * diff / var_(c, j));
                }
                logp[c] = lp;
            }
            const double lse = log_sum_exp(logp);
            for (std::size_t c = 0; c < n_classes_; ++c) proba(i, c) = std::exp(logp[c] - lse);
        }
        return proba;
    }

    Prediction predict(const Matrix& X) const { return Prediction::from_scores(predict_proba(X)); }

private:
    std::size_t n_classes_ = 0, dims_ = 0;
    std::vector<double> log_prior_;
    Matrix mean_, var_;
};

}  // namespace sslforge
