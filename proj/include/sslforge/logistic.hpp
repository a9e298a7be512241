#pragma once

#include <cmath>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/gaussian_nb.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Multinomial logistic regression trained by full-batch gradient descent
// on mean cross-entropy + (l2/2)*||W||^2 (bias unregularized). Weights
// start at zero; a step that would raise the loss is halved until it does
// not, so the loss trace is non-increasing.
class LogisticRegression {
public:
    LogisticRegression(double lr = 0.5, std::size_t epochs = 200, double l2 = 0.0)
        : lr_(lr), epochs_(epochs), l2_(l2) {
        if (lr_ <= 0) throw ConfigError("logistic_regression: invalid parameter lr, must be > 0");
        if (l2_ < 0) throw ConfigError("logistic_regression: invalid parameter l2, must be >= 0");
    }

    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes) {
        const std::size_t n = X.rows(), d = X.cols();
        n_classes_ = n_classes;
        dims_ = d;
        W_ = Matrix(n_classes, d + 1);  // last column is the bias

        for (std::size_t epoch = 0; epoch < epochs_; ++epoch) {
            Matrix proba = predict_proba(X);
            Matrix grad(n_classes, d + 1);
            for (std::size_t i = 0; i < n; ++i) {
                const auto yi = static_cast<std::size_t>(y[i]);
                for (std::size_t c = 0; c < n_classes; ++c) {
                    const double delta = (proba(i, c) - (c == yi ? 1.0 : 0.0)) / n;
                    for (std::size_t j = 0; j < d; ++j) grad(c, j) += delta * X(i, j);
                    grad(c, d) += delta;
                }
            }
            for (std::size_t c = 0; c < n_classes; ++c)
                for (std::size_t j = 0; j < d; ++j) grad(c, j) += l2_ * W_(c, j);

            const double current = loss(X, y);
            double step = lr_;
            Matrix saved = W_;
            bool accepted = false;
            for (int halving = 0; halving < 60; ++halving) {
                W_ = saved;
                for (std::size_t c = 0; c < n_classes; ++c)
                    for (std::size_t j = 0; j <= d; ++j) W_(c, j) -= step * grad(c, j);
                if (loss(X, y) <= current) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                W_ = saved;  // no descent direction left at this scale
                break;
            }
        }
    }

    Matrix predict_proba(const Matrix& X) const {
        if (X.cols() != dims_) throw DataError("logistic_regression: feature-dimension mismatch");
        Matrix proba(X.rows(), n_classes_);
        std::vector<double> logits(n_classes_);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            for (std::size_t c = 0; c < n_classes_; ++c) {
                double z = W_(c, dims_);
                for (std::size_t j = 0; j < dims_; ++j) z += W_(c, j) * X(i, j);
                logits[c] = z;
            }
            const double lse = log_sum_exp(logits);
            for (std::size_t c = 0; c < n_classes_; ++c) proba(i, c) = std::exp(logits[c] - lse);
        }
        return proba;
    }

    Prediction predict(const Matrix& X) const { return Prediction::from_scores(predict_proba(X)); }

    double loss(const Matrix& X, const LabelArray& y) const {
        const Matrix proba = predict_proba(X);
        double ce = 0.0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const double p = std::max(proba(i, static_cast<std::size_t>(y[i])), 1e-300);
            ce -= std::log(p);
        }
        ce /= static_cast<double>(X.rows());
        double reg = 0.0;
        for (std::size_t c = 0; c < n_classes_; ++c)
            for (std::size_t j = 0; j < dims_; ++j) reg += W_(c, j) * W_(c, j);
        return ce + 0.5 * l2_ * reg;
    }

private:
    double lr_;
    std::size_t epochs_;
    double l2_;
    std::size_t n_classes_ = 0, dims_ = 0;
    Matrix W_;
};

}  // namespace sslforge
