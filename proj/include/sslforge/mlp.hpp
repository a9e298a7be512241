#pragma once

#include <cmath>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/gaussian_nb.hpp"
#include "sslforge/matrix.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

// Dense MLP with ReLU hidden layers and identity output (softmax lives in
// the loss / predict path). Parameters are stored flat, layer by layer
// (weights row-major, then biases), so optimizers and EMA teachers can
// treat the model as one vector.
class MlpModel {
public:
    MlpModel() = default;
    explicit MlpModel(std::vector<std::size_t> layer_sizes)
        : sizes_(std::move(layer_sizes)) {
        if (sizes_.size() < 2) throw ConfigError("mlp: need at least input and output sizes");
        std::size_t total = 0;
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            weight_offset_.push_back(total);
            total += sizes_[l + 1] * sizes_[l];
            bias_offset_.push_back(total);
            total += sizes_[l + 1];
        }
        params_.assign(total, 0.0);
    }

    // Glorot-uniform weights drawn layer by layer from the shared stream;
    // biases stay zero.
    void init(Rng& rng) {
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            const double bound =
                std::sqrt(6.0 / static_cast<double>(sizes_[l] + sizes_[l + 1]));
            const std::size_t count = sizes_[l + 1] * sizes_[l];
            for (std::size_t t = 0; t < count; ++t)
                params_[weight_offset_[l] + t] = rng.uniform(-bound, bound);
        }
    }

    std::size_t n_layers() const { return sizes_.size() - 1; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::size_t n_params() const { return params_.size(); }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    double weight(std::size_t layer, std::size_t out, std::size_t in) const {
        return params_[weight_offset_[layer] + out * sizes_[layer] + in];
    }
    double bias(std::size_t layer, std::size_t out) const {
        return params_[bias_offset_[layer] + out];
    }

    // acts[0] is the (possibly noise-augmented) input; acts[l+1] the
    // post-activation of layer l; the last entry holds raw logits.
    struct Forward {
        std::vector<Matrix> acts;
        const Matrix& logits() const { return acts.back(); }
    };

    // train_mode adds Gaussian input noise of noise_sd (the tabular
    // augmentation slot); eval mode is noise-free and needs no rng.
    Forward forward(const Matrix& X, bool train_mode = false, double noise_sd = 0.0,
                    Rng* rng = nullptr) const {
        if (X.cols() != sizes_.front()) throw DataError("mlp: input width mismatch");
        Forward f;
        f.acts.reserve(n_layers() + 1);
        Matrix input = X;
        if (train_mode && noise_sd > 0.0) {
            if (!rng) throw ConfigError("mlp: noisy forward needs an rng");
            for (double& v : input.data()) v += rng->gaussian(0.0, noise_sd);
        }
        f.acts.push_back(std::move(input));
        for (std::size_t l = 0; l < n_layers(); ++l) {
            const Matrix& in = f.acts.back();
            Matrix out(in.rows(), sizes_[l + 1]);
            for (std::size_t i = 0; i < in.rows(); ++i)
                for (std::size_t o = 0; o < sizes_[l + 1]; ++o) {
                    double z = bias(l, o);
                    for (std::size_t j = 0; j < sizes_[l]; ++j)
                        z += weight(l, o, j) * in(i, j);
                    out(i, o) = (l + 1 < n_layers() && z < 0.0) ? 0.0 : z;  // ReLU hidden
                }
            f.acts.push_back(std::move(out));
        }
        return f;
    }

    // Accumulates d(loss)/d(params) into grad given d(loss)/d(logits).
    void backward(const Forward& f, const Matrix& dlogits, std::vector<double>& grad) const {
        if (grad.size() != params_.size()) throw DataError("mlp: gradient buffer size mismatch");
        Matrix delta = dlogits;
        for (std::size_t l = n_layers(); l-- > 0;) {
            const Matrix& in = f.acts[l];
            const std::size_t n_out = sizes_[l + 1], n_in = sizes_[l];
            for (std::size_t o = 0; o < n_out; ++o) {
                double gb = 0.0;
                for (std::size_t i = 0; i < in.rows(); ++i) {
                    const double dv = delta(i, o);
                    if (dv == 0.0) continue;
                    gb += dv;
                    for (std::size_t j = 0; j < n_in; ++j)
                        grad[weight_offset_[l] + o * n_in + j] += dv * in(i, j);
                }
                grad[bias_offset_[l] + o] += gb;
            }
            if (l == 0) break;
            Matrix prev(delta.rows(), n_in);
            for (std::size_t i = 0; i < delta.rows(); ++i)
                for (std::size_t j = 0; j < n_in; ++j) {
                    if (f.acts[l](i, j) <= 0.0) continue;  // ReLU gate
                    double s = 0.0;
                    for (std::size_t o = 0; o < n_out; ++o)
                        s += delta(i, o) * weight(l, o, j);
                    prev(i, j) = s;
                }
            delta = std::move(prev);
        }
    }

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> weight_offset_, bias_offset_;
    std::vector<double> params_;
};

inline Matrix softmax_rows(const Matrix& logits) {
    Matrix out(logits.rows(), logits.cols());
    std::vector<double> row(logits.cols());
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        for (std::size_t c = 0; c < logits.cols(); ++c) row[c] = logits(i, c);
        const double lse = log_sum_exp(row);
        for (std::size_t c = 0; c < logits.cols(); ++c)
            out(i, c) = std::exp(logits(i, c) - lse);
    }
    return out;
}

// Mean softmax cross-entropy; fills dlogits with its gradient.
inline double softmax_ce_loss(const Matrix& logits, const LabelArray& targets,
                              Matrix& dlogits) {
    const std::size_t n = logits.rows(), K = logits.cols();
    const Matrix p = softmax_rows(logits);
    double loss = 0.0;
    dlogits = Matrix(n, K);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<std::size_t>(targets[i]);
        loss -= std::log(std::max(p(i, t), 1e-300));
        for (std::size_t c = 0; c < K; ++c)
            dlogits(i, c) = (p(i, c) - (c == t ? 1.0 : 0.0)) / static_cast<double>(n);
    }
    return loss / static_cast<double>(n);
}

// Mean squared error over samples and outputs; fills dlogits.
inline double mse_loss(const Matrix& out, const LabelArray& targets, Matrix& dlogits) {
    const std::size_t n = out.rows(), K = out.cols();
    double loss = 0.0;
    dlogits = Matrix(n, K);
    const double scale = 1.0 / static_cast<double>(n * K);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < K; ++c) {
            const double target = K == 1 ? targets[i] : (c == static_cast<std::size_t>(targets[i]) ? 1.0 : 0.0);
            const double diff = out(i, c) - target;
            loss += diff * diff * scale;
            dlogits(i, c) = 2.0 * diff * scale;
        }
    return loss;
}

// Mean squared difference between the two branches (applied to softmax
// outputs when softmax=true, raw outputs otherwise). Gradients flow
// through both branches; d2 may be null for a constant target branch
// (EMA teacher).
inline double consistency_mse_loss(const Matrix& out1, const Matrix& out2, bool softmax,
                                   Matrix& d1, Matrix* d2) {
    const std::size_t n = out1.rows(), K = out1.cols();
    const double scale = 1.0 / static_cast<double>(n * K);
    const Matrix s1 = softmax ? softmax_rows(out1) : out1;
    const Matrix s2 = softmax ? softmax_rows(out2) : out2;

    double loss = 0.0;
    Matrix ds1(n, K), ds2(n, K);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < K; ++c) {
            const double diff = s1(i, c) - s2(i, c);
            loss += diff * diff * scale;
            ds1(i, c) = 2.0 * diff * scale;
            ds2(i, c) = -2.0 * diff * scale;
        }
    if (!softmax) {
        d1 = std::move(ds1);
        if (d2) *d2 = std::move(ds2);
        return loss;
    }
    // softmax Jacobian-vector product: J^T v = s (v - <v, s>)
    auto through_softmax = [&](const Matrix& s, const Matrix& ds, Matrix& out) {
        out = Matrix(n, K);
        for (std::size_t i = 0; i < n; ++i) {
            double inner = 0.0;
            for (std::size_t c = 0; c < K; ++c) inner += ds(i, c) * s(i, c);
            for (std::size_t c = 0; c < K; ++c) out(i, c) = s(i, c) * (ds(i, c) - inner);
        }
    };
    through_softmax(s1, ds1, d1);
    if (d2) through_softmax(s2, ds2, *d2);
    return loss;
}

}  // namespace sslforge
