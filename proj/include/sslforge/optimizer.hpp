#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sslforge/errors.hpp"

namespace sslforge {

enum class OptimizerKind { sgd, adam };

struct OptimizerSpec {
    OptimizerKind kind = OptimizerKind::sgd;
    double lr = 0.1;
    double momentum = 0.0;       // sgd
    double weight_decay = 0.0;   // sgd
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;  // adam
};

// Per-parameter moment buffers plus a strictly increasing step counter.
class OptimizerState {
public:
    OptimizerState() = default;
    OptimizerState(OptimizerSpec spec, std::size_t n_params) : spec_(spec) {
        m1_.assign(n_params, 0.0);
        if (spec.kind == OptimizerKind::adam) m2_.assign(n_params, 0.0);
    }

    // sgd:  v <- momentum v + g + weight_decay p;  p <- p - lr v
    // adam: standard bias-corrected update
    void step(std::vector<double>& params, const std::vector<double>& grads, double lr) {
        if (params.size() != m1_.size() || grads.size() != m1_.size())
            throw DataError("optimizer: shape mismatch");
        ++step_count_;
        if (spec_.kind == OptimizerKind::sgd) {
            for (std::size_t i = 0; i < params.size(); ++i) {
                m1_[i] = spec_.momentum * m1_[i] + grads[i] + spec_.weight_decay * params[i];
                params[i] -= lr * m1_[i];
            }
            return;
        }
        const double bc1 = 1.0 - std::pow(spec_.beta1, static_cast<double>(step_count_));
        const double bc2 = 1.0 - std::pow(spec_.beta2, static_cast<double>(step_count_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            m1_[i] = spec_.beta1 * m1_[i] + (1.0 - spec_.beta1) * grads[i];
            m2_[i] = spec_.beta2 * m2_[i] + (1.0 - spec_.beta2) * grads[i] * grads[i];
            const double mhat = m1_[i] / bc1;
            const double vhat = m2_[i] / bc2;
            params[i] -= lr * mhat / (std::sqrt(vhat) + spec_.eps);
        }
    }

    std::size_t step_count() const { return step_count_; }

private:
    OptimizerSpec spec_;
    std::vector<double> m1_, m2_;
    std::size_t step_count_ = 0;
};

enum class SchedulerKind { constant, step, cosine };

// Learning-rate schedule evaluated per epoch.
struct SchedulerSpec {
    SchedulerKind kind = SchedulerKind::constant;
    std::size_t period = 10;   // step
    double factor = 0.5;       // step
    std::size_t T_max = 100;   // cosine
    double lr_min = 0.0;       // cosine

    double lr_at(std::size_t epoch, double base_lr) const {
        switch (kind) {
            case SchedulerKind::constant:
                return base_lr;
            case SchedulerKind::step:
                return base_lr * std::pow(factor, std::floor(static_cast<double>(epoch) /
                                                             static_cast<double>(period)));
            case SchedulerKind::cosine: {
                const double t = std::min(static_cast<double>(epoch),
                                          static_cast<double>(T_max));
                return lr_min + 0.5 * (base_lr - lr_min) *
                                    (1.0 + std::cos(M_PI * t / static_cast<double>(T_max)));
            }
        }
        return base_lr;
    }
};

// Gaussian ramp-up for consistency losses:
// w(t) = w_max * exp(-5 (1 - min(t, T)/T)^2).
inline double ramp_weight(std::size_t t, std::size_t T, double w_max) {
    if (T < 1) throw ConfigError("ramp_weight: T must be >= 1");
    const double frac = std::min(static_cast<double>(t), static_cast<double>(T)) /
                        static_cast<double>(T);
    const double x = 1.0 - frac;
    return w_max * std::exp(-5.0 * x * x);
}

}  // namespace sslforge
