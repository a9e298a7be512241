#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/mlp.hpp"
#include "sslforge/optimizer.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

enum class StrategyKind { supervised, pseudo_label, pi_model, mean_teacher, pi_model_reg };

inline StrategyKind strategy_kind_from_string(const std::string& s) {
    if (s == "supervised") return StrategyKind::supervised;
    if (s == "pseudo_label") return StrategyKind::pseudo_label;
    if (s == "pi_model") return StrategyKind::pi_model;
    if (s == "mean_teacher") return StrategyKind::mean_teacher;
    if (s == "pi_model_reg") return StrategyKind::pi_model_reg;
    throw ConfigError("unknown strategy '" + s + "'");
}

struct SslStrategy {
    StrategyKind kind = StrategyKind::supervised;
    // pseudo_label schedule: alpha(t) = alpha_f * clip((t-T1)/(T2-T1), 0, 1)
    std::size_t T1 = 5, T2 = 20;
    double alpha_f = 1.0;
    // consistency strategies
    double w_max = 1.0;
    std::size_t ramp_T = 10;
    double noise_sd = 0.1;
    double ema_decay = 0.99;  // mean_teacher
};

struct TrainConfig {
    std::size_t epochs = 50;
    std::size_t batch_size = 32;
    OptimizerSpec optimizer;
    SchedulerSpec scheduler;
    std::uint64_t seed = 0;
};

// Fitted neural model: the student network, plus the EMA teacher for
// mean_teacher (which also predicts with the teacher).
struct MlpTrainedModel {
    MlpModel student;
    MlpModel teacher;
    bool has_teacher = false;
    TaskKind task = TaskKind::classification;
    std::size_t n_classes = 0;
    std::vector<std::string> class_names;
    double final_loss = 0.0;
    std::size_t steps_run = 0;

    const MlpModel& predictor() const { return has_teacher ? teacher : student; }

    Prediction predict(const Matrix& X) const {
        const Matrix logits = predictor().forward(X).logits();
        if (task == TaskKind::regression) {
            Prediction p;
            p.labels.resize(X.rows());
            for (std::size_t i = 0; i < X.rows(); ++i) p.labels[i] = logits(i, 0);
            return p;
        }
        return Prediction::from_scores(softmax_rows(logits));
    }
};

namespace detail {

inline Rng derive_stream(std::uint64_t seed, std::uint64_t salt) {
    return Rng(seed + salt * 0x9E3779B97F4A7C15ULL);
}

// order[(t*bs + i) mod m] for i < min(bs, m): the stream cycles when it
// is shorter than the epoch.
inline std::vector<std::size_t> cyclic_batch(const std::vector<std::size_t>& order,
                                             std::size_t step, std::size_t bs) {
    const std::size_t m = order.size();
    std::vector<std::size_t> out;
    const std::size_t count = std::min(bs, m);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(order[(step * bs + i) % m]);
    return out;
}

}  // namespace detail

// One shared epoch/batch loop for every strategy. Each step pairs one
// labeled batch with one unlabeled batch (the shorter stream cycles).
// The supervised loss term always uses a clean forward pass, so any
// strategy whose unsupervised weight is identically zero reproduces
// supervised training bit for bit on the same seed.
inline MlpTrainedModel trainer_fit(
    const SslStrategy& strategy, TaskKind task, const SSLDataset& d,
    const std::vector<std::size_t>& hidden, const TrainConfig& config,
    const std::function<void(const std::vector<double>&, const std::vector<double>&)>&
        step_observer = nullptr) {
    if (strategy.kind == StrategyKind::pi_model_reg && task != TaskKind::regression)
        throw ConfigError("pi_model_reg requires a regression task");
    if (task == TaskKind::regression &&
        (strategy.kind == StrategyKind::pseudo_label ||
         strategy.kind == StrategyKind::pi_model ||
         strategy.kind == StrategyKind::mean_teacher))
        throw ConfigError("classification strategy given a regression task");
    if (config.batch_size < 1) throw ConfigError("trainer: batch_size must be >= 1");
    if (strategy.ramp_T < 1) throw ConfigError("trainer: ramp_T must be >= 1");
    if (!(strategy.ema_decay >= 0.0 && strategy.ema_decay < 1.0))
        throw ConfigError("trainer: ema_decay must be in [0, 1)");

    const SSLDataset v = validate_dataset(d, task);
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled();
    const std::size_t out_dim = task == TaskKind::regression ? 1 : v.n_classes;

    std::vector<std::size_t> sizes;
    sizes.push_back(v.n_features());
    for (std::size_t h : hidden) sizes.push_back(h);
    sizes.push_back(out_dim);

    MlpTrainedModel m;
    m.task = task;
    m.n_classes = v.n_classes;
    m.class_names = v.class_names;
    m.student = MlpModel(sizes);
    {
        Rng init_rng = detail::derive_stream(config.seed, 0);
        m.student.init(init_rng);
    }
    if (strategy.kind == StrategyKind::mean_teacher) {
        m.teacher = m.student;
        m.has_teacher = true;
    }

    Rng shuffle_l = detail::derive_stream(config.seed, 1);
    Rng shuffle_u = detail::derive_stream(config.seed, 2);
    Rng noise_rng = detail::derive_stream(config.seed, 3);

    OptimizerState opt(config.optimizer, m.student.n_params());
    const std::size_t nl = (l + config.batch_size - 1) / config.batch_size;
    const std::size_t nu = u > 0 ? (u + config.batch_size - 1) / config.batch_size : 0;
    const std::size_t steps_per_epoch = std::max<std::size_t>(nl, nu);

    std::vector<std::size_t> order_l(l), order_u(u);
    for (std::size_t i = 0; i < l; ++i) order_l[i] = i;
    for (std::size_t i = 0; i < u; ++i) order_u[i] = i;

    std::vector<double> grad(m.student.n_params());

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const double lr = config.scheduler.lr_at(epoch, config.optimizer.lr);
        shuffle_l.shuffle(order_l);
        shuffle_u.shuffle(order_u);

        // unsupervised weight for this epoch
        double w_unsup = 0.0;
        if (strategy.kind == StrategyKind::pseudo_label) {
            if (strategy.T2 > strategy.T1) {
                const double frac =
                    (static_cast<double>(epoch) - static_cast<double>(strategy.T1)) /
                    (static_cast<double>(strategy.T2) - static_cast<double>(strategy.T1));
                w_unsup = strategy.alpha_f * std::clamp(frac, 0.0, 1.0);
            } else {
                w_unsup = epoch >= strategy.T2 ? strategy.alpha_f : 0.0;
            }
        } else if (strategy.kind != StrategyKind::supervised) {
            w_unsup = ramp_weight(epoch, strategy.ramp_T, strategy.w_max);
        }

        for (std::size_t step = 0; step < steps_per_epoch; ++step) {
            const auto lb = detail::cyclic_batch(order_l, step, config.batch_size);
            const Matrix Xb = v.X.take_rows(lb);
            LabelArray yb(lb.size());
            for (std::size_t i = 0; i < lb.size(); ++i) yb[i] = v.y[lb[i]];

            std::fill(grad.begin(), grad.end(), 0.0);
            double loss = 0.0;
            Matrix dlogits;

            // supervised term, clean forward
            const MlpModel::Forward sup_fwd = m.student.forward(Xb);
            if (task == TaskKind::regression)
                loss += mse_loss(sup_fwd.logits(), yb, dlogits);
            else
                loss += softmax_ce_loss(sup_fwd.logits(), yb, dlogits);
            m.student.backward(sup_fwd, dlogits, grad);

            // unsupervised term; skipped entirely at zero weight so the
            // rng streams and gradient sums match supervised training
            if (w_unsup > 0.0 && strategy.kind != StrategyKind::supervised) {
                Matrix Xu;
                if (u > 0) {
                    const auto ub = detail::cyclic_batch(order_u, step, config.batch_size);
                    Xu = v.unlabeled_X.take_rows(ub);
                }
                switch (strategy.kind) {
                    case StrategyKind::pseudo_label: {
                        if (Xu.rows() == 0) break;
                        const MlpModel::Forward fwd = m.student.forward(Xu);
                        const Prediction pseudo =
                            Prediction::from_scores(softmax_rows(fwd.logits()));
                        Matrix d_unsup;
                        const double unsup =
                            softmax_ce_loss(fwd.logits(), pseudo.labels, d_unsup);
                        loss += w_unsup * unsup;
                        for (double& g : d_unsup.data()) g *= w_unsup;
                        m.student.backward(fwd, d_unsup, grad);
                        break;
                    }
                    case StrategyKind::pi_model:
                    case StrategyKind::pi_model_reg: {
                        const Matrix Xall = Matrix::vstack(Xb, Xu);
                        const MlpModel::Forward f1 =
                            m.student.forward(Xall, true, strategy.noise_sd, &noise_rng);
                        const MlpModel::Forward f2 =
                            m.student.forward(Xall, true, strategy.noise_sd, &noise_rng);
                        Matrix d1, d2;
                        const bool softmax = strategy.kind == StrategyKind::pi_model;
                        const double unsup =
                            consistency_mse_loss(f1.logits(), f2.logits(), softmax, d1, &d2);
                        loss += w_unsup * unsup;
                        for (double& g : d1.data()) g *= w_unsup;
                        for (double& g : d2.data()) g *= w_unsup;
                        m.student.backward(f1, d1, grad);
                        m.student.backward(f2, d2, grad);
                        break;
                    }
                    case StrategyKind::mean_teacher: {
                        const Matrix Xall = Matrix::vstack(Xb, Xu);
                        const MlpModel::Forward fs =
                            m.student.forward(Xall, true, strategy.noise_sd, &noise_rng);
                        const MlpModel::Forward ft =
                            m.teacher.forward(Xall, true, strategy.noise_sd, &noise_rng);
                        Matrix d1;
                        const double unsup = consistency_mse_loss(fs.logits(), ft.logits(),
                                                                  true, d1, nullptr);
                        loss += w_unsup * unsup;
                        for (double& g : d1.data()) g *= w_unsup;
                        m.student.backward(fs, d1, grad);
                        break;
                    }
                    default:
                        break;
                }
            }

            if (!std::isfinite(loss))
                throw AlgorithmError("trainer: non-finite loss at epoch " +
                                     std::to_string(epoch) + ", batch " +
                                     std::to_string(step));
            opt.step(m.student.params(), grad, lr);
            m.final_loss = loss;
            ++m.steps_run;

            if (m.has_teacher) {
                const double cap =
                    1.0 - 1.0 / static_cast<double>(opt.step_count() + 1);
                const double decay = std::min(strategy.ema_decay, cap);
                auto& tp = m.teacher.params();
                const auto& sp = m.student.params();
                for (std::size_t i = 0; i < tp.size(); ++i)
                    tp[i] = decay * tp[i] + (1.0 - decay) * sp[i];
            }
            if (step_observer)
                step_observer(m.student.params(),
                              m.has_teacher ? m.teacher.params() : m.student.params());
        }
    }
    return m;
}

}  // namespace sslforge
