#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sslforge/base_learner.hpp"
#include "sslforge/boosting.hpp"
#include "sslforge/co_training.hpp"
#include "sslforge/constrained_kmeans.hpp"
#include "sslforge/coreg.hpp"
#include "sslforge/dataset.hpp"
#include "sslforge/estimator.hpp"
#include "sslforge/gaussian_nb.hpp"
#include "sslforge/graph.hpp"
#include "sslforge/knn.hpp"
#include "sslforge/label_propagation.hpp"
#include "sslforge/lapsvm.hpp"
#include "sslforge/logistic.hpp"
#include "sslforge/params.hpp"
#include "sslforge/ssgmm.hpp"
#include "sslforge/stump.hpp"
#include "sslforge/trainer.hpp"
#include "sslforge/tri_training.hpp"
#include "sslforge/tsvm.hpp"

namespace sslforge {

// Algorithm names accepted by estimator_fit: the 16 semi-supervised
// algorithms plus the supervised baselines they are measured against.
inline const std::vector<std::string>& ssl_algorithm_names() {
    static const std::vector<std::string> names = {
        "ssgmm",        "tsvm",          "lapsvm",
        "label_propagation", "label_spreading",
        "co_training",  "tri_training",  "semiboost",
        "assemble",     "coreg",         "constrained_kmeans",
        "constrained_seed_kmeans",       "pseudo_label",
        "pi_model",     "mean_teacher",  "pi_model_reg"};
    return names;
}

inline const std::vector<std::string>& supervised_algorithm_names() {
    static const std::vector<std::string> names = {
        "knn",  "knn_regressor", "gaussian_nb", "logistic_regression",
        "decision_stump", "mlp", "mlp_regressor"};
    return names;
}

inline bool algorithm_known(const std::string& name) {
    for (const auto& n : ssl_algorithm_names())
        if (n == name) return true;
    for (const auto& n : supervised_algorithm_names())
        if (n == name) return true;
    return false;
}

inline TaskKind algorithm_task_kind(const std::string& name) {
    if (name == "coreg" || name == "pi_model_reg" || name == "knn_regressor" ||
        name == "mlp_regressor")
        return TaskKind::regression;
    if (name == "constrained_kmeans" || name == "constrained_seed_kmeans")
        return TaskKind::clustering;
    if (algorithm_known(name)) return TaskKind::classification;
    throw ConfigError("unknown algorithm '" + name + "'");
}

namespace detail {

// ---- generic wrappers ------------------------------------------------

template <typename ModelT>
class ProbaModel final : public FittedModel {
public:
    ProbaModel(ModelT model, std::size_t dims, TaskKind task,
               std::vector<std::string> class_names, Diagnostics diag = {})
        : model_(std::move(model)), dims_(dims), task_(task),
          class_names_(std::move(class_names)) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != dims_) throw DataError("predict: feature-dimension mismatch");
        return model_.predict(X);
    }
    TaskKind task() const override { return task_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

private:
    ModelT model_;
    std::size_t dims_;
    TaskKind task_;
    std::vector<std::string> class_names_;
};

template <typename ModelT>
FittedModelPtr wrap_proba(ModelT model, const SSLDataset& v, TaskKind task,
                          Diagnostics diag = {}) {
    return std::make_shared<ProbaModel<ModelT>>(std::move(model), v.n_features(), task,
                                                v.class_names, std::move(diag));
}

// Transductive graph scores with a 1-NN hand-off for out-of-sample rows:
// a query inherits the scores of its nearest graph node (documented
// convenience; graph methods are transductive by nature).
class GraphModel final : public FittedModel {
public:
    GraphModel(Matrix all_X, Matrix scores, Diagnostics diag)
        : all_X_(std::move(all_X)), scores_(std::move(scores)) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != all_X_.cols()) throw DataError("predict: feature-dimension mismatch");
        Matrix out(X.rows(), scores_.cols());
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const auto nn = k_nearest(all_X_, X.row(i), 1, 2.0);
            for (std::size_t c = 0; c < scores_.cols(); ++c) out(i, c) = scores_(nn[0], c);
        }
        return Prediction::from_scores(std::move(out));
    }
    TaskKind task() const override { return TaskKind::classification; }

private:
    Matrix all_X_;
    Matrix scores_;
};

class ClusteringModel final : public FittedModel {
public:
    ClusteringModel(ClusteringResult result, std::size_t dims, Diagnostics diag)
        : result_(std::move(result)), dims_(dims) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != dims_) throw DataError("predict: feature-dimension mismatch");
        Prediction p;
        p.labels.resize(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i)
            p.labels[i] = static_cast<double>(result_.nearest_centroid(X.row(i)));
        return p;
    }
    TaskKind task() const override { return TaskKind::clustering; }
    const ClusteringResult& result() const { return result_; }

private:
    ClusteringResult result_;
    std::size_t dims_;
};

class SvmBinaryModel final : public FittedModel {
public:
    SvmBinaryModel(LinearSvmModel model, std::size_t dims,
                   std::vector<std::string> class_names, Diagnostics diag)
        : model_(std::move(model)), dims_(dims), class_names_(std::move(class_names)) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != dims_) throw DataError("predict: feature-dimension mismatch");
        Matrix scores(X.rows(), 2);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const double f = model_.decision(X.row(i));
            scores(i, 0) = -f;
            scores(i, 1) = f;
        }
        return Prediction::from_scores(std::move(scores));
    }
    TaskKind task() const override { return TaskKind::classification; }

private:
    LinearSvmModel model_;
    std::size_t dims_;
    std::vector<std::string> class_names_;
};

class LapSvmFitted final : public FittedModel {
public:
    LapSvmFitted(LapSvmModel model, std::size_t dims, Diagnostics diag)
        : model_(std::move(model)), dims_(dims) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != dims_) throw DataError("predict: feature-dimension mismatch");
        Matrix scores(X.rows(), 2);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            const double f = model_.decision(X.row(i));
            scores(i, 0) = -f;
            scores(i, 1) = f;
        }
        return Prediction::from_scores(std::move(scores));
    }
    TaskKind task() const override { return TaskKind::classification; }

private:
    LapSvmModel model_;
    std::size_t dims_;
};

class MlpFitted final : public FittedModel {
public:
    MlpFitted(MlpTrainedModel model, std::size_t dims, Diagnostics diag)
        : model_(std::move(model)), dims_(dims) {
        diagnostics_ = std::move(diag);
    }
    Prediction predict(const FeatureMatrix& X) const override {
        if (X.cols() != dims_) throw DataError("predict: feature-dimension mismatch");
        return model_.predict(X);
    }
    TaskKind task() const override { return model_.task; }
    const MlpTrainedModel& trained() const { return model_; }

private:
    MlpTrainedModel model_;
    std::size_t dims_;
};

// ---- parameter plumbing ----------------------------------------------

inline BaseLearnerSpec base_spec_from(const ParamMap& params, const std::string& fallback) {
    BaseLearnerSpec spec;
    spec.kind = params.get_string("base", fallback);
    if (params.has("base_params"))
        spec.params = ParamMap(params.json().at("base_params"));
    return spec;
}

inline std::vector<std::size_t> hidden_sizes_from(const ParamMap& params) {
    if (!params.has("hidden")) return {32};
    auto sizes = params.get_index_list("hidden");
    for (std::size_t h : sizes)
        if (h < 1) throw ConfigError("hidden layer sizes must be >= 1");
    return sizes;
}

inline TrainConfig train_config_from(const ParamMap& params, std::uint64_t seed) {
    TrainConfig cfg;
    cfg.seed = seed;
    cfg.epochs = static_cast<std::size_t>(params.get_int("epochs", 50));
    cfg.batch_size = static_cast<std::size_t>(params.get_int("batch_size", 32));
    if (cfg.batch_size < 1) throw ConfigError("batch_size must be >= 1");
    const std::string opt = params.get_string("optimizer", "adam");
    if (opt == "sgd") cfg.optimizer.kind = OptimizerKind::sgd;
    else if (opt == "adam") cfg.optimizer.kind = OptimizerKind::adam;
    else throw ConfigError("unknown optimizer '" + opt + "'");
    cfg.optimizer.lr = params.get_double("lr", opt == "adam" ? 0.01 : 0.1);
    if (cfg.optimizer.lr <= 0) throw ConfigError("lr must be > 0");
    cfg.optimizer.momentum = params.get_double("momentum", 0.0);
    cfg.optimizer.weight_decay = params.get_double("weight_decay", 0.0);
    const std::string sched = params.get_string("scheduler", "constant");
    if (sched == "constant") cfg.scheduler.kind = SchedulerKind::constant;
    else if (sched == "step") cfg.scheduler.kind = SchedulerKind::step;
    else if (sched == "cosine") cfg.scheduler.kind = SchedulerKind::cosine;
    else throw ConfigError("unknown scheduler '" + sched + "'");
    cfg.scheduler.period = static_cast<std::size_t>(params.get_int("sched_period", 10));
    cfg.scheduler.factor = params.get_double("sched_factor", 0.5);
    cfg.scheduler.T_max = static_cast<std::size_t>(
        params.get_int("sched_T_max", static_cast<std::int64_t>(cfg.epochs)));
    cfg.scheduler.lr_min = params.get_double("sched_lr_min", 0.0);
    return cfg;
}

inline std::initializer_list<const char*> neural_keys(StrategyKind kind) {
    static const std::initializer_list<const char*> plain = {
        "hidden",     "epochs",       "batch_size", "optimizer",    "lr",
        "momentum",   "weight_decay", "scheduler",  "sched_period",
        "sched_factor", "sched_T_max", "sched_lr_min"};
    static const std::initializer_list<const char*> with_strategy = {
        "hidden",     "epochs",       "batch_size", "optimizer",    "lr",
        "momentum",   "weight_decay", "scheduler",  "sched_period",
        "sched_factor", "sched_T_max", "sched_lr_min",
        "w_max",      "ramp_T",       "noise_sd",   "ema_decay",
        "T1",         "T2",           "alpha_f"};
    return kind == StrategyKind::supervised ? plain : with_strategy;
}

inline SslStrategy strategy_from(StrategyKind kind, const ParamMap& params) {
    SslStrategy s;
    s.kind = kind;
    s.T1 = static_cast<std::size_t>(params.get_int("T1", 5));
    s.T2 = static_cast<std::size_t>(params.get_int("T2", 20));
    s.alpha_f = params.get_double("alpha_f", 1.0);
    s.w_max = params.get_double("w_max", 1.0);
    s.ramp_T = static_cast<std::size_t>(params.get_int("ramp_T", 10));
    s.noise_sd = params.get_double("noise_sd", 0.1);
    s.ema_decay = params.get_double("ema_decay", 0.99);
    return s;
}

inline FittedModelPtr fit_neural(StrategyKind kind, TaskKind task, const ParamMap& params,
                                 const SSLDataset& d, std::uint64_t seed) {
    params.check_allowed("neural estimator", neural_keys(kind));
    const SslStrategy strategy = strategy_from(kind, params);
    const TrainConfig cfg = train_config_from(params, seed);
    MlpTrainedModel model = trainer_fit(strategy, task, d, hidden_sizes_from(params), cfg);
    Diagnostics diag{{"steps", static_cast<double>(model.steps_run)},
                     {"final_loss", model.final_loss}};
    const std::size_t dims = d.X.cols();
    return std::make_shared<MlpFitted>(std::move(model), dims, std::move(diag));
}

// must-link chains within each labeled class, plus one cannot-link per
// class pair, lift the labeled information into COP-KMeans constraints
inline PairConstraints constraints_from_labels(const SSLDataset& v) {
    PairConstraints pc;
    std::vector<std::vector<std::size_t>> per_class(v.n_classes);
    for (std::size_t i = 0; i < v.n_labeled(); ++i)
        per_class[static_cast<std::size_t>(v.y[i])].push_back(i);
    for (const auto& members : per_class)
        for (std::size_t t = 0; t + 1 < members.size(); ++t)
            pc.must_link.emplace_back(members[t], members[t + 1]);
    for (std::size_t a = 0; a < per_class.size(); ++a)
        for (std::size_t b = a + 1; b < per_class.size(); ++b)
            if (!per_class[a].empty() && !per_class[b].empty())
                pc.cannot_link.emplace_back(per_class[a].front(), per_class[b].front());
    return pc;
}

}  // namespace detail

inline FittedModelPtr estimator_fit(const std::string& algorithm, const ParamMap& params,
                                    const SSLDataset& d, std::uint64_t seed) {
    using namespace detail;

    if (algorithm == "knn") {
        params.check_allowed("knn", {"k", "p", "weighted"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        KnnClassifier m(static_cast<std::size_t>(params.get_int("k", 5)),
                        params.get_double("p", 2.0), params.get_bool("weighted", false));
        m.fit(v.X, v.y, v.n_classes);
        return wrap_proba(std::move(m), v, TaskKind::classification);
    }
    if (algorithm == "knn_regressor") {
        params.check_allowed("knn_regressor", {"k", "p", "weighted"});
        const SSLDataset v = validate_dataset(d, TaskKind::regression);
        KnnRegressor m(static_cast<std::size_t>(params.get_int("k", 5)),
                       params.get_double("p", 2.0), params.get_bool("weighted", false));
        m.fit(v.X, v.y);
        struct Reg {
            KnnRegressor inner;
            Prediction predict(const Matrix& X) const {
                return Prediction::from_labels(inner.predict(X));
            }
        };
        return wrap_proba(Reg{std::move(m)}, v, TaskKind::regression);
    }
    if (algorithm == "gaussian_nb") {
        params.check_allowed("gaussian_nb", {});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        GaussianNB m;
        m.fit(v.X, v.y, v.n_classes);
        return wrap_proba(std::move(m), v, TaskKind::classification);
    }
    if (algorithm == "logistic_regression") {
        params.check_allowed("logistic_regression", {"lr", "epochs", "l2"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        LogisticRegression m(params.get_double("lr", 0.5),
                             static_cast<std::size_t>(params.get_int("epochs", 200)),
                             params.get_double("l2", 0.0));
        m.fit(v.X, v.y, v.n_classes);
        return wrap_proba(std::move(m), v, TaskKind::classification);
    }
    if (algorithm == "decision_stump") {
        params.check_allowed("decision_stump", {});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        if (v.n_classes != 2) throw AlgorithmError("decision_stump: binary only");
        std::vector<double> y_pm(v.y.size());
        for (std::size_t i = 0; i < v.y.size(); ++i) y_pm[i] = v.y[i] == 1.0 ? 1.0 : -1.0;
        DecisionStump m;
        m.fit(v.X, y_pm, std::vector<double>(v.y.size(), 1.0));
        struct StumpPred {
            DecisionStump inner;
            Prediction predict(const Matrix& X) const {
                Matrix scores(X.rows(), 2);
                for (std::size_t i = 0; i < X.rows(); ++i) {
                    const double f = inner.predict_one(X.row(i));
                    scores(i, 0) = -f;
                    scores(i, 1) = f;
                }
                return Prediction::from_scores(std::move(scores));
            }
        };
        return wrap_proba(StumpPred{m}, v, TaskKind::classification);
    }
    if (algorithm == "mlp")
        return fit_neural(StrategyKind::supervised, TaskKind::classification, params, d, seed);
    if (algorithm == "mlp_regressor")
        return fit_neural(StrategyKind::supervised, TaskKind::regression, params, d, seed);

    if (algorithm == "label_propagation" || algorithm == "label_spreading") {
        params.check_allowed(algorithm,
                             {"k", "mode", "gamma", "alpha", "tol", "max_iter"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        const Matrix all = v.all_X();
        const auto k = static_cast<std::size_t>(params.get_int("k", 7));
        const std::string mode_s = params.get_string("mode", "rbf");
        GraphWeight mode;
        if (mode_s == "rbf") mode = GraphWeight::rbf;
        else if (mode_s == "connectivity") mode = GraphWeight::connectivity;
        else throw ConfigError(algorithm + ": unknown mode '" + mode_s + "'");
        const double gamma = params.get_double("gamma", -1.0);
        const double tol = params.get_double("tol", 1e-6);
        const auto max_iter = static_cast<std::size_t>(params.get_int("max_iter", 1000));

        const AffinityGraph g = build_knn_graph(all, std::min(k, all.rows() - 1), mode, gamma);
        std::vector<int> y(all.rows(), -1);
        for (std::size_t i = 0; i < v.n_labeled(); ++i) y[i] = static_cast<int>(v.y[i]);

        LabelDistribution dist;
        if (algorithm == "label_propagation") {
            dist = label_propagation_fit(g, y, tol, max_iter);
        } else {
            const double alpha = params.get_double("alpha", 0.99);
            dist = label_spreading_fit(g, y, alpha, tol, max_iter);
        }
        Diagnostics diag{{"iterations", static_cast<double>(dist.iterations)},
                         {"converged", dist.converged ? 1.0 : 0.0}};
        return std::make_shared<GraphModel>(all, dist.normalized(), std::move(diag));
    }
    if (algorithm == "ssgmm") {
        params.check_allowed("ssgmm", {"max_iter", "tol", "reg"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        GmmState st = ssgmm_fit(v, static_cast<std::size_t>(params.get_int("max_iter", 300)),
                                params.get_double("tol", 1e-6), params.get_double("reg", 1e-6));
        Diagnostics diag{{"iterations", static_cast<double>(st.iterations)},
                         {"converged", st.converged ? 1.0 : 0.0},
                         {"log_likelihood", st.log_likelihood}};
        struct GmmPred {
            GmmState inner;
            Prediction predict(const Matrix& X) const { return ssgmm_predict_proba(inner, X); }
        };
        return wrap_proba(GmmPred{std::move(st)}, v, TaskKind::classification,
                          std::move(diag));
    }
    if (algorithm == "tsvm") {
        params.check_allowed("tsvm", {"C_l", "C_u", "pos_fraction"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        TsvmResult r = tsvm_fit(v, params.get_double("C_l", 1.0), params.get_double("C_u", 0.1),
                                params.get_double("pos_fraction", -1.0));
        Diagnostics diag{{"swaps", static_cast<double>(r.swap_count)},
                         {"objective", r.objective_trace.back()}};
        return std::make_shared<SvmBinaryModel>(std::move(r.model), v.n_features(),
                                                v.class_names, std::move(diag));
    }
    if (algorithm == "lapsvm") {
        params.check_allowed("lapsvm", {"gamma_A", "gamma_I", "gamma", "k", "iters"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        LapSvmModel m = lapsvm_fit(v, params.get_double("gamma_A", 1e-2),
                                   params.get_double("gamma_I", 1e-2),
                                   params.get_double("gamma", -1.0),
                                   static_cast<std::size_t>(params.get_int("k", 7)),
                                   static_cast<std::size_t>(params.get_int("iters", 500)));
        Diagnostics diag{{"iterations", static_cast<double>(m.iterations)},
                         {"objective", m.objective}};
        return std::make_shared<LapSvmFitted>(std::move(m), v.n_features(), std::move(diag));
    }
    if (algorithm == "co_training") {
        params.check_allowed("co_training", {"base", "base_params", "p", "n", "pool",
                                             "rounds", "view1", "view2"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        const BaseLearnerSpec base = base_spec_from(params, "gaussian_nb");
        ViewSplit views;
        const bool has_views = params.has("view1") || params.has("view2");
        if (has_views) {
            views.view1 = params.get_index_list("view1");
            views.view2 = params.get_index_list("view2");
        }
        CoTrainingModel m = co_training_fit(
            v, base, has_views ? &views : nullptr,
            static_cast<std::size_t>(params.get_int("p", 1)),
            static_cast<std::size_t>(params.get_int("n", 3)),
            static_cast<std::size_t>(params.get_int("pool", 75)),
            static_cast<std::size_t>(params.get_int("rounds", 30)), seed);
        Diagnostics diag{{"rounds", static_cast<double>(m.rounds_run)},
                         {"pseudo_labeled", static_cast<double>(m.added_total)}};
        struct CoPred {
            std::shared_ptr<const CoTrainingModel> inner;
            Prediction predict(const Matrix& X) const {
                return Prediction::from_scores(inner->predict_proba(X));
            }
        };
        auto holder = std::make_shared<CoTrainingModel>(std::move(m));
        return wrap_proba(CoPred{holder}, v, TaskKind::classification, std::move(diag));
    }
    if (algorithm == "tri_training") {
        params.check_allowed("tri_training", {"base", "base_params"});
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        TriTrainingModel m = tri_training_fit(v, base_spec_from(params, "gaussian_nb"), seed);
        Diagnostics diag{{"rounds", static_cast<double>(m.rounds_run)},
                         {"accepted_updates", static_cast<double>(m.accepted_updates)}};
        struct TriPred {
            std::shared_ptr<const TriTrainingModel> inner;
            Prediction predict(const Matrix& X) const {
                return Prediction::from_scores(inner->predict_proba(X));
            }
        };
        auto holder = std::make_shared<TriTrainingModel>(std::move(m));
        return wrap_proba(TriPred{holder}, v, TaskKind::classification, std::move(diag));
    }
    if (algorithm == "assemble" || algorithm == "semiboost") {
        const SSLDataset v = validate_dataset(d, TaskKind::classification);
        BoostEnsemble ens;
        Diagnostics diag;
        if (algorithm == "assemble") {
            params.check_allowed("assemble", {"base", "base_params", "T", "beta"});
            ens = assemble_fit(v, base_spec_from(params, "decision_stump"),
                               static_cast<std::size_t>(params.get_int("T", 30)),
                               params.get_double("beta", 0.9), seed);
        } else {
            params.check_allowed("semiboost",
                                 {"base", "base_params", "T", "C", "sample_fraction", "gamma"});
            ens = semiboost_fit(v, base_spec_from(params, "decision_stump"),
                                static_cast<std::size_t>(params.get_int("T", 20)),
                                params.get_double("C", 1.0),
                                params.get_double("sample_fraction", 0.1),
                                params.get_double("gamma", -1.0), seed);
        }
        diag["rounds"] = static_cast<double>(ens.rounds_run);
        diag["ensemble_size"] = static_cast<double>(ens.learners.size());
        struct BoostPred {
            std::shared_ptr<const BoostEnsemble> inner;
            Prediction predict(const Matrix& X) const { return inner->predict(X); }
        };
        auto holder = std::make_shared<BoostEnsemble>(std::move(ens));
        return wrap_proba(BoostPred{holder}, v, TaskKind::classification, std::move(diag));
    }
    if (algorithm == "constrained_kmeans") {
        params.check_allowed("constrained_kmeans",
                             {"k", "must_link", "cannot_link", "max_iter", "restarts"});
        const SSLDataset v = validate_dataset(d, TaskKind::clustering);
        const Matrix all = v.all_X();
        const auto k = static_cast<std::size_t>(
            params.get_int("k", static_cast<std::int64_t>(std::max<std::size_t>(v.n_classes, 1))));
        PairConstraints pc = constraints_from_labels(v);
        for (auto [a, b] : params.get_index_pairs("must_link")) pc.must_link.emplace_back(a, b);
        for (auto [a, b] : params.get_index_pairs("cannot_link"))
            pc.cannot_link.emplace_back(a, b);
        ClusteringResult r = constrained_kmeans_fit(
            all, k, pc, static_cast<std::size_t>(params.get_int("max_iter", 300)),
            static_cast<std::size_t>(params.get_int("restarts", 10)), seed);
        Diagnostics diag{{"objective", r.objective},
                         {"iterations", static_cast<double>(r.iterations)},
                         {"best_restart", static_cast<double>(r.best_restart)}};
        return std::make_shared<ClusteringModel>(std::move(r), all.cols(), std::move(diag));
    }
    if (algorithm == "constrained_seed_kmeans") {
        params.check_allowed("constrained_seed_kmeans", {"clamp", "max_iter"});
        const SSLDataset v = validate_dataset(d, TaskKind::clustering);
        ClusteringResult r = constrained_seed_kmeans_fit(
            v, params.get_bool("clamp", true),
            static_cast<std::size_t>(params.get_int("max_iter", 300)));
        Diagnostics diag{{"objective", r.objective},
                         {"iterations", static_cast<double>(r.iterations)}};
        return std::make_shared<ClusteringModel>(std::move(r), v.n_features(), std::move(diag));
    }
    if (algorithm == "coreg") {
        params.check_allowed("coreg", {"k1", "k2", "p1", "p2", "rounds", "pool"});
        const SSLDataset v = validate_dataset(d, TaskKind::regression);
        CoRegModel m = coreg_fit(v, static_cast<std::size_t>(params.get_int("k1", 3)),
                                 static_cast<std::size_t>(params.get_int("k2", 3)),
                                 params.get_double("p1", 2.0), params.get_double("p2", 5.0),
                                 static_cast<std::size_t>(params.get_int("rounds", 100)),
                                 static_cast<std::size_t>(params.get_int("pool", 100)), seed);
        Diagnostics diag{{"rounds", static_cast<double>(m.rounds_run)},
                         {"added", static_cast<double>(m.added1 + m.added2)}};
        return wrap_proba(std::move(m), v, TaskKind::regression, std::move(diag));
    }
    if (algorithm == "pseudo_label")
        return detail::fit_neural(StrategyKind::pseudo_label, TaskKind::classification, params,
                                  d, seed);
    if (algorithm == "pi_model")
        return detail::fit_neural(StrategyKind::pi_model, TaskKind::classification, params, d,
                                  seed);
    if (algorithm == "mean_teacher")
        return detail::fit_neural(StrategyKind::mean_teacher, TaskKind::classification, params,
                                  d, seed);
    if (algorithm == "pi_model_reg")
        return detail::fit_neural(StrategyKind::pi_model_reg, TaskKind::regression, params, d,
                                  seed);

    throw ConfigError("unknown algorithm '" + algorithm + "'");
}

}  // namespace sslforge
