#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/gaussian_nb.hpp"
#include "sslforge/knn.hpp"
#include "sslforge/logistic.hpp"
#include "sslforge/params.hpp"
#include "sslforge/stump.hpp"

namespace sslforge {

// Which base learner a meta-algorithm (co-training, tri-training,
// boosting) wraps, plus its parameters.
struct BaseLearnerSpec {
    std::string kind;  // knn_classifier | gaussian_nb | logistic_regression | decision_stump
    ParamMap params;
};

// A freshly fittable supervised classifier behind one interface.
// Meta-algorithms check the capabilities they need before training.
class BaseClassifier {
public:
    virtual ~BaseClassifier() = default;
    virtual void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
                     const std::vector<double>* sample_weights) = 0;
    virtual LabelArray predict(const Matrix& X) const = 0;
    virtual Matrix predict_proba(const Matrix& X) const = 0;
    virtual bool has_proba() const = 0;
    virtual bool supports_weights() const = 0;
    virtual std::unique_ptr<BaseClassifier> fresh() const = 0;
};

namespace detail {

class KnnBase final : public BaseClassifier {
public:
    explicit KnnBase(const ParamMap& p) : params_(p) {
        p.check_allowed("knn_classifier", {"k", "p", "weighted"});
    }
    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
             const std::vector<double>* w) override {
        if (w) throw ConfigError("knn_classifier does not support sample weights");
        model_ = KnnClassifier(static_cast<std::size_t>(params_.get_int("k", 5)),
                               params_.get_double("p", 2.0),
                               params_.get_bool("weighted", false));
        model_.fit(X, y, n_classes);
    }
    LabelArray predict(const Matrix& X) const override { return model_.predict(X).labels; }
    Matrix predict_proba(const Matrix& X) const override { return model_.predict_proba(X); }
    bool has_proba() const override { return true; }
    bool supports_weights() const override { return false; }
    std::unique_ptr<BaseClassifier> fresh() const override {
        return std::make_unique<KnnBase>(params_);
    }

private:
    ParamMap params_;
    KnnClassifier model_;
};

class GaussianNbBase final : public BaseClassifier {
public:
    explicit GaussianNbBase(const ParamMap& p) { p.check_allowed("gaussian_nb", {}); }
    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
             const std::vector<double>* w) override {
        model_ = GaussianNB();
        model_.fit(X, y, n_classes, w);
    }
    LabelArray predict(const Matrix& X) const override { return model_.predict(X).labels; }
    Matrix predict_proba(const Matrix& X) const override { return model_.predict_proba(X); }
    bool has_proba() const override { return true; }
    bool supports_weights() const override { return true; }
    std::unique_ptr<BaseClassifier> fresh() const override {
        return std::make_unique<GaussianNbBase>(*this);
    }

private:
    GaussianNB model_;
};

class LogisticBase final : public BaseClassifier {
public:
    explicit LogisticBase(const ParamMap& p) : params_(p) {
        p.check_allowed("logistic_regression", {"lr", "epochs", "l2"});
    }
    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
             const std::vector<double>* w) override {
        if (w) throw ConfigError("logistic_regression base does not support sample weights");
        model_ = LogisticRegression(params_.get_double("lr", 0.5),
                                    static_cast<std::size_t>(params_.get_int("epochs", 200)),
                                    params_.get_double("l2", 0.0));
        model_.fit(X, y, n_classes);
    }
    LabelArray predict(const Matrix& X) const override { return model_.predict(X).labels; }
    Matrix predict_proba(const Matrix& X) const override { return model_.predict_proba(X); }
    bool has_proba() const override { return true; }
    bool supports_weights() const override { return false; }
    std::unique_ptr<BaseClassifier> fresh() const override {
        return std::make_unique<LogisticBase>(params_);
    }

private:
    ParamMap params_;
    LogisticRegression model_{0.5, 0, 0.0};
};

// Binary stump exposed on {0,1} labels.
class StumpBase final : public BaseClassifier {
public:
    explicit StumpBase(const ParamMap& p) { p.check_allowed("decision_stump", {}); }
    void fit(const Matrix& X, const LabelArray& y, std::size_t n_classes,
             const std::vector<double>* w) override {
        if (n_classes != 2) throw ConfigError("decision_stump: binary labels required");
        std::vector<double> y_pm(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) y_pm[i] = y[i] == 1.0 ? 1.0 : -1.0;
        const std::vector<double> uniform(y.size(), 1.0);
        model_.fit(X, y_pm, w ? *w : uniform);
    }
    LabelArray predict(const Matrix& X) const override {
        LabelArray out(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i)
            out[i] = model_.predict_one(X.row(i)) > 0 ? 1.0 : 0.0;
        return out;
    }
    Matrix predict_proba(const Matrix&) const override {
        throw ConfigError("decision_stump has no probability estimates");
    }
    bool has_proba() const override { return false; }
    bool supports_weights() const override { return true; }
    std::unique_ptr<BaseClassifier> fresh() const override {
        return std::make_unique<StumpBase>(*this);
    }

private:
    DecisionStump model_;
};

}  // namespace detail

inline std::unique_ptr<BaseClassifier> make_base_classifier(const BaseLearnerSpec& spec) {
    if (spec.kind == "knn_classifier") return std::make_unique<detail::KnnBase>(spec.params);
    if (spec.kind == "gaussian_nb") return std::make_unique<detail::GaussianNbBase>(spec.params);
    if (spec.kind == "logistic_regression")
        return std::make_unique<detail::LogisticBase>(spec.params);
    if (spec.kind == "decision_stump") return std::make_unique<detail::StumpBase>(spec.params);
    throw ConfigError("unknown base learner '" + spec.kind + "'");
}

}  // namespace sslforge
