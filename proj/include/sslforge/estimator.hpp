#pragma once

#include <map>
#include <memory>
#include <string>

#include "sslforge/dataset.hpp"
#include "sslforge/params.hpp"

namespace sslforge {

// Numeric fit diagnostics (iterations, convergence flags, objectives),
// surfaced through the CLI result document.
using Diagnostics = std::map<std::string, double>;

// Immutable fitted state. predict() is const, models carry no interior
// mutability, so fitted models are safe to share across threads.
class FittedModel {
public:
    virtual ~FittedModel() = default;
    virtual Prediction predict(const FeatureMatrix& X) const = 0;
    virtual TaskKind task() const = 0;
    virtual const Diagnostics& diagnostics() const { return diagnostics_; }

protected:
    Diagnostics diagnostics_;
};

using FittedModelPtr = std::shared_ptr<const FittedModel>;

// The unified estimator contract: every algorithm fits through this one
// entry point and predicts through FittedModel::predict. Implemented in
// registry.hpp, which knows all algorithm names.
FittedModelPtr estimator_fit(const std::string& algorithm, const ParamMap& params,
                             const SSLDataset& d, std::uint64_t seed);

inline Prediction estimator_predict(const FittedModel& model, const FeatureMatrix& X) {
    return model.predict(X);
}

}  // namespace sslforge
