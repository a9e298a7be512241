#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Weighted binary decision stump over {-1,+1} targets. The search space is
// every feature, the midpoints of its consecutive sorted unique values plus
// a +inf sentinel (which makes the two constant stumps reachable), and both
// polarities. Ties resolve to the lowest feature index, then the lowest
// threshold, then polarity +1.
class DecisionStump {
public:
    // sign predicted on x[feature] <= threshold; the opposite sign otherwise
    std::size_t feature = 0;
    double threshold = std::numeric_limits<double>::infinity();
    double polarity = 1.0;
    double weighted_error = 0.0;

    void fit(const Matrix& X, const std::vector<double>& y_pm,
             const std::vector<double>& weights) {
        const std::size_t n = X.rows(), d = X.cols();
        if (weights.size() != n || y_pm.size() != n)
            throw DataError("decision_stump: weight/label length mismatch");
        double total = 0.0;
        for (double w : weights) {
            if (w < 0) throw DataError("decision_stump: negative sample weight");
            total += w;
        }
        if (!(total > 0)) throw DataError("decision_stump: weights sum to zero");

        double best = std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < d; ++f) {
            std::vector<double> vals;
            vals.reserve(n);
            for (std::size_t i = 0; i < n; ++i) vals.push_back(X(i, f));
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

            std::vector<double> thresholds;
            thresholds.reserve(vals.size());
            for (std::size_t t = 0; t + 1 < vals.size(); ++t)
                thresholds.push_back(0.5 * (vals[t] + vals[t + 1]));
            thresholds.push_back(std::numeric_limits<double>::infinity());

            for (double thr : thresholds) {
                // err_pos: polarity +1 (predict +1 on the <= side)
                double err_pos = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double pred = X(i, f) <= thr ? 1.0 : -1.0;
                    if (pred != y_pm[i]) err_pos += weights[i];
                }
                for (double pol : {1.0, -1.0}) {
                    const double err = pol > 0 ? err_pos : total - err_pos;
                    if (err < best - 1e-15) {
                        best = err;
                        feature = f;
                        threshold = thr;
                        polarity = pol;
                    }
                }
            }
        }
        weighted_error = best / total;
    }

    double predict_one(std::span<const double> x) const {
        return x[feature] <= threshold ? polarity : -polarity;
    }

    std::vector<double> predict(const Matrix& X) const {
        std::vector<double> out(X.rows());
        for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_one(X.row(i));
        return out;
    }
};

}  // namespace sslforge
