#pragma once

#include <cmath>
#include <vector>

#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// L1-hinge linear SVM with the bias handled as an augmented (regularized)
// feature, solved by dual coordinate descent in fixed index order.
struct LinearSvmModel {
    std::vector<double> w;
    double b = 0.0;
    std::vector<double> alpha;
    std::size_t sweeps = 0;
    bool converged = false;

    double decision(std::span<const double> x) const {
        return dot(w, x) + b;
    }
};

// Primal objective (1/2)(||w||^2 + b^2) + sum_i C_i * hinge(y_i f(x_i)).
inline double svm_primal_objective(const LinearSvmModel& m, const Matrix& X,
                                   const std::vector<double>& y_pm,
                                   const std::vector<double>& C) {
    double obj = 0.5 * (dot(m.w, m.w) + m.b * m.b);
    for (std::size_t i = 0; i < X.rows(); ++i)
        obj += C[i] * std::max(0.0, 1.0 - y_pm[i] * m.decision(X.row(i)));
    return obj;
}

inline LinearSvmModel linear_svm_fit(const Matrix& X, const std::vector<double>& y_pm,
                                     const std::vector<double>& C,
                                     std::size_t max_sweeps = 1000, double tol = 1e-6) {
    const std::size_t n = X.rows(), d = X.cols();
    if (y_pm.size() != n || C.size() != n) throw DataError("linear_svm: length mismatch");
    bool pos = false, neg = false;
    for (double v : y_pm) {
        if (v == 1.0) pos = true;
        else if (v == -1.0) neg = true;
        else throw DataError("linear_svm: labels must be +-1");
    }
    if (!pos || !neg) throw DataError("linear_svm: both labels must be present");

    LinearSvmModel m;
    m.w.assign(d, 0.0);
    m.alpha.assign(n, 0.0);

    std::vector<double> qii(n);
    for (std::size_t i = 0; i < n; ++i) qii[i] = dot(X.row(i), X.row(i)) + 1.0;

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double violation = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (C[i] <= 0.0) continue;
            const double g = y_pm[i] * (m.decision(X.row(i))) - 1.0;
            double pg = g;
            if (m.alpha[i] <= 0.0) pg = std::min(g, 0.0);
            else if (m.alpha[i] >= C[i]) pg = std::max(g, 0.0);
            violation = std::max(violation, std::abs(pg));
            if (pg == 0.0) continue;
            const double old = m.alpha[i];
            const double next = std::min(std::max(old - g / qii[i], 0.0), C[i]);
            if (next == old) continue;
            const double delta = (next - old) * y_pm[i];
            for (std::size_t j = 0; j < d; ++j) m.w[j] += delta * X(i, j);
            m.b += delta;
            m.alpha[i] = next;
        }
        m.sweeps = sweep + 1;
        if (violation < tol) {
            m.converged = true;
            break;
        }
    }
    return m;
}

}  // namespace sslforge
