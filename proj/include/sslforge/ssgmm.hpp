#pragma once

#include <cmath>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/gaussian_nb.hpp"
#include "sslforge/matrix.hpp"

namespace sslforge {

// Semi-supervised Gaussian mixture, one full-covariance Gaussian per
// class. Labeled responsibilities are clamped one-hot; unlabeled ones are
// posteriors. All density work happens in the log domain via Cholesky.
struct GmmState {
    std::vector<double> weights;          // K mixture weights, simplex
    std::vector<std::vector<double>> means;  // K x d
    std::vector<Matrix> covariances;      // K of d x d (already regularized)
    std::vector<Matrix> chol;             // cached Cholesky factors
    std::size_t n_classes = 0, dims = 0;

    double log_likelihood = 0.0;
    std::vector<double> ll_trace;  // one entry per EM iteration
    std::size_t iterations = 0;
    bool converged = false;

    double log_density(std::size_t k, std::span<const double> x) const {
        const std::size_t d = dims;
        std::vector<double> diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = x[j] - means[k][j];
        const auto z = forward_solve(chol[k], diff);
        double quad = 0.0, logdet = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            quad += z[j] * z[j];
            logdet += std::log(chol[k](j, j));
        }
        return -0.5 * (static_cast<double>(d) * std::log(2.0 * M_PI) + quad) - logdet;
    }
};

namespace detail {

inline void refresh_cholesky(GmmState& st) {
    st.chol.clear();
    for (const auto& cov : st.covariances) {
        try {
            st.chol.push_back(cholesky(cov));
        } catch (const AlgorithmError&) {
            throw AlgorithmError("ssgmm: singular covariance despite regularization");
        }
    }
}

}  // namespace detail

inline GmmState ssgmm_fit(const SSLDataset& d, std::size_t max_iter = 300, double tol = 1e-6,
                          double reg = 1e-6) {
    const SSLDataset v = validate_dataset(d, TaskKind::classification);
    const std::size_t K = v.n_classes, dim = v.n_features();
    const std::size_t l = v.n_labeled(), u = v.n_unlabeled();
    const Matrix all = v.all_X();

    GmmState st;
    st.n_classes = K;
    st.dims = dim;
    st.weights.assign(K, 0.0);
    st.means.assign(K, std::vector<double>(dim, 0.0));
    st.covariances.assign(K, Matrix(dim, dim));

    // deterministic initialization from the labeled per-class MLE
    std::vector<double> count(K, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
        const auto c = static_cast<std::size_t>(v.y[i]);
        count[c] += 1.0;
        for (std::size_t j = 0; j < dim; ++j) st.means[c][j] += v.X(i, j);
    }
    for (std::size_t c = 0; c < K; ++c) {
        if (count[c] == 0.0) throw DataError("ssgmm: degenerate labeled set, class missing");
        for (std::size_t j = 0; j < dim; ++j) st.means[c][j] /= count[c];
        st.weights[c] = count[c] / static_cast<double>(l);
    }
    for (std::size_t i = 0; i < l; ++i) {
        const auto c = static_cast<std::size_t>(v.y[i]);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                st.covariances[c](a, b) +=
                    (v.X(i, a) - st.means[c][a]) * (v.X(i, b) - st.means[c][b]);
    }
    for (std::size_t c = 0; c < K; ++c) {
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) st.covariances[c](a, b) /= count[c];
        for (std::size_t a = 0; a < dim; ++a) st.covariances[c](a, a) += reg;
    }
    detail::refresh_cholesky(st);

    Matrix resp(l + u, K);  // labeled rows clamped one-hot
    double prev_ll = -std::numeric_limits<double>::infinity();
    std::vector<double> logp(K);

    for (std::size_t it = 0; it < max_iter; ++it) {
        // E-step + joint log-likelihood at the current parameters
        double ll = 0.0;
        for (std::size_t i = 0; i < l; ++i) {
            const auto c = static_cast<std::size_t>(v.y[i]);
            for (std::size_t k = 0; k < K; ++k) resp(i, k) = k == c ? 1.0 : 0.0;
            ll += std::log(st.weights[c]) + st.log_density(c, v.X.row(i));
        }
        for (std::size_t i = 0; i < u; ++i) {
            for (std::size_t k = 0; k < K; ++k)
                logp[k] = std::log(st.weights[k]) + st.log_density(k, v.unlabeled_X.row(i));
            const double lse = log_sum_exp(logp);
            ll += lse;
            for (std::size_t k = 0; k < K; ++k) resp(l + i, k) = std::exp(logp[k] - lse);
        }

        st.log_likelihood = ll;
        st.ll_trace.push_back(ll);
        st.iterations = it + 1;
        if (ll - prev_ll < tol && it > 0) {
            st.converged = true;
            break;
        }
        prev_ll = ll;

        // M-step: weighted MLE over all samples
        const auto n_total = static_cast<double>(l + u);
        for (std::size_t k = 0; k < K; ++k) {
            double nk = 0.0;
            for (std::size_t i = 0; i < l + u; ++i) nk += resp(i, k);
            if (nk <= 0.0) throw AlgorithmError("ssgmm: empty class during EM");
            std::vector<double> mu(dim, 0.0);
            for (std::size_t i = 0; i < l + u; ++i)
                for (std::size_t j = 0; j < dim; ++j) mu[j] += resp(i, k) * all(i, j);
            for (std::size_t j = 0; j < dim; ++j) mu[j] /= nk;
            Matrix cov(dim, dim);
            for (std::size_t i = 0; i < l + u; ++i) {
                const double r = resp(i, k);
                if (r == 0.0) continue;
                for (std::size_t a = 0; a < dim; ++a)
                    for (std::size_t b = 0; b < dim; ++b)
                        cov(a, b) += r * (all(i, a) - mu[a]) * (all(i, b) - mu[b]);
            }
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = 0; b < dim; ++b) cov(a, b) /= nk;
            for (std::size_t a = 0; a < dim; ++a) cov(a, a) += reg;
            st.weights[k] = nk / n_total;
            st.means[k] = std::move(mu);
            st.covariances[k] = std::move(cov);
        }
        detail::refresh_cholesky(st);
    }
    return st;
}

// Posterior responsibilities as scores; argmax labels.
inline Prediction ssgmm_predict_proba(const GmmState& st, const Matrix& X) {
    if (X.cols() != st.dims) throw DataError("ssgmm: feature-dimension mismatch");
    Matrix proba(X.rows(), st.n_classes);
    std::vector<double> logp(st.n_classes);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t k = 0; k < st.n_classes; ++k)
            logp[k] = std::log(st.weights[k]) + st.log_density(k, X.row(i));
        const double lse = log_sum_exp(logp);
        for (std::size_t k = 0; k < st.n_classes; ++k) proba(i, k) = std::exp(logp[k] - lse);
    }
    return Prediction::from_scores(std::move(proba));
}

}  // namespace sslforge
