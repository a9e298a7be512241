#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

struct LabeledData {
    FeatureMatrix X;
    LabelArray y;
    std::vector<double> true_weights;  // gen_linear only
};

// Two interleaving half-circles of unit radius. The first moon is the
// upper semicircle around the origin; the second is the first rotated a
// half turn and shifted so its valley sits at (1, -0.5). Gaussian noise
// noise_sd is added to both coordinates.
inline LabeledData gen_two_moons(std::size_t n, double noise_sd, std::uint64_t seed) {
    if (n < 2) throw ConfigError("gen_two_moons: n must be >= 2");
    if (noise_sd < 0) throw ConfigError("gen_two_moons: noise_sd must be >= 0");
    const std::size_t m0 = (n + 1) / 2;
    const std::size_t m1 = n - m0;
    LabeledData out;
    out.X = Matrix(n, 2);
    out.y.resize(n);
    for (std::size_t i = 0; i < m0; ++i) {
        const double theta = m0 > 1 ? M_PI * static_cast<double>(i) / (m0 - 1) : 0.0;
        out.X(i, 0) = std::cos(theta);
        out.X(i, 1) = std::sin(theta);
        out.y[i] = 0.0;
    }
    // moon 1 valley at theta = pi/2: (1, -0.5)
    for (std::size_t i = 0; i < m1; ++i) {
        const double theta = m1 > 1 ? M_PI * static_cast<double>(i) / (m1 - 1) : 0.0;
        out.X(m0 + i, 0) = 1.0 - std::cos(theta);
        out.X(m0 + i, 1) = 0.5 - std::sin(theta);
        out.y[m0 + i] = 1.0;
    }
    if (noise_sd > 0) {
        Rng rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            out.X(i, 0) += rng.gaussian(0.0, noise_sd);
            out.X(i, 1) += rng.gaussian(0.0, noise_sd);
        }
    }
    return out;
}

// k isotropic Gaussian clusters at fixed 2-D lattice centers with
// spacing 10; contiguous label blocks 0..k-1.
inline LabeledData gen_blobs(std::size_t n, std::size_t k, double sd, std::uint64_t seed) {
    if (k < 1 || n < k) throw ConfigError("gen_blobs: need n >= k >= 1");
    const auto grid = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    LabeledData out;
    out.X = Matrix(n, 2);
    out.y.resize(n);
    Rng rng(seed);
    std::size_t row = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const double cx = 10.0 * static_cast<double>(c % grid);
        const double cy = 10.0 * static_cast<double>(c / grid);
        std::size_t count = n / k + (c < n % k ? 1 : 0);
        for (std::size_t i = 0; i < count; ++i, ++row) {
            out.X(row, 0) = cx + (sd > 0 ? rng.gaussian(0.0, sd) : 0.0);
            out.X(row, 1) = cy + (sd > 0 ? rng.gaussian(0.0, sd) : 0.0);
            out.y[row] = static_cast<double>(c);
        }
    }
    return out;
}

// y = w . x + eps with x ~ U(-1,1)^d and w ~ U(-1,1)^d drawn first from
// the seed; the true w is recorded in the result.
inline LabeledData gen_linear(std::size_t n, std::size_t d, double noise_sd,
                              std::uint64_t seed) {
    if (d < 1) throw ConfigError("gen_linear: d must be >= 1");
    LabeledData out;
    out.X = Matrix(n, d);
    out.y.resize(n);
    Rng rng(seed);
    out.true_weights.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.true_weights[j] = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double t = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            out.X(i, j) = rng.uniform(-1.0, 1.0);
            t += out.true_weights[j] * out.X(i, j);
        }
        out.y[i] = t + (noise_sd > 0 ? rng.gaussian(0.0, noise_sd) : 0.0);
    }
    return out;
}

struct SplitResult {
    SSLDataset dataset;
    LabelArray unlabeled_y;  // true labels of unlabeled rows, kept for evaluation
    std::vector<std::size_t> labeled_idx, unlabeled_idx;
};

// Partitions (X, y) into a labeled subset of exactly n_labeled rows and an
// unlabeled remainder. Stratified mode keeps per-class counts within one
// sample of proportionality with at least one sample per class.
inline SplitResult split_labeled_unlabeled(const FeatureMatrix& X, const LabelArray& y,
                                           std::size_t n_labeled, bool stratified,
                                           std::uint64_t seed) {
    const std::size_t n = X.rows();
    if (y.size() != n) throw DataError("split: label count mismatch");
    if (n_labeled < 1 || n_labeled > n)
        throw DataError("split: n_labeled must be in [1, rows]");

    Rng rng(seed);
    std::vector<std::size_t> chosen;
    if (!stratified) {
        auto order = sample_without_replacement(rng, n, n_labeled);
        chosen = std::move(order);
    } else {
        std::map<double, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[y[i]].push_back(i);
        const std::size_t k = by_class.size();
        if (n_labeled < k)
            throw DataError("split: stratification infeasible, n_labeled < class count");

        std::vector<std::vector<std::size_t>> groups;
        std::vector<double> target;
        for (auto& [value, idx] : by_class) {
            target.push_back(static_cast<double>(n_labeled) * idx.size() / n);
            groups.push_back(std::move(idx));
        }
        std::vector<std::size_t> quota(k);
        std::size_t total = 0;
        for (std::size_t c = 0; c < k; ++c) {
            quota[c] = std::min(groups[c].size(),
                                std::max<std::size_t>(1, static_cast<std::size_t>(target[c])));
            total += quota[c];
        }
        while (total > n_labeled) {
            std::size_t pick = k;
            double worst = -1e300;
            for (std::size_t c = 0; c < k; ++c) {
                if (quota[c] <= 1) continue;
                const double overshoot = static_cast<double>(quota[c]) - target[c];
                if (overshoot > worst) {
                    worst = overshoot;
                    pick = c;
                }
            }
            if (pick == k) throw DataError("split: stratification infeasible");
            --quota[pick];
            --total;
        }
        while (total < n_labeled) {
            std::size_t pick = k;
            double best = -1e300;
            for (std::size_t c = 0; c < k; ++c) {
                if (quota[c] >= groups[c].size()) continue;
                const double deficit = target[c] - static_cast<double>(quota[c]);
                if (deficit > best) {
                    best = deficit;
                    pick = c;
                }
            }
            if (pick == k) throw DataError("split: stratification infeasible");
            ++quota[pick];
            ++total;
        }
        for (std::size_t c = 0; c < k; ++c) {
            rng.shuffle(groups[c]);
            chosen.insert(chosen.end(), groups[c].begin(), groups[c].begin() + quota[c]);
        }
    }
    std::sort(chosen.begin(), chosen.end());

    SplitResult r;
    r.labeled_idx = chosen;
    std::vector<char> is_labeled(n, 0);
    for (std::size_t i : chosen) is_labeled[i] = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_labeled[i]) r.unlabeled_idx.push_back(i);

    r.dataset.X = X.take_rows(r.labeled_idx);
    for (std::size_t i : r.labeled_idx) r.dataset.y.push_back(y[i]);
    r.dataset.unlabeled_X = X.take_rows(r.unlabeled_idx);
    for (std::size_t i : r.unlabeled_idx) r.unlabeled_y.push_back(y[i]);
    return r;
}

}  // namespace sslforge
