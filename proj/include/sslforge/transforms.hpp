#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sslforge/dataset.hpp"
#include "sslforge/errors.hpp"
#include "sslforge/matrix.hpp"
#include "sslforge/params.hpp"
#include "sslforge/rng.hpp"

namespace sslforge {

enum class TransformKind {
    standard_scale,
    minmax_scale,
    one_hot,
    gaussian_noise,
    clip,
    l2_normalize,
    polynomial_deg2,
    drop_constant,
};

inline TransformKind transform_kind_from_string(const std::string& s) {
    if (s == "standard_scale") return TransformKind::standard_scale;
    if (s == "minmax_scale") return TransformKind::minmax_scale;
    if (s == "one_hot") return TransformKind::one_hot;
    if (s == "gaussian_noise") return TransformKind::gaussian_noise;
    if (s == "clip") return TransformKind::clip;
    if (s == "l2_normalize") return TransformKind::l2_normalize;
    if (s == "polynomial_deg2") return TransformKind::polynomial_deg2;
    if (s == "drop_constant") return TransformKind::drop_constant;
    throw ConfigError("unknown transformer '" + s + "'");
}

// Fitted tabular transformer. Learned statistics depend on the kind;
// apply() reproduces the advertised property on the fitting data and is
// reusable on new rows of the same width.
class TransformerState {
public:
    TransformKind kind;
    std::vector<std::string> warnings;

    // standard_scale / minmax_scale / drop_constant statistics
    std::vector<double> means, stds, mins, maxs;
    std::vector<std::size_t> kept_columns;

    // one_hot: selected columns and their sorted category values
    std::vector<std::size_t> onehot_columns;
    std::vector<std::vector<double>> categories;
    std::vector<std::size_t> passthrough_columns;

    // gaussian_noise / clip parameters
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double clip_lo = 0.0, clip_hi = 0.0;

    std::size_t input_cols = 0;

    Matrix apply(const Matrix& X) const {
        if (X.cols() != input_cols)
            throw DataError("transformer expects " + std::to_string(input_cols) +
                            " columns, got " + std::to_string(X.cols()));
        switch (kind) {
            case TransformKind::standard_scale: {
                Matrix out = X;
                for (std::size_t j = 0; j < X.cols(); ++j) {
                    if (stds[j] == 0.0) continue;  // constant column passes through
                    for (std::size_t i = 0; i < X.rows(); ++i)
                        out(i, j) = (X(i, j) - means[j]) / stds[j];
                }
                return out;
            }
            case TransformKind::minmax_scale: {
                Matrix out = X;
                for (std::size_t j = 0; j < X.cols(); ++j) {
                    const double range = maxs[j] - mins[j];
                    for (std::size_t i = 0; i < X.rows(); ++i)
                        out(i, j) = range == 0.0 ? 0.0 : (X(i, j) - mins[j]) / range;
                }
                return out;
            }
            case TransformKind::one_hot: {
                std::size_t width = passthrough_columns.size();
                for (const auto& cats : categories) width += cats.size();
                Matrix out(X.rows(), width);
                for (std::size_t i = 0; i < X.rows(); ++i) {
                    std::size_t o = 0;
                    for (std::size_t j : passthrough_columns) out(i, o++) = X(i, j);
                    for (std::size_t c = 0; c < onehot_columns.size(); ++c) {
                        const auto& cats = categories[c];
                        const double v = X(i, onehot_columns[c]);
                        const auto it = std::lower_bound(cats.begin(), cats.end(), v);
                        if (it == cats.end() || *it != v)
                            throw DataError("one_hot: unseen category " + format_label(v) +
                                            " in column " +
                                            std::to_string(onehot_columns[c]));
                        out(i, o + static_cast<std::size_t>(it - cats.begin())) = 1.0;
                        o += cats.size();
                    }
                }
                return out;
            }
            case TransformKind::gaussian_noise: {
                if (sigma == 0.0) return X;
                Matrix out = X;
                Rng rng(seed);
                for (double& v : out.data()) v += rng.gaussian(0.0, sigma);
                return out;
            }
            case TransformKind::clip: {
                Matrix out = X;
                for (double& v : out.data()) v = std::clamp(v, clip_lo, clip_hi);
                return out;
            }
            case TransformKind::l2_normalize: {
                Matrix out = X;
                for (std::size_t i = 0; i < X.rows(); ++i) {
                    const double norm = std::sqrt(dot(X.row(i), X.row(i)));
                    if (norm == 0.0) continue;
                    for (std::size_t j = 0; j < X.cols(); ++j) out(i, j) = X(i, j) / norm;
                }
                return out;
            }
            case TransformKind::polynomial_deg2: {
                const std::size_t d = X.cols();
                Matrix out(X.rows(), d + d * (d + 1) / 2);
                for (std::size_t i = 0; i < X.rows(); ++i) {
                    std::size_t o = 0;
                    for (std::size_t j = 0; j < d; ++j) out(i, o++) = X(i, j);
                    for (std::size_t j = 0; j < d; ++j)
                        for (std::size_t k = j; k < d; ++k) out(i, o++) = X(i, j) * X(i, k);
                }
                return out;
            }
            case TransformKind::drop_constant: {
                return X.take_cols(kept_columns);
            }
        }
        throw ConfigError("unreachable transformer kind");
    }
};

inline std::pair<TransformerState, Matrix> transform_fit_apply(TransformKind kind,
                                                               const ParamMap& params,
                                                               const Matrix& X_all) {
    TransformerState st;
    st.kind = kind;
    st.input_cols = X_all.cols();
    const std::size_t n = X_all.rows();

    const bool learns_stats = kind == TransformKind::standard_scale ||
                              kind == TransformKind::minmax_scale ||
                              kind == TransformKind::one_hot ||
                              kind == TransformKind::drop_constant;
    if (learns_stats && n == 0) throw DataError("transformer fit needs at least one row");

    switch (kind) {
        case TransformKind::standard_scale: {
            params.check_allowed("standard_scale", {});
            st.means.assign(X_all.cols(), 0.0);
            st.stds.assign(X_all.cols(), 0.0);
            for (std::size_t j = 0; j < X_all.cols(); ++j) {
                double m = 0.0;
                for (std::size_t i = 0; i < n; ++i) m += X_all(i, j);
                m /= static_cast<double>(n);
                double var = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = X_all(i, j) - m;
                    var += d * d;
                }
                var /= static_cast<double>(n);
                st.means[j] = m;
                st.stds[j] = std::sqrt(var);
                if (st.stds[j] == 0.0)
                    st.warnings.push_back("standard_scale: column " + std::to_string(j) +
                                          " has zero variance, passed through unscaled");
            }
            break;
        }
        case TransformKind::minmax_scale: {
            params.check_allowed("minmax_scale", {});
            st.mins.assign(X_all.cols(), 0.0);
            st.maxs.assign(X_all.cols(), 0.0);
            for (std::size_t j = 0; j < X_all.cols(); ++j) {
                double lo = X_all(0, j), hi = X_all(0, j);
                for (std::size_t i = 1; i < n; ++i) {
                    lo = std::min(lo, X_all(i, j));
                    hi = std::max(hi, X_all(i, j));
                }
                st.mins[j] = lo;
                st.maxs[j] = hi;
            }
            break;
        }
        case TransformKind::one_hot: {
            params.check_allowed("one_hot", {"columns"});
            st.onehot_columns = params.get_index_list("columns");
            if (st.onehot_columns.empty())
                for (std::size_t j = 0; j < X_all.cols(); ++j) st.onehot_columns.push_back(j);
            for (std::size_t j : st.onehot_columns)
                if (j >= X_all.cols())
                    throw ConfigError("one_hot: column index " + std::to_string(j) +
                                      " out of range");
            for (std::size_t j = 0; j < X_all.cols(); ++j)
                if (std::find(st.onehot_columns.begin(), st.onehot_columns.end(), j) ==
                    st.onehot_columns.end())
                    st.passthrough_columns.push_back(j);
            for (std::size_t j : st.onehot_columns) {
                std::vector<double> cats;
                for (std::size_t i = 0; i < n; ++i) cats.push_back(X_all(i, j));
                std::sort(cats.begin(), cats.end());
                cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
                st.categories.push_back(std::move(cats));
            }
            break;
        }
        case TransformKind::gaussian_noise: {
            params.check_allowed("gaussian_noise", {"sigma", "seed"});
            st.sigma = params.get_double("sigma", 0.1);
            if (st.sigma < 0) throw ConfigError("gaussian_noise: sigma must be >= 0");
            st.seed = static_cast<std::uint64_t>(params.get_int("seed", 0));
            break;
        }
        case TransformKind::clip: {
            params.check_allowed("clip", {"lo", "hi"});
            st.clip_lo = params.get_double("lo", -1.0);
            st.clip_hi = params.get_double("hi", 1.0);
            if (st.clip_lo > st.clip_hi) throw ConfigError("clip: lo > hi");
            break;
        }
        case TransformKind::l2_normalize:
            params.check_allowed("l2_normalize", {});
            break;
        case TransformKind::polynomial_deg2:
            params.check_allowed("polynomial_deg2", {});
            break;
        case TransformKind::drop_constant: {
            params.check_allowed("drop_constant", {});
            for (std::size_t j = 0; j < X_all.cols(); ++j) {
                double lo = X_all(0, j), hi = X_all(0, j);
                for (std::size_t i = 1; i < n; ++i) {
                    lo = std::min(lo, X_all(i, j));
                    hi = std::max(hi, X_all(i, j));
                }
                if (lo != hi) st.kept_columns.push_back(j);
            }
            if (st.kept_columns.empty())
                throw DataError("drop_constant: every column is constant");
            break;
        }
    }
    return {st, st.apply(X_all)};
}

}  // namespace sslforge
