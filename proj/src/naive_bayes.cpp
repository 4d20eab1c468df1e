#include "antilearn/naive_bayes.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace antilearn {

namespace {

void check_params(const NbParams& p) {
    if (!(p.alpha > 0.0))
        throw std::invalid_argument("naive Bayes smoothing constant must be > 0");
    if (p.gaussian && !(p.variance_floor > 0.0))
        throw std::invalid_argument("naive Bayes variance floor must be > 0");
}

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

}  // namespace

NaiveBayesModel nb_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                         const NbParams& params) {
    check_params(params);
    if (rows.empty()) throw std::invalid_argument("naive Bayes training slice is empty");

    const std::size_t d = data.dim();
    NaiveBayesModel model;
    model.params = params;
    model.hi_value.assign(d, 1.0);

    std::array<double, 2> class_count{0.0, 0.0};
    for (std::size_t r : rows) class_count[data.labels[r] == 1 ? 1 : 0] += 1.0;

    const double a = params.alpha;
    const double m = static_cast<double>(rows.size());
    model.prior = {(class_count[0] + a) / (m + 2 * a), (class_count[1] + a) / (m + 2 * a)};

    if (!params.gaussian) {
        // hi is the raw value 1.0 under both encodings ({0,1} and {-1,+1}).
        std::vector<std::array<double, 2>> hi_count(d, {0.0, 0.0});
        for (std::size_t r : rows) {
            const int c = data.labels[r] == 1 ? 1 : 0;
            const auto& x = data.samples[r];
            for (std::size_t j = 0; j < d; ++j)
                if (x[j] == model.hi_value[j]) hi_count[j][c] += 1.0;
        }
        model.p_hi.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            for (int c = 0; c < 2; ++c)
                model.p_hi[j][c] = (hi_count[j][c] + a) / (class_count[c] + 2 * a);
        return model;
    }

    // Gaussian variant: per-class feature means and floored variances. A class
    // absent from the slice falls back to the pooled statistics.
    std::vector<std::array<double, 2>> sum(d, {0.0, 0.0});
    std::vector<std::array<double, 2>> sum_sq(d, {0.0, 0.0});
    for (std::size_t r : rows) {
        const int c = data.labels[r] == 1 ? 1 : 0;
        const auto& x = data.samples[r];
        for (std::size_t j = 0; j < d; ++j) {
            sum[j][c] += x[j];
            sum_sq[j][c] += x[j] * x[j];
        }
    }
    model.mean.resize(d);
    model.variance.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double pooled_n = class_count[0] + class_count[1];
        const double pooled_mean = (sum[j][0] + sum[j][1]) / pooled_n;
        const double pooled_var =
            (sum_sq[j][0] + sum_sq[j][1]) / pooled_n - pooled_mean * pooled_mean;
        for (int c = 0; c < 2; ++c) {
            if (class_count[c] > 0.0) {
                const double mean = sum[j][c] / class_count[c];
                const double var = sum_sq[j][c] / class_count[c] - mean * mean;
                model.mean[j][c] = mean;
                model.variance[j][c] = std::max(var, params.variance_floor);
            } else {
                model.mean[j][c] = pooled_mean;
                model.variance[j][c] = std::max(pooled_var, params.variance_floor);
            }
        }
    }
    return model;
}

NaiveBayesModel nb_train(const BinaryDataset& data, const NbParams& params) {
    const auto rows = all_rows(data.size());
    return nb_train(data, rows, params);
}

NbPrediction nb_predict(const NaiveBayesModel& model, std::span<const double> x) {
    if (x.size() != model.dim())
        throw std::invalid_argument("feature row has width " + std::to_string(x.size()) +
                                    ", model expects " + std::to_string(model.dim()));

    std::array<double, 2> log_post{std::log(model.prior[0]), std::log(model.prior[1])};
    if (!model.params.gaussian) {
        for (std::size_t j = 0; j < model.dim(); ++j) {
            const bool hi = x[j] == model.hi_value[j];
            for (int c = 0; c < 2; ++c) {
                const double p = model.p_hi[j][c];
                log_post[c] += std::log(hi ? p : 1.0 - p);
            }
        }
    } else {
        for (std::size_t j = 0; j < model.dim(); ++j) {
            for (int c = 0; c < 2; ++c) {
                const double var = model.variance[j][c];
                const double diff = x[j] - model.mean[j][c];
                log_post[c] +=
                    -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
            }
        }
    }

    NbPrediction out;
    out.label = log_post[1] > log_post[0] ? 1 : 0;  // exact ties go to class 0
    const double shift = std::max(log_post[0], log_post[1]);
    const double w0 = std::exp(log_post[0] - shift);
    const double w1 = std::exp(log_post[1] - shift);
    out.posterior = {w0 / (w0 + w1), w1 / (w0 + w1)};
    return out;
}

}  // namespace antilearn
