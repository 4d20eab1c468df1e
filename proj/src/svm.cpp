#include "antilearn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "antilearn/rng.hpp"

namespace antilearn {

double kernel_value(const KernelSpec& kernel, std::span<const double> a, std::span<const double> b) {
    double dot = 0.0;
    switch (kernel.type) {
        case Kernel::linear:
            for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
            return dot;
        case Kernel::polynomial: {
            for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
            double value = 1.0;
            for (unsigned p = 0; p < kernel.degree; ++p) value *= dot + 1.0;
            return value;
        }
        case Kernel::rbf: {
            double dist_sq = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double diff = a[i] - b[i];
                dist_sq += diff * diff;
            }
            return std::exp(-kernel.gamma * dist_sq);
        }
    }
    return 0.0;
}

namespace {

void check_params(const SvmParams& p) {
    if (!(p.c > 0.0)) throw std::invalid_argument("SVM box constraint C must be > 0");
    if (!(p.tol > 0.0)) throw std::invalid_argument("SVM KKT tolerance must be > 0");
    if (p.kernel.type == Kernel::rbf && !(p.kernel.gamma > 0.0))
        throw std::invalid_argument("rbf kernel gamma must be > 0");
    if (p.kernel.type == Kernel::polynomial && p.kernel.degree < 1)
        throw std::invalid_argument("polynomial kernel degree must be >= 1");
    if (p.max_passes == 0) throw std::invalid_argument("SVM max_passes must be >= 1");
}

// Platt's SMO on a cached Gram matrix. The decision convention here is
// f(x) = sum_i alpha_i y_i K(x_i, x) + b, with the error cache holding
// E_i = f(x_i) - y_i for every training point.
class SmoSolver {
public:
    SmoSolver(const BinaryDataset& data, std::span<const std::size_t> rows,
              const SvmParams& params, std::uint64_t seed)
        : params_(params), rng_(seed), n_(rows.size()) {
        y_.resize(n_);
        bool saw_positive = false, saw_negative = false;
        for (std::size_t i = 0; i < n_; ++i) {
            y_[i] = data.labels[rows[i]] == 1 ? 1.0 : -1.0;
            (y_[i] > 0 ? saw_positive : saw_negative) = true;
        }
        if (!saw_positive || !saw_negative)
            throw std::invalid_argument("SVM training slice contains a single class");

        gram_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const auto& xi = data.samples[rows[i]];
            for (std::size_t j = 0; j <= i; ++j) {
                const double k = kernel_value(params.kernel, xi, data.samples[rows[j]]);
                gram_[i * n_ + j] = k;
                gram_[j * n_ + i] = k;
            }
        }

        alpha_.assign(n_, 0.0);
        error_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];  // f == 0 initially
    }

    void solve() {
        std::size_t changed = 0;
        bool examine_all = true;
        unsigned passes = 0;
        while (changed > 0 || examine_all) {
            if (++passes > params_.max_passes) throw ConvergenceError(params_.max_passes);
            changed = 0;
            if (examine_all) {
                for (std::size_t i = 0; i < n_; ++i) changed += examine(i);
            } else {
                for (std::size_t i = 0; i < n_; ++i)
                    if (is_free(alpha_[i])) changed += examine(i);
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
        if (std::getenv("ANTILEARN_SMO_DEBUG")) {
            double max_drift = 0.0, sum_ay = 0.0;
            std::size_t kkt_viol = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                double f = bias_;
                for (std::size_t j = 0; j < n_; ++j) f += alpha_[j] * y_[j] * k(i, j);
                max_drift = std::max(max_drift, std::fabs(f - y_[i] - error_[i]));
                const double r = y_[i] * f - 1.0;
                if ((alpha_[i] == 0.0 && r < -params_.tol) ||
                    (alpha_[i] >= params_.c && r > params_.tol) ||
                    (is_free(alpha_[i]) && std::fabs(r) > params_.tol))
                    ++kkt_viol;
                sum_ay += alpha_[i] * y_[i];
            }
            std::fprintf(stderr, "SMO debug: drift=%.3e kkt_viol=%zu sum_ay=%.3e passes=%u\n",
                         max_drift, kkt_viol, sum_ay, passes);
        }
    }

    // Platt's running b is only pinned when a free multiplier exists; an
    // all-bound solution (routine on parity data, where every alpha hits C)
    // leaves it anywhere inside a wide admissible interval. Recompute the
    // final bias the way libsvm does: average the exact value over free
    // support vectors, else take the midpoint of the KKT interval.
    double final_bias() const {
        double free_sum = 0.0;
        std::size_t free_count = 0;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) {
            // v is the bias that would put this point exactly on the margin.
            const double v = y_[i] - (error_[i] + y_[i] - bias_);
            if (is_free(alpha_[i])) {
                free_sum += v;
                ++free_count;
            } else if ((alpha_[i] == 0.0 && y_[i] > 0) || (alpha_[i] >= params_.c && y_[i] < 0)) {
                lo = std::max(lo, v);
            } else {
                hi = std::min(hi, v);
            }
        }
        if (free_count > 0) return free_sum / static_cast<double>(free_count);
        if (std::isinf(lo)) return hi;
        if (std::isinf(hi)) return lo;
        return 0.5 * (lo + hi);
    }

    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<double>& labels() const { return y_; }

private:
    static constexpr double kStepEps = 1e-7;    // minimum useful multiplier change
    static constexpr double kBoundSnap = 1e-12; // snap alphas this close to a bound

    bool is_free(double a) const { return a > 0.0 && a < params_.c; }

    double k(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }

    std::size_t examine(std::size_t i2) {
        const double y2 = y_[i2];
        const double a2 = alpha_[i2];
        const double e2 = error_[i2];
        const double r2 = e2 * y2;
        const bool violates = (r2 < -params_.tol && a2 < params_.c) || (r2 > params_.tol && a2 > 0.0);
        if (!violates) return 0;

        // First choice: the free multiplier with the largest |E1 - E2|.
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == i2 || !is_free(alpha_[i])) continue;
            const double gap = std::fabs(error_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, i2)) return 1;

        // Fallback: every free multiplier from a random start, then everything.
        const std::size_t start_free = static_cast<std::size_t>(rng_.next_below(n_));
        for (std::size_t t = 0; t < n_; ++t) {
            const std::size_t i1 = (start_free + t) % n_;
            if (i1 == i2 || !is_free(alpha_[i1])) continue;
            if (take_step(i1, i2)) return 1;
        }
        const std::size_t start_all = static_cast<std::size_t>(rng_.next_below(n_));
        for (std::size_t t = 0; t < n_; ++t) {
            const std::size_t i1 = (start_all + t) % n_;
            if (i1 == i2) continue;
            if (take_step(i1, i2)) return 1;
        }
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double c = params_.c;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c, c + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c);
            hi = std::min(c, a1 + a2);
        }
        if (lo >= hi) return false;

        const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // Degenerate direction (duplicated points): the restricted dual is
            // linear, so the optimum sits at a segment end. Evaluate both.
            const double g1 = e1 + y1 - bias_;  // kernel expansion at x1
            const double g2 = e2 + y2 - bias_;
            const double f1 = y1 * g1 - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * g2 - s * a1 * k12 - a2 * k22;
            const double lo1 = a1 + s * (a2 - lo);
            const double hi1 = a1 + s * (a2 - hi);
            const double lo_obj = lo1 * f1 + lo * f2 + 0.5 * lo1 * lo1 * k11 +
                                  0.5 * lo * lo * k22 + s * lo * lo1 * k12;
            const double hi_obj = hi1 * f1 + hi * f2 + 0.5 * hi1 * hi1 * k11 +
                                  0.5 * hi * hi * k22 + s * hi * hi1 * k12;
            if (lo_obj < hi_obj - kStepEps)
                a2_new = lo;
            else if (lo_obj > hi_obj + kStepEps)
                a2_new = hi;
            else
                return false;
        }

        if (a2_new < kBoundSnap)
            a2_new = 0.0;
        else if (a2_new > c - kBoundSnap)
            a2_new = c;
        if (std::fabs(a2_new - a2) < kStepEps * (a2_new + a2 + kStepEps)) return false;

        double a1_new = a1 + s * (a2 - a2_new);
        if (a1_new < kBoundSnap)
            a1_new = 0.0;
        else if (a1_new > c - kBoundSnap)
            a1_new = c;

        const double d1 = y1 * (a1_new - a1);
        const double d2 = y2 * (a2_new - a2);
        const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
        double bias_new;
        if (is_free(a1_new))
            bias_new = b1;
        else if (is_free(a2_new))
            bias_new = b2;
        else
            bias_new = 0.5 * (b1 + b2);
        const double db = bias_new - bias_;

        for (std::size_t i = 0; i < n_; ++i)
            error_[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;

        alpha_[i1] = a1_new;
        alpha_[i2] = a2_new;
        bias_ = bias_new;
        return true;
    }

    SvmParams params_;
    SplitMix64 rng_;
    std::size_t n_;
    std::vector<double> y_;
    std::vector<double> gram_;
    std::vector<double> alpha_;
    std::vector<double> error_;
    double bias_ = 0.0;
};

}  // namespace

SvmModel svm_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                   const SvmParams& params, std::uint64_t seed) {
    check_params(params);
    if (rows.empty()) throw std::invalid_argument("SVM training slice is empty");

    SmoSolver solver(data, rows, params, seed);
    solver.solve();

    SvmModel model;
    model.kernel = params.kernel;
    model.c = params.c;
    model.bias = solver.final_bias();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (solver.alpha()[i] > 0.0) {
            model.support_vectors.push_back(data.samples[rows[i]]);
            model.coefficients.push_back(solver.alpha()[i] * solver.labels()[i]);
        }
    }
    return model;
}

SvmModel svm_train(const BinaryDataset& data, const SvmParams& params, std::uint64_t seed) {
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return svm_train(data, rows, params, seed);
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
    if (!model.support_vectors.empty() && x.size() != model.support_vectors.front().size())
        throw std::invalid_argument("feature row has width " + std::to_string(x.size()) +
                                    ", model expects " +
                                    std::to_string(model.support_vectors.front().size()));
    double f = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
        f += model.coefficients[i] * kernel_value(model.kernel, model.support_vectors[i], x);
    return f;
}

SvmPrediction svm_predict(const SvmModel& model, std::span<const double> x) {
    const double f = svm_decision(model, x);
    return {f > 0.0 ? 1 : 0, f};
}

}  // namespace antilearn
