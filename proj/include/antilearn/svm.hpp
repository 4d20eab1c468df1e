#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antilearn/dataset.hpp"

namespace antilearn {

enum class Kernel { linear, polynomial, rbf };

struct KernelSpec {
    Kernel type = Kernel::rbf;
    double gamma = 1.0;   // rbf: exp(-gamma * |a-b|^2)
    unsigned degree = 3;  // polynomial: (a.b + 1)^degree
};

double kernel_value(const KernelSpec& kernel, std::span<const double> a, std::span<const double> b);

struct SvmParams {
    KernelSpec kernel{};
    double c = 1.0;            // box constraint, > 0
    double tol = 1e-3;         // KKT tolerance
    unsigned max_passes = 10000;
};

// SMO failed to settle within max_passes sweeps over the training set.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(unsigned passes)
        : std::runtime_error("SMO did not converge after " + std::to_string(passes) + " passes"),
          passes_(passes) {}
    unsigned passes() const noexcept { return passes_; }

private:
    unsigned passes_;
};

// Only samples with alpha > 0 are retained. coefficients[i] = alpha_i * y_i
// with y in {-1,+1}; sum of coefficients is 0 up to roundoff and
// 0 <= alpha_i <= c throughout.
struct SvmModel {
    KernelSpec kernel{};
    double c = 1.0;
    double bias = 0.0;
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> coefficients;
};

struct SvmPrediction {
    int label = 0;
    double decision = 0.0;
};

// Platt-style sequential minimal optimization: second multiplier chosen by
// the max |E1-E2| heuristic with the published random-scan fallbacks, analytic
// two-variable steps, incremental error cache. Training rows must contain
// both classes.
SvmModel svm_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                   const SvmParams& params = {}, std::uint64_t seed = 0);
SvmModel svm_train(const BinaryDataset& data, const SvmParams& params = {},
                   std::uint64_t seed = 0);

double svm_decision(const SvmModel& model, std::span<const double> x);

// class 1 iff the decision value is strictly positive.
SvmPrediction svm_predict(const SvmModel& model, std::span<const double> x);

}  // namespace antilearn
