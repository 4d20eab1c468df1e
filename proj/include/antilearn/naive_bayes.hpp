#pragma once

#include <array>
#include <span>
#include <vector>

#include "antilearn/dataset.hpp"

namespace antilearn {

struct NbParams {
    double alpha = 1.0;        // Laplace smoothing constant, > 0
    bool gaussian = false;     // per-feature normal likelihoods instead of Bernoulli
    double variance_floor = 1e-3;
};

// Bernoulli (default) or Gaussian naive Bayes over two classes. All counts
// are Laplace-smoothed, so every Bernoulli parameter sits strictly inside
// (0,1) and constant feature columns stay finite.
struct NaiveBayesModel {
    NbParams params;
    std::array<double, 2> prior{};                 // sums to 1
    std::vector<double> hi_value;                   // raw value counted as "hi" per feature
    std::vector<std::array<double, 2>> p_hi;        // [feature][class] Bernoulli parameters
    std::vector<std::array<double, 2>> mean;        // gaussian variant only
    std::vector<std::array<double, 2>> variance;    // floored at params.variance_floor

    std::size_t dim() const noexcept { return hi_value.size(); }
};

struct NbPrediction {
    int label = 0;
    std::array<double, 2> posterior{};  // normalized
};

NaiveBayesModel nb_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                         const NbParams& params = {});
NaiveBayesModel nb_train(const BinaryDataset& data, const NbParams& params = {});

// argmax of log prior + summed log likelihood; exact ties go to class 0.
NbPrediction nb_predict(const NaiveBayesModel& model, std::span<const double> x);

}  // namespace antilearn
