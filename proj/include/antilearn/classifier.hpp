#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include "antilearn/dataset.hpp"
#include "antilearn/mlp.hpp"
#include "antilearn/naive_bayes.hpp"
#include "antilearn/svm.hpp"

namespace antilearn {

enum class Algorithm { naive_bayes, svm, mlp };

std::string_view algorithm_tag(Algorithm algorithm);     // "nb" | "svm" | "mlp"
Algorithm parse_algorithm(std::string_view tag);          // throws std::invalid_argument

// One classifier selection with its hyperparameters and base RNG seed. Only
// the parameter block matching `algorithm` is consulted.
struct ClassifierSpec {
    Algorithm algorithm = Algorithm::naive_bayes;
    NbParams nb{};
    SvmParams svm{};
    MlpParams mlp{};
    std::uint64_t seed = 0;

    std::string_view tag() const { return algorithm_tag(algorithm); }

    // Throws std::invalid_argument when a hyperparameter is out of range.
    void validate() const;
};

using TrainedModel = std::variant<NaiveBayesModel, SvmModel, MlpModel>;

// Dispatch to the matching trainer. `seed` feeds the seeded parts of SVM and
// MLP training; pass the spec's own seed outside a cross-validation harness.
TrainedModel train_classifier(const ClassifierSpec& spec, const BinaryDataset& data,
                              std::span<const std::size_t> rows, std::uint64_t seed);

int predict_label(const TrainedModel& model, std::span<const double> x);

}  // namespace antilearn
