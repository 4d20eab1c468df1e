#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antilearn/dataset.hpp"

namespace antilearn {

struct MlpParams {
    unsigned hidden = 16;
    double learning_rate = 0.3;
    double momentum = 0.6;
    unsigned epochs = 2500;
};

// Training loss went non-finite.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(unsigned epoch)
        : std::runtime_error("MLP training diverged at epoch " + std::to_string(epoch)),
          epoch_(epoch) {}
    unsigned epoch() const noexcept { return epoch_; }

private:
    unsigned epoch_;
};

// One hidden layer, logistic sigmoid everywhere. Parameters are packed into
// a single vector: [hidden x input weights | hidden biases | output weights |
// output bias], which keeps finite-difference probing trivial.
struct MlpModel {
    std::size_t input_dim = 0;
    std::size_t hidden = 0;
    std::vector<double> params;

    MlpParams hyper;        // recorded for provenance
    std::uint64_t seed = 0;

    std::array<std::size_t, 3> layer_sizes() const { return {input_dim, hidden, 1}; }
    std::size_t param_count() const { return hidden * input_dim + hidden + hidden + 1; }

    std::size_t w1_index(std::size_t unit, std::size_t input) const { return unit * input_dim + input; }
    std::size_t b1_index(std::size_t unit) const { return hidden * input_dim + unit; }
    std::size_t w2_index(std::size_t unit) const { return hidden * input_dim + hidden + unit; }
    std::size_t b2_index() const { return hidden * input_dim + hidden + hidden; }

    // Forward pass; returns the output activation in (0,1).
    double output(std::span<const double> x) const;
};

struct MlpPrediction {
    int label = 0;
    double activation = 0.0;
};

// Online backprop on squared error: weights start uniform in [-0.5, 0.5] from
// the seeded generator, samples are visited in a freshly shuffled order each
// epoch, updates use the momentum term. Deterministic given (seed, params,
// data). Throws DivergenceError when the epoch loss stops being finite.
MlpModel mlp_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                   const MlpParams& params = {}, std::uint64_t seed = 0);
MlpModel mlp_train(const BinaryDataset& data, const MlpParams& params = {},
                   std::uint64_t seed = 0);

// class 1 iff the output activation is strictly above 0.5.
MlpPrediction mlp_predict(const MlpModel& model, std::span<const double> x);

// Half the summed squared error over the rows; the quantity the training loop
// descends and the one finite-difference checks probe.
double mlp_loss(const MlpModel& model, const BinaryDataset& data, std::span<const std::size_t> rows);

// Batch gradient of mlp_loss with respect to model.params, same packing.
std::vector<double> mlp_gradient(const MlpModel& model, const BinaryDataset& data,
                                 std::span<const std::size_t> rows);

}  // namespace antilearn
