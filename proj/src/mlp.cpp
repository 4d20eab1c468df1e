#include "antilearn/mlp.hpp"

#include <cmath>
#include <numeric>

#include "antilearn/rng.hpp"

namespace antilearn {

namespace {

void check_params(const MlpParams& p) {
    if (p.hidden < 1) throw std::invalid_argument("MLP needs at least one hidden unit");
    if (!(p.learning_rate > 0.0) || p.learning_rate > 1.0)
        throw std::invalid_argument("MLP learning rate must be in (0, 1]");
    if (!(p.momentum >= 0.0) || p.momentum >= 1.0)
        throw std::invalid_argument("MLP momentum must be in [0, 1)");
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Four-lane dot product: independent accumulators keep the loop pipelined
// (and vectorizable) without reassociating under fast-math flags.
double dot(const double* __restrict a, const double* __restrict b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

// Forward pass into a caller-provided hidden buffer; returns the output.
double forward(const MlpModel& m, std::span<const double> x, std::vector<double>& hidden) {
    const std::size_t d = m.input_dim, h = m.hidden;
    const double* w1 = m.params.data();
    const double* b1 = m.params.data() + m.b1_index(0);
    const double* w2 = m.params.data() + m.w2_index(0);
    const double b2 = m.params[m.b2_index()];

    for (std::size_t j = 0; j < h; ++j) hidden[j] = sigmoid(b1[j] + dot(w1 + j * d, x.data(), d));
    return sigmoid(b2 + dot(w2, hidden.data(), h));
}

}  // namespace

double MlpModel::output(std::span<const double> x) const {
    if (x.size() != input_dim)
        throw std::invalid_argument("feature row has width " + std::to_string(x.size()) +
                                    ", model expects " + std::to_string(input_dim));
    std::vector<double> hidden(this->hidden);
    return forward(*this, x, hidden);
}

MlpModel mlp_train(const BinaryDataset& data, std::span<const std::size_t> rows,
                   const MlpParams& params, std::uint64_t seed) {
    check_params(params);
    if (rows.empty()) throw std::invalid_argument("MLP training slice is empty");

    MlpModel model;
    model.input_dim = data.dim();
    model.hidden = params.hidden;
    model.hyper = params;
    model.seed = seed;

    SplitMix64 rng(seed);
    model.params.resize(model.param_count());
    for (double& w : model.params) w = rng.next_uniform(-0.5, 0.5);
    if (params.epochs == 0) return model;

    const std::size_t d = model.input_dim, h = model.hidden;
    const double lr = params.learning_rate, mu = params.momentum;

    std::vector<double> velocity(model.params.size(), 0.0);
    std::vector<double> hidden(h), delta_hidden(h);
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    double* w1 = model.params.data();
    double* b1 = model.params.data() + model.b1_index(0);
    double* w2 = model.params.data() + model.w2_index(0);
    double* b2 = model.params.data() + model.b2_index();
    double* v_w1 = velocity.data();
    double* v_b1 = velocity.data() + model.b1_index(0);
    double* v_w2 = velocity.data() + model.w2_index(0);
    double* v_b2 = velocity.data() + model.b2_index();

    for (unsigned epoch = 0; epoch < params.epochs; ++epoch) {
        shuffle(order, rng);
        double epoch_loss = 0.0;
        for (std::size_t idx : order) {
            const auto& x = data.samples[rows[idx]];
            const double target = data.labels[rows[idx]] == 1 ? 1.0 : 0.0;

            const double out = forward(model, x, hidden);
            const double err = out - target;
            epoch_loss += 0.5 * err * err;

            // Gradients of the squared error through the sigmoids; the hidden
            // deltas must use the output weights before they are updated.
            const double delta_out = err * out * (1.0 - out);
            for (std::size_t j = 0; j < h; ++j)
                delta_hidden[j] = delta_out * w2[j] * hidden[j] * (1.0 - hidden[j]);

            for (std::size_t j = 0; j < h; ++j) {
                const double vj = mu * v_w2[j] - lr * delta_out * hidden[j];
                v_w2[j] = vj;
                w2[j] += vj;
            }
            {
                const double vb = mu * *v_b2 - lr * delta_out;
                *v_b2 = vb;
                *b2 += vb;
            }
            for (std::size_t j = 0; j < h; ++j) {
                const double step = lr * delta_hidden[j];
                double* __restrict wrow = w1 + j * d;
                double* __restrict vrow = v_w1 + j * d;
                const double* __restrict xs = x.data();
                for (std::size_t i = 0; i < d; ++i) {
                    const double vi = mu * vrow[i] - step * xs[i];
                    vrow[i] = vi;
                    wrow[i] += vi;
                }
                const double vb = mu * v_b1[j] - step;
                v_b1[j] = vb;
                b1[j] += vb;
            }
        }
        if (!std::isfinite(epoch_loss)) throw DivergenceError(epoch);
    }

    for (double w : model.params)
        if (!std::isfinite(w)) throw DivergenceError(params.epochs - 1);
    return model;
}

MlpModel mlp_train(const BinaryDataset& data, const MlpParams& params, std::uint64_t seed) {
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return mlp_train(data, rows, params, seed);
}

MlpPrediction mlp_predict(const MlpModel& model, std::span<const double> x) {
    const double out = model.output(x);
    return {out > 0.5 ? 1 : 0, out};
}

double mlp_loss(const MlpModel& model, const BinaryDataset& data,
                std::span<const std::size_t> rows) {
    std::vector<double> hidden(model.hidden);
    double loss = 0.0;
    for (std::size_t r : rows) {
        const double target = data.labels[r] == 1 ? 1.0 : 0.0;
        const double err = forward(model, data.samples[r], hidden) - target;
        loss += 0.5 * err * err;
    }
    return loss;
}

std::vector<double> mlp_gradient(const MlpModel& model, const BinaryDataset& data,
                                 std::span<const std::size_t> rows) {
    const std::size_t d = model.input_dim, h = model.hidden;
    std::vector<double> grad(model.params.size(), 0.0);
    std::vector<double> hidden(h);
    const double* w2 = model.params.data() + model.w2_index(0);

    for (std::size_t r : rows) {
        const auto& x = data.samples[r];
        const double target = data.labels[r] == 1 ? 1.0 : 0.0;
        const double out = forward(model, x, hidden);
        const double delta_out = (out - target) * out * (1.0 - out);

        for (std::size_t j = 0; j < h; ++j) {
            grad[model.w2_index(j)] += delta_out * hidden[j];
            const double delta_h = delta_out * w2[j] * hidden[j] * (1.0 - hidden[j]);
            for (std::size_t i = 0; i < d; ++i) grad[model.w1_index(j, i)] += delta_h * x[i];
            grad[model.b1_index(j)] += delta_h;
        }
        grad[model.b2_index()] += delta_out;
    }
    return grad;
}

}  // namespace antilearn
