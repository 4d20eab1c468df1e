#include "antilearn/classifier.hpp"

#include <stdexcept>

namespace antilearn {

std::string_view algorithm_tag(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::naive_bayes: return "nb";
        case Algorithm::svm: return "svm";
        case Algorithm::mlp: return "mlp";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view tag) {
    if (tag == "nb") return Algorithm::naive_bayes;
    if (tag == "svm") return Algorithm::svm;
    if (tag == "mlp") return Algorithm::mlp;
    throw std::invalid_argument("unknown classifier \"" + std::string(tag) +
                                "\" (expected nb, svm or mlp)");
}

void ClassifierSpec::validate() const {
    switch (algorithm) {
        case Algorithm::naive_bayes:
            if (!(nb.alpha > 0.0))
                throw std::invalid_argument("nb smoothing constant must be > 0");
            if (nb.gaussian && !(nb.variance_floor > 0.0))
                throw std::invalid_argument("nb variance floor must be > 0");
            break;
        case Algorithm::svm:
            if (!(svm.c > 0.0)) throw std::invalid_argument("svm C must be > 0");
            if (!(svm.tol > 0.0)) throw std::invalid_argument("svm tolerance must be > 0");
            if (svm.kernel.type == Kernel::rbf && !(svm.kernel.gamma > 0.0))
                throw std::invalid_argument("svm rbf gamma must be > 0");
            if (svm.kernel.type == Kernel::polynomial && svm.kernel.degree < 1)
                throw std::invalid_argument("svm polynomial degree must be >= 1");
            if (svm.max_passes == 0) throw std::invalid_argument("svm max_passes must be >= 1");
            break;
        case Algorithm::mlp:
            if (mlp.hidden < 1) throw std::invalid_argument("mlp hidden units must be >= 1");
            if (!(mlp.learning_rate > 0.0) || mlp.learning_rate > 1.0)
                throw std::invalid_argument("mlp learning rate must be in (0, 1]");
            if (!(mlp.momentum >= 0.0) || mlp.momentum >= 1.0)
                throw std::invalid_argument("mlp momentum must be in [0, 1)");
            break;
    }
}

TrainedModel train_classifier(const ClassifierSpec& spec, const BinaryDataset& data,
                              std::span<const std::size_t> rows, std::uint64_t seed) {
    switch (spec.algorithm) {
        case Algorithm::naive_bayes: return nb_train(data, rows, spec.nb);
        case Algorithm::svm: return svm_train(data, rows, spec.svm, seed);
        case Algorithm::mlp: return mlp_train(data, rows, spec.mlp, seed);
    }
    throw std::logic_error("unhandled algorithm");
}

int predict_label(const TrainedModel& model, std::span<const double> x) {
    if (const auto* nb = std::get_if<NaiveBayesModel>(&model)) return nb_predict(*nb, x).label;
    if (const auto* svm = std::get_if<SvmModel>(&model)) return svm_predict(*svm, x).label;
    return mlp_predict(std::get<MlpModel>(model), x).label;
}

}  // namespace antilearn
