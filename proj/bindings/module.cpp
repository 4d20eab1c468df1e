#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "antilearn/evaluate.hpp"
#include "antilearn/hadamard.hpp"
#include "antilearn/xor_expr.hpp"

namespace py = pybind11;
using namespace antilearn;

namespace {

std::vector<std::size_t> rows_or_all(const BinaryDataset& data,
                                     const std::optional<std::vector<std::size_t>>& rows) {
    if (rows) return *rows;
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "anti-learning datasets, from-scratch classifiers and the cross-validation grid";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

    py::class_<BinaryDataset>(m, "BinaryDataset")
        .def(py::init<>())
        .def_readwrite("name", &BinaryDataset::name)
        .def_readwrite("feature_names", &BinaryDataset::feature_names)
        .def_readwrite("samples", &BinaryDataset::samples)
        .def_readwrite("labels", &BinaryDataset::labels)
        .def("__len__", &BinaryDataset::size)
        .def_property_readonly("dim", &BinaryDataset::dim)
        .def("class_counts", &BinaryDataset::class_counts)
        .def("signed_encoding", &BinaryDataset::signed_encoding)
        .def("__repr__", [](const BinaryDataset& ds) {
            return "<BinaryDataset " + ds.name + " " + std::to_string(ds.size()) + "x" +
                   std::to_string(ds.dim()) + ">";
        });
    m.def("structurally_equal", &structurally_equal);
    m.def("write_dataset_csv", &write_dataset_csv, py::arg("dataset"), py::arg("path"));
    m.def("read_dataset_csv", &read_dataset_csv, py::arg("path"));

    py::class_<HadamardMatrix>(m, "HadamardMatrix")
        .def_readonly("order", &HadamardMatrix::order)
        .def("at", &HadamardMatrix::at, py::arg("row"), py::arg("col"))
        .def("rows", [](const HadamardMatrix& h) {
            std::vector<std::vector<int>> rows(h.order, std::vector<int>(h.order));
            for (std::size_t i = 0; i < h.order; ++i)
                for (std::size_t j = 0; j < h.order; ++j) rows[i][j] = h.at(i, j);
            return rows;
        });
    m.def("sylvester_hadamard", &sylvester_hadamard, py::arg("k"),
          py::arg("order_cap") = kDefaultHadamardOrderCap);
    m.def("hadamard_dataset", &hadamard_dataset, py::arg("k"),
          py::arg("order_cap") = kDefaultHadamardOrderCap);
    m.def("render_matrix_pgm", &render_matrix_pgm, py::arg("matrix"), py::arg("path"));

    py::class_<XorExpr>(m, "XorExpr")
        .def_static("parse", &XorExpr::parse, py::arg("text"))
        .def_static("variable", &XorExpr::variable, py::arg("name"))
        .def_static("xor_of", &XorExpr::xor_of, py::arg("lhs"), py::arg("rhs"))
        .def("eval", &XorExpr::eval, py::arg("assignment"))
        .def("variables", &XorExpr::variables)
        .def("__str__", &XorExpr::str);
    m.def("eval_xor_expr", &eval_xor_expr, py::arg("expr"), py::arg("assignment"));
    m.def("pyramid_xor_expr", &pyramid_xor_expr);
    m.def("random_xor_expr", &random_xor_expr);
    m.def("xor_dataset", &xor_dataset, py::arg("expr"), py::arg("name"));
    m.def("pyramid_xor_dataset", &pyramid_xor_dataset);
    m.def("random_xor_dataset", &random_xor_dataset);

    py::class_<NbParams>(m, "NbParams")
        .def(py::init<>())
        .def_readwrite("alpha", &NbParams::alpha)
        .def_readwrite("gaussian", &NbParams::gaussian)
        .def_readwrite("variance_floor", &NbParams::variance_floor);
    py::class_<NaiveBayesModel>(m, "NaiveBayesModel")
        .def_readonly("prior", &NaiveBayesModel::prior)
        .def_readonly("p_hi", &NaiveBayesModel::p_hi)
        .def_property_readonly("dim", &NaiveBayesModel::dim);
    py::class_<NbPrediction>(m, "NbPrediction")
        .def_readonly("label", &NbPrediction::label)
        .def_readonly("posterior", &NbPrediction::posterior);
    m.def(
        "nb_train",
        [](const BinaryDataset& data, const std::optional<std::vector<std::size_t>>& rows,
           const NbParams& params) { return nb_train(data, rows_or_all(data, rows), params); },
        py::arg("data"), py::arg("rows") = py::none(), py::arg("params") = NbParams{});
    m.def("nb_predict", [](const NaiveBayesModel& model, const std::vector<double>& x) {
        return nb_predict(model, x);
    });

    py::enum_<Kernel>(m, "Kernel")
        .value("linear", Kernel::linear)
        .value("polynomial", Kernel::polynomial)
        .value("rbf", Kernel::rbf);
    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init<>())
        .def_readwrite("type", &KernelSpec::type)
        .def_readwrite("gamma", &KernelSpec::gamma)
        .def_readwrite("degree", &KernelSpec::degree);
    py::class_<SvmParams>(m, "SvmParams")
        .def(py::init<>())
        .def_readwrite("kernel", &SvmParams::kernel)
        .def_readwrite("c", &SvmParams::c)
        .def_readwrite("tol", &SvmParams::tol)
        .def_readwrite("max_passes", &SvmParams::max_passes);
    py::class_<SvmModel>(m, "SvmModel")
        .def_readonly("bias", &SvmModel::bias)
        .def_readonly("support_vectors", &SvmModel::support_vectors)
        .def_readonly("coefficients", &SvmModel::coefficients);
    py::class_<SvmPrediction>(m, "SvmPrediction")
        .def_readonly("label", &SvmPrediction::label)
        .def_readonly("decision", &SvmPrediction::decision);
    m.def(
        "svm_train",
        [](const BinaryDataset& data, const std::optional<std::vector<std::size_t>>& rows,
           const SvmParams& params, std::uint64_t seed) {
            return svm_train(data, rows_or_all(data, rows), params, seed);
        },
        py::arg("data"), py::arg("rows") = py::none(), py::arg("params") = SvmParams{},
        py::arg("seed") = 0);
    m.def("svm_decision", [](const SvmModel& model, const std::vector<double>& x) {
        return svm_decision(model, x);
    });
    m.def("svm_predict", [](const SvmModel& model, const std::vector<double>& x) {
        return svm_predict(model, x);
    });

    py::class_<MlpParams>(m, "MlpParams")
        .def(py::init<>())
        .def_readwrite("hidden", &MlpParams::hidden)
        .def_readwrite("learning_rate", &MlpParams::learning_rate)
        .def_readwrite("momentum", &MlpParams::momentum)
        .def_readwrite("epochs", &MlpParams::epochs);
    py::class_<MlpModel>(m, "MlpModel")
        .def_readonly("input_dim", &MlpModel::input_dim)
        .def_readonly("hidden", &MlpModel::hidden)
        .def_readonly("params", &MlpModel::params)
        .def_readonly("seed", &MlpModel::seed)
        .def("layer_sizes", &MlpModel::layer_sizes)
        .def("output", [](const MlpModel& m_, const std::vector<double>& x) {
            return m_.output(x);
        });
    py::class_<MlpPrediction>(m, "MlpPrediction")
        .def_readonly("label", &MlpPrediction::label)
        .def_readonly("activation", &MlpPrediction::activation);
    m.def(
        "mlp_train",
        [](const BinaryDataset& data, const std::optional<std::vector<std::size_t>>& rows,
           const MlpParams& params, std::uint64_t seed) {
            return mlp_train(data, rows_or_all(data, rows), params, seed);
        },
        py::arg("data"), py::arg("rows") = py::none(), py::arg("params") = MlpParams{},
        py::arg("seed") = 0);
    m.def("mlp_predict", [](const MlpModel& model, const std::vector<double>& x) {
        return mlp_predict(model, x);
    });

    py::enum_<Algorithm>(m, "Algorithm")
        .value("naive_bayes", Algorithm::naive_bayes)
        .value("svm", Algorithm::svm)
        .value("mlp", Algorithm::mlp);
    m.def("algorithm_tag", [](Algorithm a) { return std::string(algorithm_tag(a)); });
    m.def("parse_algorithm", &parse_algorithm);
    py::class_<ClassifierSpec>(m, "ClassifierSpec")
        .def(py::init<>())
        .def_readwrite("algorithm", &ClassifierSpec::algorithm)
        .def_readwrite("nb", &ClassifierSpec::nb)
        .def_readwrite("svm", &ClassifierSpec::svm)
        .def_readwrite("mlp", &ClassifierSpec::mlp)
        .def_readwrite("seed", &ClassifierSpec::seed)
        .def_property_readonly("tag", [](const ClassifierSpec& s) { return std::string(s.tag()); })
        .def("validate", &ClassifierSpec::validate);
    m.def(
        "train_classifier",
        [](const ClassifierSpec& spec, const BinaryDataset& data,
           const std::optional<std::vector<std::size_t>>& rows,
           std::optional<std::uint64_t> seed) {
            return train_classifier(spec, data, rows_or_all(data, rows),
                                    seed.value_or(spec.seed));
        },
        py::arg("spec"), py::arg("data"), py::arg("rows") = py::none(),
        py::arg("seed") = py::none());
    m.def("predict_label", [](const TrainedModel& model, const std::vector<double>& x) {
        return predict_label(model, x);
    });

    py::class_<FoldPlan>(m, "FoldPlan")
        .def_readonly("fold_count", &FoldPlan::fold_count)
        .def_readonly("assignment", &FoldPlan::assignment)
        .def_readonly("seed", &FoldPlan::seed)
        .def_readonly("stratified", &FoldPlan::stratified)
        .def("folds", &FoldPlan::folds);
    m.def("make_folds", &make_folds, py::arg("sample_count"), py::arg("fold_count"),
          py::arg("labels"), py::arg("seed"), py::arg("stratified") = true);

    py::class_<CvCellResult>(m, "CvCellResult")
        .def_readonly("dataset", &CvCellResult::dataset)
        .def_readonly("spec", &CvCellResult::spec)
        .def_readonly("fold_count", &CvCellResult::fold_count)
        .def_readonly("inverted", &CvCellResult::inverted)
        .def_readonly("fold_train_acc", &CvCellResult::fold_train_acc)
        .def_readonly("fold_val_acc", &CvCellResult::fold_val_acc)
        .def_readonly("mean_train_acc", &CvCellResult::mean_train_acc)
        .def_readonly("mean_val_acc", &CvCellResult::mean_val_acc)
        .def_readonly("error", &CvCellResult::error)
        .def("ok", &CvCellResult::ok);
    py::class_<GridReport>(m, "GridReport")
        .def_readonly("seed", &GridReport::seed)
        .def_readonly("timestamp", &GridReport::timestamp)
        .def_readonly("cells", &GridReport::cells);
    m.def("derive_seed", &derive_seed);
    m.def("evaluate_cv", &evaluate_cv, py::arg("spec"), py::arg("data"), py::arg("plan"),
          py::arg("invert") = false);
    m.def(
        "run_grid",
        [](const std::vector<BinaryDataset>& datasets, const std::vector<ClassifierSpec>& specs,
           const std::vector<std::size_t>& fold_counts, std::uint64_t seed, bool stratified,
           bool invert, unsigned threads) {
            GridOptions options;
            options.fold_counts = fold_counts;
            options.seed = seed;
            options.stratified = stratified;
            options.invert = invert;
            options.threads = threads;
            return run_grid(datasets, specs, options);
        },
        py::arg("datasets"), py::arg("specs"),
        py::arg("fold_counts") = std::vector<std::size_t>{4, 8, 16, 32, 64, 128, 256},
        py::arg("seed") = 0, py::arg("stratified") = true, py::arg("invert") = false,
        py::arg("threads") = 1);
    m.def("detect_antilearning", &detect_antilearning, py::arg("report"),
          py::arg("threshold") = 0.5);
    m.def("write_report_csv", &write_report_csv, py::arg("report"), py::arg("path"));
    m.def("write_report_csv_long", &write_report_csv_long, py::arg("report"), py::arg("path"));
    m.def("read_report_csv", &read_report_csv, py::arg("path"));

#ifdef ANTILEARN_VERSION
    m.attr("__version__") = ANTILEARN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
