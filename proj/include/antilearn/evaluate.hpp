#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "antilearn/classifier.hpp"
#include "antilearn/dataset.hpp"
#include "antilearn/folds.hpp"

namespace antilearn {

// One (dataset, classifier, fold count) evaluation. Means are sample-weighted
// aggregates: mean_val_acc is total correct validation predictions over the
// dataset size, mean_train_acc weights each fold by its training-set size.
struct CvCellResult {
    std::string dataset;
    ClassifierSpec spec;
    std::size_t fold_count = 0;
    bool inverted = false;

    std::vector<double> fold_train_acc;
    std::vector<double> fold_val_acc;
    double mean_train_acc = 0.0;
    double mean_val_acc = 0.0;

    std::string error;  // nonempty when the cell failed; accuracies then NaN

    bool ok() const noexcept { return error.empty(); }
};

struct GridReport {
    std::uint64_t seed = 0;
    std::string timestamp;  // creation time, never serialized
    std::vector<CvCellResult> cells;
};

// Stable per-fold seed: every parallel schedule trains the exact model a
// serial sweep would.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view dataset,
                          std::string_view algorithm, std::size_t fold_count,
                          std::size_t fold_index);

// Cross-validate one cell: for each fold, train on the remaining samples and
// score both sides. With invert, validation predictions are flipped before
// scoring; training accuracy never is. Training failures are rethrown with
// the fold index attached.
CvCellResult evaluate_cv(const ClassifierSpec& spec, const BinaryDataset& data,
                         const FoldPlan& plan, bool invert = false);

struct GridOptions {
    std::vector<std::size_t> fold_counts = {4, 8, 16, 32, 64, 128, 256};
    std::uint64_t seed = 0;
    bool stratified = true;
    bool invert = false;
    unsigned threads = 1;  // 0 -> hardware concurrency
    // invoked as cells finish (already assembled); used for progress lines
    std::function<void(const CvCellResult&, std::size_t done, std::size_t total)> on_cell_done;
};

// Full Cartesian product in canonical order (dataset, then classifier, then
// fold count). A failing cell records its error and the rest still run; the
// report is byte-identical for any thread count.
GridReport run_grid(const std::vector<BinaryDataset>& datasets,
                    const std::vector<ClassifierSpec>& specs,
                    const GridOptions& options);

// Cells whose mean validation accuracy is strictly below the threshold while
// mean training accuracy is strictly above it.
std::vector<CvCellResult> detect_antilearning(const GridReport& report, double threshold = 0.5);

// Report CSV: "dataset,algorithm,folds,inverted,mean_train_acc,mean_val_acc",
// accuracies with 4 decimals. The long form appends per-fold rows instead.
void write_report_csv(const GridReport& report, const std::filesystem::path& path);
void write_report_csv_long(const GridReport& report, const std::filesystem::path& path);

// Parse a summary report CSV back into cells (per-fold lists stay empty).
GridReport read_report_csv(const std::filesystem::path& path);

}  // namespace antilearn
