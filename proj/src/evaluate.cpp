#include "antilearn/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "antilearn/rng.hpp"

namespace antilearn {

namespace {

constexpr const char* kReportHeader = "dataset,algorithm,folds,inverted,mean_train_acc,mean_val_acc";

std::string format_acc(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct FoldOutcome {
    std::size_t train_correct = 0;
    std::size_t train_total = 0;
    std::size_t val_correct = 0;  // before any inversion
    std::size_t val_total = 0;
    std::string error;
};

// Train on everything outside the fold, score both sides. The per-fold seed
// makes the trained model independent of scheduling.
FoldOutcome evaluate_fold(const ClassifierSpec& spec, const BinaryDataset& data,
                          const FoldPlan& plan, const std::vector<std::size_t>& fold_rows,
                          std::size_t fold_index) {
    FoldOutcome out;
    std::vector<std::size_t> train_rows;
    train_rows.reserve(data.size() - fold_rows.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        if (plan.assignment[i] != fold_index) train_rows.push_back(i);

    const std::uint64_t fold_seed =
        derive_seed(spec.seed, data.name, spec.tag(), plan.fold_count, fold_index);

    TrainedModel model;
    try {
        model = train_classifier(spec, data, train_rows, fold_seed);
    } catch (const std::exception& e) {
        out.error = "fold " + std::to_string(fold_index) + ": " + e.what();
        return out;
    }

    out.train_total = train_rows.size();
    for (std::size_t r : train_rows)
        if (predict_label(model, data.samples[r]) == data.labels[r]) ++out.train_correct;
    out.val_total = fold_rows.size();
    for (std::size_t r : fold_rows)
        if (predict_label(model, data.samples[r]) == data.labels[r]) ++out.val_correct;
    return out;
}

CvCellResult assemble_cell(const ClassifierSpec& spec, const BinaryDataset& data,
                           const FoldPlan& plan, bool invert,
                           const std::vector<FoldOutcome>& outcomes) {
    CvCellResult cell;
    cell.dataset = data.name;
    cell.spec = spec;
    cell.fold_count = plan.fold_count;
    cell.inverted = invert;

    for (const FoldOutcome& fo : outcomes) {
        if (!fo.error.empty()) {
            cell.error = fo.error;
            cell.mean_train_acc = std::nan("");
            cell.mean_val_acc = std::nan("");
            cell.fold_train_acc.clear();
            cell.fold_val_acc.clear();
            return cell;
        }
    }

    std::size_t train_correct = 0, train_total = 0, val_correct = 0, val_total = 0;
    for (const FoldOutcome& fo : outcomes) {
        const std::size_t fold_val_correct =
            invert ? fo.val_total - fo.val_correct : fo.val_correct;
        cell.fold_train_acc.push_back(static_cast<double>(fo.train_correct) /
                                      static_cast<double>(fo.train_total));
        cell.fold_val_acc.push_back(static_cast<double>(fold_val_correct) /
                                    static_cast<double>(fo.val_total));
        train_correct += fo.train_correct;
        train_total += fo.train_total;
        val_correct += fold_val_correct;
        val_total += fo.val_total;
    }
    cell.mean_train_acc = static_cast<double>(train_correct) / static_cast<double>(train_total);
    cell.mean_val_acc = static_cast<double>(val_correct) / static_cast<double>(val_total);
    return cell;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view dataset,
                          std::string_view algorithm, std::size_t fold_count,
                          std::size_t fold_index) {
    return Fnv1a64{}
        .feed(global_seed)
        .feed(dataset)
        .feed(algorithm)
        .feed(static_cast<std::uint64_t>(fold_count))
        .feed(static_cast<std::uint64_t>(fold_index))
        .value();
}

CvCellResult evaluate_cv(const ClassifierSpec& spec, const BinaryDataset& data,
                         const FoldPlan& plan, bool invert) {
    spec.validate();
    if (plan.assignment.size() != data.size())
        throw std::invalid_argument("fold plan covers " + std::to_string(plan.assignment.size()) +
                                    " samples, dataset has " + std::to_string(data.size()));

    const auto folds = plan.folds();
    std::vector<FoldOutcome> outcomes(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        outcomes[f] = evaluate_fold(spec, data, plan, folds[f], f);
        if (!outcomes[f].error.empty()) throw std::runtime_error(outcomes[f].error);
    }
    return assemble_cell(spec, data, plan, invert, outcomes);
}

GridReport run_grid(const std::vector<BinaryDataset>& datasets,
                    const std::vector<ClassifierSpec>& specs, const GridOptions& options) {
    for (const ClassifierSpec& spec : specs) spec.validate();
    for (const BinaryDataset& ds : datasets)
        for (std::size_t k : options.fold_counts)
            if (k < 2 || k > ds.size())
                throw std::out_of_range("fold count " + std::to_string(k) + " is out of range for " +
                                        ds.name + " (" + std::to_string(ds.size()) + " samples)");

    GridReport report;
    report.seed = options.seed;
    report.timestamp = iso_timestamp();

    // Fold plans are per (dataset, fold count) and shared by every classifier.
    std::vector<FoldPlan> plans;
    for (const BinaryDataset& ds : datasets)
        for (std::size_t k : options.fold_counts)
            plans.push_back(make_folds(ds.size(), k, ds.labels,
                                       derive_seed(options.seed, ds.name, "folds", k, 0),
                                       options.stratified));

    struct Cell {
        const BinaryDataset* data;
        const ClassifierSpec* spec;
        const FoldPlan* plan;
        std::vector<std::vector<std::size_t>> folds;
        std::vector<FoldOutcome> outcomes;
    };
    std::vector<Cell> cells;
    for (std::size_t di = 0; di < datasets.size(); ++di) {
        for (const ClassifierSpec& spec : specs) {
            for (std::size_t ki = 0; ki < options.fold_counts.size(); ++ki) {
                const FoldPlan& plan = plans[di * options.fold_counts.size() + ki];
                Cell cell{&datasets[di], &spec, &plan, plan.folds(), {}};
                cell.outcomes.resize(plan.fold_count);
                cells.push_back(std::move(cell));
            }
        }
    }

    struct Task {
        std::size_t cell;
        std::size_t fold;
    };
    std::vector<Task> tasks;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (std::size_t f = 0; f < cells[ci].outcomes.size(); ++f) tasks.push_back({ci, f});

    unsigned threads = options.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    std::atomic<std::size_t> next_task{0};
    std::vector<std::atomic<std::size_t>> folds_done(cells.size());
    std::mutex progress_mutex;
    std::atomic<std::size_t> cells_done{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) return;
            Cell& cell = cells[tasks[t].cell];
            const std::size_t f = tasks[t].fold;
            cell.outcomes[f] =
                evaluate_fold(*cell.spec, *cell.data, *cell.plan, cell.folds[f], f);
            if (folds_done[tasks[t].cell].fetch_add(1) + 1 == cell.outcomes.size() &&
                options.on_cell_done) {
                // Cell complete; report progress outside the result arrays.
                CvCellResult done =
                    assemble_cell(*cell.spec, *cell.data, *cell.plan, options.invert, cell.outcomes);
                std::lock_guard lock(progress_mutex);
                options.on_cell_done(done, cells_done.fetch_add(1) + 1, cells.size());
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i + 1 < threads; ++i) pool.emplace_back(worker);
        worker();
        for (std::thread& th : pool) th.join();
    }

    for (const Cell& cell : cells)
        report.cells.push_back(
            assemble_cell(*cell.spec, *cell.data, *cell.plan, options.invert, cell.outcomes));
    return report;
}

std::vector<CvCellResult> detect_antilearning(const GridReport& report, double threshold) {
    std::vector<CvCellResult> flagged;
    for (const CvCellResult& cell : report.cells)
        if (cell.ok() && cell.mean_val_acc < threshold && cell.mean_train_acc > threshold)
            flagged.push_back(cell);
    return flagged;
}

void write_report_csv(const GridReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << kReportHeader << '\n';
    for (const CvCellResult& cell : report.cells)
        out << cell.dataset << ',' << cell.spec.tag() << ',' << cell.fold_count << ','
            << (cell.inverted ? 1 : 0) << ',' << format_acc(cell.mean_train_acc) << ','
            << format_acc(cell.mean_val_acc) << '\n';
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void write_report_csv_long(const GridReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "dataset,algorithm,folds,inverted,fold,train_acc,val_acc\n";
    for (const CvCellResult& cell : report.cells)
        for (std::size_t f = 0; f < cell.fold_train_acc.size(); ++f)
            out << cell.dataset << ',' << cell.spec.tag() << ',' << cell.fold_count << ','
                << (cell.inverted ? 1 : 0) << ',' << f << ',' << format_acc(cell.fold_train_acc[f])
                << ',' << format_acc(cell.fold_val_acc[f]) << '\n';
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

GridReport read_report_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty report file", 1);
    if (line != kReportHeader)
        throw ParseError("report header must be \"" + std::string(kReportHeader) + "\"", 1);

    GridReport report;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 6)
            throw ParseError("report row has " + std::to_string(fields.size()) +
                                 " fields, expected 6",
                             line_no);
        CvCellResult cell;
        cell.dataset = fields[0];
        try {
            cell.spec.algorithm = parse_algorithm(fields[1]);
            std::size_t consumed = 0;
            cell.fold_count = std::stoul(fields[2], &consumed);
            if (consumed != fields[2].size()) throw std::invalid_argument(fields[2]);
            if (fields[3] == "0")
                cell.inverted = false;
            else if (fields[3] == "1")
                cell.inverted = true;
            else
                throw std::invalid_argument("inverted flag must be 0 or 1");
            cell.mean_train_acc = std::stod(fields[4]);
            cell.mean_val_acc = std::stod(fields[5]);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad report row: ") + e.what(), line_no);
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

}  // namespace antilearn
