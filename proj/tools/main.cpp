// antilearn: build the synthetic anti-learning datasets, sweep classifiers
// over cross-validation granularities, and render the result tables.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "antilearn/evaluate.hpp"
#include "antilearn/hadamard.hpp"
#include "antilearn/xor_expr.hpp"

namespace {

using namespace antilearn;

// Command-level misuse that CLI11 cannot catch itself; exits with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenOptions {
    std::string dataset;
    std::size_t order = 256;
    bool order_given = false;
    std::string out_path;
    std::string pgm_path;
};

struct GridCliOptions {
    std::vector<std::string> datasets = {"pyramid-xor", "random-xor", "hadamard"};
    std::vector<std::string> classifiers = {"nb", "svm", "mlp"};
    std::vector<std::size_t> folds = {4, 8, 16, 32, 64, 128, 256};
    std::uint64_t seed = 42;
    std::size_t hadamard_order = 256;
    bool invert = false;
    bool no_stratify = false;
    unsigned threads = 0;  // 0 -> hardware concurrency
    std::string out_path = "report.csv";
    std::string long_out_path;
    std::string series_dir;

    // hyperparameter overrides
    double nb_alpha = 1.0;
    bool nb_gaussian = false;
    std::string svm_kernel = "rbf";
    double svm_gamma = 1.0;
    unsigned svm_degree = 3;
    double svm_c = 1.0;
    double svm_tol = 1e-3;
    unsigned mlp_hidden = 16;
    double mlp_lr = 0.3;
    double mlp_momentum = 0.6;
    unsigned mlp_epochs = 2500;
};

struct ReportOptions {
    std::string in_path;
    std::string format = "markdown";
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Plain key=value config for the grid subcommand. Keys mirror the long flags
// without the leading dashes; command-line flags take precedence; unknown
// keys are rejected. '#' starts a comment.
void apply_grid_config(GridCliOptions& opt, const std::string& path, const CLI::App& grid_cmd) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);

    const auto parse_u64 = [](const std::string& key, const std::string& value) -> std::uint64_t {
        try {
            std::size_t used = 0;
            const auto parsed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            throw UsageError("config key " + key + " needs an unsigned integer, got \"" + value +
                             "\"");
        }
    };
    const auto parse_double = [](const std::string& key, const std::string& value) -> double {
        try {
            std::size_t used = 0;
            const double parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            throw UsageError("config key " + key + " needs a number, got \"" + value + "\"");
        }
    };
    const auto parse_bool = [](const std::string& key, const std::string& value) -> bool {
        if (value == "1" || value == "true" || value == "yes") return true;
        if (value == "0" || value == "false" || value == "no") return false;
        throw UsageError("config key " + key + " needs a boolean, got \"" + value + "\"");
    };
    const auto split_list = [](const std::string& value) {
        std::vector<std::string> items;
        std::istringstream stream(value);
        std::string item;
        while (std::getline(stream, item, ',')) items.push_back(trim(item));
        return items;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + " is not key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        // A flag given on the command line wins over the config file.
        // (count() throws on names CLI11 never saw; those fall through to the
        // unknown-key rejection below.)
        bool flag_given = false;
        try {
            flag_given = grid_cmd.count("--" + key) > 0;
        } catch (const CLI::Error&) {
        }
        if (flag_given) continue;

        if (key == "datasets")
            opt.datasets = split_list(value);
        else if (key == "classifiers")
            opt.classifiers = split_list(value);
        else if (key == "folds") {
            opt.folds.clear();
            for (const auto& item : split_list(value))
                opt.folds.push_back(parse_u64(key, item));
        } else if (key == "seed")
            opt.seed = parse_u64(key, value);
        else if (key == "hadamard-order")
            opt.hadamard_order = parse_u64(key, value);
        else if (key == "invert")
            opt.invert = parse_bool(key, value);
        else if (key == "no-stratify")
            opt.no_stratify = parse_bool(key, value);
        else if (key == "threads")
            opt.threads = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "out")
            opt.out_path = value;
        else if (key == "long-out")
            opt.long_out_path = value;
        else if (key == "series-out")
            opt.series_dir = value;
        else if (key == "nb-alpha")
            opt.nb_alpha = parse_double(key, value);
        else if (key == "nb-gaussian")
            opt.nb_gaussian = parse_bool(key, value);
        else if (key == "svm-kernel")
            opt.svm_kernel = value;
        else if (key == "svm-gamma")
            opt.svm_gamma = parse_double(key, value);
        else if (key == "svm-degree")
            opt.svm_degree = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "svm-c")
            opt.svm_c = parse_double(key, value);
        else if (key == "svm-tol")
            opt.svm_tol = parse_double(key, value);
        else if (key == "mlp-hidden")
            opt.mlp_hidden = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "mlp-lr")
            opt.mlp_lr = parse_double(key, value);
        else if (key == "mlp-momentum")
            opt.mlp_momentum = parse_double(key, value);
        else if (key == "mlp-epochs")
            opt.mlp_epochs = static_cast<unsigned>(parse_u64(key, value));
        else
            throw UsageError("unknown config key \"" + key + "\" (line " +
                             std::to_string(line_no) + ")");
    }
}

unsigned exponent_of_power_of_two(std::size_t order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw UsageError("order must be a power of two >= 2, got " + std::to_string(order));
    unsigned k = 0;
    while ((std::size_t{1} << k) < order) ++k;
    return k;
}

BinaryDataset build_dataset(const std::string& selector, std::size_t hadamard_order) {
    if (selector == "pyramid-xor") return pyramid_xor_dataset();
    if (selector == "random-xor") return random_xor_dataset();
    if (selector == "hadamard") return hadamard_dataset(exponent_of_power_of_two(hadamard_order));
    throw UsageError("unknown dataset \"" + selector +
                     "\" (expected pyramid-xor, random-xor or hadamard)");
}

void print_dataset_summary(const BinaryDataset& ds) {
    const auto counts = ds.class_counts();
    std::cout << ds.name << ": " << ds.size() << " rows, " << ds.dim()
              << " features, class balance " << counts[1] << "/" << counts[0] << "\n";
}

int cmd_gen(const GenOptions& opt) {
    if (opt.dataset != "hadamard") {
        if (opt.order_given) throw UsageError("--order only applies to the hadamard dataset");
        if (!opt.pgm_path.empty()) throw UsageError("--pgm only applies to the hadamard dataset");
    }
    const BinaryDataset ds = build_dataset(opt.dataset, opt.order);
    write_dataset_csv(ds, opt.out_path);
    if (!opt.pgm_path.empty())
        render_matrix_pgm(sylvester_hadamard(exponent_of_power_of_two(opt.order)), opt.pgm_path);
    print_dataset_summary(ds);
    std::cout << "wrote " << opt.out_path;
    if (!opt.pgm_path.empty()) std::cout << " and " << opt.pgm_path;
    std::cout << "\n";
    return 0;
}

std::vector<ClassifierSpec> build_specs(const GridCliOptions& opt) {
    Kernel kernel_type;
    if (opt.svm_kernel == "linear")
        kernel_type = Kernel::linear;
    else if (opt.svm_kernel == "poly" || opt.svm_kernel == "polynomial")
        kernel_type = Kernel::polynomial;
    else if (opt.svm_kernel == "rbf")
        kernel_type = Kernel::rbf;
    else
        throw UsageError("unknown kernel \"" + opt.svm_kernel +
                         "\" (expected linear, poly or rbf)");

    std::vector<ClassifierSpec> specs;
    for (const std::string& tag : opt.classifiers) {
        ClassifierSpec spec;
        try {
            spec.algorithm = parse_algorithm(tag);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        spec.seed = opt.seed;
        spec.nb.alpha = opt.nb_alpha;
        spec.nb.gaussian = opt.nb_gaussian;
        spec.svm.kernel = {kernel_type, opt.svm_gamma, opt.svm_degree};
        spec.svm.c = opt.svm_c;
        spec.svm.tol = opt.svm_tol;
        spec.mlp = {opt.mlp_hidden, opt.mlp_lr, opt.mlp_momentum, opt.mlp_epochs};
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        specs.push_back(spec);
    }
    return specs;
}

void write_figure_series(const GridReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    std::vector<std::string> tags;
    for (const CvCellResult& cell : report.cells)
        if (std::find(tags.begin(), tags.end(), std::string(cell.spec.tag())) == tags.end())
            tags.emplace_back(cell.spec.tag());

    for (const std::string& tag : tags) {
        std::vector<std::string> datasets;
        std::map<std::pair<std::string, std::size_t>, double> points;
        for (const CvCellResult& cell : report.cells) {
            if (cell.spec.tag() != tag || !cell.ok()) continue;
            if (std::find(datasets.begin(), datasets.end(), cell.dataset) == datasets.end())
                datasets.push_back(cell.dataset);
            const auto key = std::make_pair(cell.dataset, cell.fold_count);
            if (points.count(key))
                throw std::runtime_error("duplicate (" + cell.dataset + ", k=" +
                                         std::to_string(cell.fold_count) + ") cell for " + tag);
            points[key] = cell.mean_val_acc;
        }

        const auto path = dir / (tag + ".tsv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << "folds\tdataset\tval_acc\n";
        for (const std::string& ds : datasets) {
            std::vector<std::pair<std::size_t, double>> series;
            for (const auto& [key, acc] : points)
                if (key.first == ds) series.emplace_back(key.second, acc);
            std::sort(series.begin(), series.end());
            char buf[32];
            for (const auto& [k, acc] : series) {
                std::snprintf(buf, sizeof buf, "%.4f", acc);
                out << k << '\t' << ds << '\t' << buf << '\n';
            }
        }
    }
}

int cmd_grid(const GridCliOptions& opt) {
    std::vector<BinaryDataset> datasets;
    for (const std::string& selector : opt.datasets)
        datasets.push_back(build_dataset(selector, opt.hadamard_order));

    const std::vector<ClassifierSpec> specs = build_specs(opt);

    GridOptions grid;
    grid.fold_counts = opt.folds;
    std::sort(grid.fold_counts.begin(), grid.fold_counts.end());
    grid.fold_counts.erase(std::unique(grid.fold_counts.begin(), grid.fold_counts.end()),
                           grid.fold_counts.end());
    for (const BinaryDataset& ds : datasets)
        for (std::size_t k : grid.fold_counts)
            if (k < 2 || k > ds.size())
                throw UsageError("fold count " + std::to_string(k) + " is out of range for " +
                                 ds.name + " (" + std::to_string(ds.size()) + " samples)");

    grid.seed = opt.seed;
    grid.stratified = !opt.no_stratify;
    grid.invert = opt.invert;
    grid.threads = opt.threads;
    grid.on_cell_done = [](const CvCellResult& cell, std::size_t done, std::size_t total) {
        std::fprintf(stderr, "[%zu/%zu] %s %s k=%zu", done, total, cell.dataset.c_str(),
                     std::string(cell.spec.tag()).c_str(), cell.fold_count);
        if (cell.ok())
            std::fprintf(stderr, " train=%.4f val=%.4f\n", cell.mean_train_acc, cell.mean_val_acc);
        else
            std::fprintf(stderr, " FAILED: %s\n", cell.error.c_str());
    };

    const GridReport report = run_grid(datasets, specs, grid);
    write_report_csv(report, opt.out_path);
    if (!opt.long_out_path.empty()) write_report_csv_long(report, opt.long_out_path);
    if (!opt.series_dir.empty()) write_figure_series(report, opt.series_dir);

    std::size_t failed = 0;
    for (const CvCellResult& cell : report.cells)
        if (!cell.ok()) ++failed;
    std::cout << "wrote " << opt.out_path << " (" << report.cells.size() << " cells";
    if (failed) std::cout << ", " << failed << " failed";
    std::cout << ")\n";

    const auto flagged = detect_antilearning(report);
    std::cout << flagged.size() << " of " << report.cells.size()
              << " cells are in the anti-learning regime (validation below chance, training above)\n";
    return failed == 0 ? 0 : 1;
}

std::string format_acc(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

int cmd_report(const ReportOptions& opt) {
    const GridReport report = read_report_csv(opt.in_path);

    if (opt.format == "csv") {
        std::cout << "dataset,algorithm,folds,inverted,mean_train_acc,mean_val_acc\n";
        for (const CvCellResult& cell : report.cells)
            std::cout << cell.dataset << ',' << cell.spec.tag() << ',' << cell.fold_count << ','
                      << (cell.inverted ? 1 : 0) << ',' << format_acc(cell.mean_train_acc) << ','
                      << format_acc(cell.mean_val_acc) << '\n';
        return 0;
    }
    if (opt.format != "markdown")
        throw UsageError("unknown format \"" + opt.format + "\" (expected markdown or csv)");

    // One fold-count x dataset table of validation accuracies per classifier.
    struct Group {
        std::string tag;
        bool inverted;
        std::vector<std::string> datasets;
        std::set<std::size_t> folds;
        std::map<std::pair<std::string, std::size_t>, double> val;
    };
    std::vector<Group> groups;
    for (const CvCellResult& cell : report.cells) {
        const std::string tag{cell.spec.tag()};
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.tag == tag && g.inverted == cell.inverted;
        });
        if (it == groups.end()) {
            groups.push_back({tag, cell.inverted, {}, {}, {}});
            it = groups.end() - 1;
        }
        if (std::find(it->datasets.begin(), it->datasets.end(), cell.dataset) == it->datasets.end())
            it->datasets.push_back(cell.dataset);
        it->folds.insert(cell.fold_count);
        it->val[{cell.dataset, cell.fold_count}] = cell.mean_val_acc;
    }

    for (const Group& g : groups) {
        std::cout << "## " << g.tag << (g.inverted ? " (inverted)" : "") << "\n\n";

        std::vector<std::size_t> widths{5};  // "folds"
        for (const std::string& ds : g.datasets) widths.push_back(std::max<std::size_t>(ds.size(), 6));

        auto row = [&](const std::vector<std::string>& cells) {
            std::cout << '|';
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::cout << ' ' << std::string(widths[i] - cells[i].size(), ' ') << cells[i] << " |";
            }
            std::cout << '\n';
        };

        std::vector<std::string> header{"folds"};
        header.insert(header.end(), g.datasets.begin(), g.datasets.end());
        row(header);
        std::cout << '|';
        for (std::size_t w : widths) std::cout << std::string(w + 1, '-') << ":|";
        std::cout << '\n';
        for (std::size_t k : g.folds) {
            std::vector<std::string> cells{std::to_string(k)};
            for (const std::string& ds : g.datasets) {
                auto it = g.val.find({ds, k});
                cells.push_back(it == g.val.end() ? std::string("-") : format_acc(it->second));
            }
            row(cells);
        }
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anti-learning dataset generator and cross-validation granularity harness"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a dataset CSV (and optional PGM)");
    gen_cmd->add_option("--dataset", gen.dataset, "pyramid-xor | random-xor | hadamard")
        ->required();
    gen_cmd->add_option("--order", gen.order, "hadamard matrix order (power of two)")
        ->trigger_on_parse()
        ->each([&gen](const std::string&) { gen.order_given = true; });
    gen_cmd->add_option("--out", gen.out_path, "output CSV path")->required();
    gen_cmd->add_option("--pgm", gen.pgm_path, "also render the hadamard matrix as a P2 graymap");

    GridCliOptions grid;
    std::string grid_config_path;
    CLI::App* grid_cmd = app.add_subcommand("grid", "run the cross-validation grid");
    grid_cmd->add_option("--config", grid_config_path,
                         "key=value file; command-line flags take precedence");
    grid_cmd->add_option("--datasets", grid.datasets, "datasets to include")
        ->delimiter(',')
        ->capture_default_str();
    grid_cmd->add_option("--classifiers", grid.classifiers, "classifiers to include (nb,svm,mlp)")
        ->delimiter(',')
        ->capture_default_str();
    grid_cmd->add_option("--folds", grid.folds, "fold counts to sweep")
        ->delimiter(',')
        ->capture_default_str();
    grid_cmd->add_option("--seed", grid.seed, "global seed")->capture_default_str();
    grid_cmd->add_option("--hadamard-order", grid.hadamard_order, "hadamard dataset order")
        ->capture_default_str();
    grid_cmd->add_flag("--invert", grid.invert, "flip validation predictions before scoring");
    grid_cmd->add_flag("--no-stratify", grid.no_stratify, "plain shuffled folds");
    grid_cmd->add_option("--threads", grid.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    grid_cmd->add_option("--out", grid.out_path, "report CSV path")->capture_default_str();
    grid_cmd->add_option("--long-out", grid.long_out_path, "per-fold report CSV path");
    grid_cmd->add_option("--series-out", grid.series_dir,
                         "directory for per-classifier figure series (TSV)");
    grid_cmd->add_option("--nb-alpha", grid.nb_alpha, "nb smoothing")->capture_default_str();
    grid_cmd->add_flag("--nb-gaussian", grid.nb_gaussian, "gaussian likelihoods instead of Bernoulli");
    grid_cmd->add_option("--svm-kernel", grid.svm_kernel, "linear | poly | rbf")
        ->capture_default_str();
    grid_cmd->add_option("--svm-gamma", grid.svm_gamma, "rbf gamma")->capture_default_str();
    grid_cmd->add_option("--svm-degree", grid.svm_degree, "polynomial degree")
        ->capture_default_str();
    grid_cmd->add_option("--svm-c", grid.svm_c, "box constraint")->capture_default_str();
    grid_cmd->add_option("--svm-tol", grid.svm_tol, "KKT tolerance")->capture_default_str();
    grid_cmd->add_option("--mlp-hidden", grid.mlp_hidden, "hidden units")->capture_default_str();
    grid_cmd->add_option("--mlp-lr", grid.mlp_lr, "learning rate")->capture_default_str();
    grid_cmd->add_option("--mlp-momentum", grid.mlp_momentum, "momentum")->capture_default_str();
    grid_cmd->add_option("--mlp-epochs", grid.mlp_epochs, "training epochs")->capture_default_str();

    ReportOptions rep;
    CLI::App* report_cmd = app.add_subcommand("report", "render a report CSV as tables");
    report_cmd->add_option("--in", rep.in_path, "report CSV to read")->required();
    report_cmd->add_option("--format", rep.format, "markdown | csv")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, misuse exits 2
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (grid_cmd->parsed()) {
            if (!grid_config_path.empty()) apply_grid_config(grid, grid_config_path, *grid_cmd);
            return cmd_grid(grid);
        }
        return cmd_report(rep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
