// End-to-end checks of the installed command-line surface. The binary path
// arrives via the ANTILEARN_CLI environment variable set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int status = -1;
    std::string output;  // stdout only
};

std::string cli_path() {
    const char* path = std::getenv("ANTILEARN_CLI");
    REQUIRE_MESSAGE(path != nullptr, "ANTILEARN_CLI must point at the CLI binary");
    return path;
}

CmdResult run_cli(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "antilearn-cli-tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t line_count(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    return lines;
}

}  // namespace

TEST_CASE("gen writes the pyramid dataset with the documented layout") {
    const auto dir = temp_dir();
    const auto out = dir / "p.csv";
    const auto r = run_cli("gen --dataset pyramid-xor --out " + out.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("256 rows") != std::string::npos);
    CHECK(r.output.find("128/128") != std::string::npos);
    CHECK(line_count(out) == 257);

    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b,c,d,e,f,g,h,out");
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "0,0,0,0,0,0,0,1,TRUE");
}

TEST_CASE("gen writes a hadamard dataset and graymap at a chosen order") {
    const auto dir = temp_dir();
    const auto out = dir / "h.csv";
    const auto pgm = dir / "h.pgm";
    const auto r = run_cli("gen --dataset hadamard --order 4 --out " + out.string() + " --pgm " +
                           pgm.string());
    CHECK(r.status == 0);
    CHECK(slurp(out) ==
          "v1,v2,v3,out\n"
          "1,1,1,1\n"
          "1,-1,1,-1\n"
          "1,1,-1,-1\n"
          "1,-1,-1,1\n");
    CHECK(slurp(pgm).rfind("P2\n4 4\n255\n", 0) == 0);
}

TEST_CASE("gen usage errors exit with code 2") {
    const auto dir = temp_dir();
    CHECK(run_cli("gen --dataset nonsense --out " + (dir / "x.csv").string()).status == 2);
    CHECK(run_cli("gen --dataset hadamard --order 7 --out " + (dir / "x.csv").string()).status == 2);
    CHECK(run_cli("gen --dataset pyramid-xor --order 4 --out " + (dir / "x.csv").string()).status ==
          2);
    CHECK(run_cli("gen --dataset pyramid-xor").status == 2);  // --out is required
    CHECK(run_cli("gen --help").status == 0);
}

TEST_CASE("grid runs, reports, and is byte-identical across runs and thread counts") {
    const auto dir = temp_dir();
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    const std::string common =
        " --datasets pyramid-xor --classifiers nb,svm --folds 4,8 --seed 11 --out ";
    CHECK(run_cli("grid" + common + a.string() + " --threads 1").status == 0);
    CHECK(run_cli("grid" + common + b.string() + " --threads 3").status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(line_count(a) == 5);  // header + 2x2 cells

    const auto text = slurp(a);
    CHECK(text.rfind("dataset,algorithm,folds,inverted,mean_train_acc,mean_val_acc\n", 0) == 0);
    CHECK(text.find("pyramid-xor,nb,4,0,") != std::string::npos);
}

TEST_CASE("grid at LOOCV reproduces the zero-accuracy rows and the inversion") {
    const auto dir = temp_dir();
    const auto out = dir / "loocv.csv";
    const auto r =
        run_cli("grid --classifiers nb --folds 256 --seed 5 --out " + out.string());
    CHECK(r.status == 0);
    const auto text = slurp(out);
    CHECK(text.find("pyramid-xor,nb,256,0,") != std::string::npos);
    std::size_t zero_rows = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
        if (line.find(",0.0000") == line.size() - 7 && line.size() >= 7) ++zero_rows;
    CHECK(zero_rows == 3);

    const auto inv = dir / "loocv-inv.csv";
    CHECK(run_cli("grid --classifiers nb --folds 256 --seed 5 --invert --out " + inv.string())
              .status == 0);
    const auto inv_text = slurp(inv);
    std::size_t one_rows = 0;
    std::istringstream inv_lines(inv_text);
    while (std::getline(inv_lines, line))
        if (line.find(",1.0000") != std::string::npos) ++one_rows;
    CHECK(one_rows == 3);
}

TEST_CASE("grid rejects fold counts beyond the dataset size before training") {
    CHECK(run_cli("grid --folds 512 --out /dev/null").status == 2);
    CHECK(run_cli("grid --folds 1 --out /dev/null").status == 2);
}

TEST_CASE("grid writes figure series files per classifier") {
    const auto dir = temp_dir() / "series";
    fs::remove_all(dir);
    const auto out = temp_dir() / "series-report.csv";
    const auto r = run_cli("grid --datasets pyramid-xor,random-xor --classifiers nb --folds 4,8 "
                           "--seed 2 --out " +
                           out.string() + " --series-out " + dir.string());
    CHECK(r.status == 0);
    REQUIRE(fs::exists(dir / "nb.tsv"));
    std::ifstream in(dir / "nb.tsv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "folds\tdataset\tval_acc");
    std::size_t rows = 0;
    std::size_t last_k = 0;
    std::string last_ds;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string k_text, ds, acc;
        std::getline(fields, k_text, '\t');
        std::getline(fields, ds, '\t');
        std::getline(fields, acc, '\t');
        const std::size_t k = std::stoul(k_text);
        if (ds == last_ds) CHECK(k > last_k);  // strictly increasing per dataset
        last_k = k;
        last_ds = ds;
    }
    CHECK(rows == 4);  // 2 datasets x 2 fold counts
}

TEST_CASE("grid accepts a config file with flags taking precedence") {
    const auto dir = temp_dir();
    const auto config = dir / "grid.cfg";
    std::ofstream(config) << "classifiers=nb\nfolds=4\nseed=9\n";
    const auto out = dir / "config-run.csv";
    const auto r = run_cli("grid --config " + config.string() + " --datasets random-xor --out " +
                           out.string());
    CHECK(r.status == 0);
    const auto text = slurp(out);
    CHECK(text.find("random-xor,nb,4,0,") != std::string::npos);
    CHECK(line_count(out) == 2);  // flags narrowed datasets; config set the rest

    std::ofstream(config, std::ios::app) << "bogus-key=1\n";
    CHECK(run_cli("grid --config " + config.string() + " --out " + out.string()).status == 2);
}

TEST_CASE("report renders markdown tables and round-trips csv") {
    const auto dir = temp_dir();
    const auto out = dir / "for-report.csv";
    REQUIRE(run_cli("grid --datasets pyramid-xor,random-xor --classifiers nb --folds 4,8 --seed 4 "
                    "--out " +
                    out.string())
                .status == 0);

    const auto md = run_cli("report --in " + out.string() + " --format markdown");
    CHECK(md.status == 0);
    CHECK(md.output.find("## nb") != std::string::npos);
    CHECK(md.output.find("| pyramid-xor |") != std::string::npos);
    CHECK(md.output.find("random-xor") != std::string::npos);

    const auto csv = run_cli("report --in " + out.string() + " --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.output == slurp(out));

    const auto bad = dir / "broken.csv";
    std::ofstream(bad) << "dataset,algorithm,folds,inverted,mean_train_acc,mean_val_acc\n"
                       << "pyramid-xor,nb,not-a-number,0,0.5,0.5\n";
    CHECK(run_cli("report --in " + bad.string() + " --format markdown").status == 1);
    CHECK(run_cli("report --in " + (dir / "absent.csv").string()).status == 1);
    CHECK(run_cli("report --in " + out.string() + " --format yaml").status == 2);
}

TEST_CASE("unknown subcommands and bare invocations are usage errors") {
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("--help").status == 0);
}
