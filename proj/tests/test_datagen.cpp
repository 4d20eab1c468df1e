#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "antilearn/hadamard.hpp"
#include "antilearn/xor_expr.hpp"

using namespace antilearn;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "antilearn-datagen-tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Row agreement count via sign-bit packing, fast enough for order 1024.
std::size_t row_agreements(const HadamardMatrix& h, std::size_t r1, std::size_t r2) {
    std::size_t agree = 0;
    for (std::size_t j = 0; j < h.order; ++j)
        if (h.at(r1, j) == h.at(r2, j)) ++agree;
    return agree;
}

}  // namespace

TEST_CASE("sylvester base cases match the published matrices") {
    const auto h1 = sylvester_hadamard(0);
    CHECK(h1.order == 1);
    CHECK(h1.at(0, 0) == 1);

    const auto h2 = sylvester_hadamard(1);
    CHECK(h2.order == 2);
    const int expected2[2][2] = {{1, 1}, {1, -1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(h2.at(i, j) == expected2[i][j]);

    const auto h4 = sylvester_hadamard(2);
    const int expected4[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(h4.at(i, j) == expected4[i][j]);
}

TEST_CASE("hadamard entries are all +-1 and distinct rows agree in exactly half the columns") {
    for (unsigned k = 1; k <= 10; ++k) {
        const auto h = sylvester_hadamard(k);
        const std::size_t n = h.order;

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                REQUIRE((h.at(i, j) == 1 || h.at(i, j) == -1));

        // Pack each row's signs into words so the pair sweep stays cheap.
        const std::size_t words = (n + 63) / 64;
        std::vector<std::uint64_t> packed(n * words, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (h.at(i, j) < 0) packed[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                std::size_t disagree = 0;
                for (std::size_t w = 0; w < words; ++w)
                    disagree += static_cast<std::size_t>(
                        std::popcount(packed[i * words + w] ^ packed[j * words + w]));
                REQUIRE(disagree == n / 2);
            }
        }
    }
}

TEST_CASE("hadamard order cap is enforced and names the cap") {
    CHECK_THROWS_WITH_AS(sylvester_hadamard(13), doctest::Contains("4096"), std::length_error);
    CHECK_THROWS_AS(sylvester_hadamard(5, 16), std::length_error);
    CHECK_NOTHROW(sylvester_hadamard(4, 16));
}

TEST_CASE("hadamard dataset takes features from the first n-1 entries and the label from the last") {
    const auto ds = hadamard_dataset(2);
    CHECK(ds.name == "hadamard-4");
    CHECK(ds.size() == 4);
    CHECK(ds.dim() == 3);
    CHECK(ds.labels == std::vector<int>{1, 0, 0, 1});
    CHECK(ds.samples[1] == std::vector<double>{1, -1, 1});
    CHECK(ds.signed_encoding());

    CHECK_THROWS_AS(hadamard_dataset(0), std::invalid_argument);
}

TEST_CASE("hadamard-256 labels: 128 ones, matching the parity oracle") {
    const auto ds = hadamard_dataset(8);
    CHECK(ds.size() == 256);
    CHECK(ds.dim() == 255);

    // Independent oracle: the final entry of row i of a Sylvester matrix is
    // (-1)^popcount(i), so row i is labelled 1 exactly when popcount(i) is even.
    std::size_t expected_ones = 0;
    for (unsigned i = 0; i < 256; ++i)
        if (std::popcount(i) % 2 == 0) ++expected_ones;
    CHECK(expected_ones == 128);

    const auto counts = ds.class_counts();
    CHECK(counts[1] == 128);
    CHECK(counts[0] == 128);
    for (unsigned i = 0; i < 256; ++i)
        CHECK(ds.labels[i] == (std::popcount(i) % 2 == 0 ? 1 : 0));
}

TEST_CASE("xor expression evaluation") {
    const auto e = XorExpr::parse("xor(a,b)");
    CHECK(e.eval({{'a', 0}, {'b', 1}}) == 1);
    CHECK(e.eval({{'a', 1}, {'b', 1}}) == 0);
    CHECK(e.eval({{'a', 0}, {'b', 0}}) == 0);

    // Table row 00000001 of the pyramid tree is TRUE.
    std::map<char, int> row2;
    for (char v = 'a'; v <= 'h'; ++v) row2[v] = v == 'h' ? 1 : 0;
    CHECK(pyramid_xor_expr().eval(row2) == 1);

    // All-ones through the random tree: eight leaves, parity of eight ones is 0.
    std::map<char, int> ones;
    for (char v = 'a'; v <= 'h'; ++v) ones[v] = 1;
    CHECK(random_xor_expr().eval(ones) == 0);

    CHECK_THROWS_WITH_AS(e.eval({{'a', 1}}), doctest::Contains("'b'"), std::invalid_argument);
}

TEST_CASE("xor expression parsing follows the grammar") {
    CHECK(XorExpr::parse(" xor ( a , xor(b,c) ) ").str() == "xor(a,xor(b,c))");
    CHECK(XorExpr::parse("g").str() == "g");
    CHECK(XorExpr::parse("xor(d,d)").variables() == std::vector<char>{'d'});

    CHECK_THROWS_AS(XorExpr::parse("xor(a,b"), std::invalid_argument);
    CHECK_THROWS_AS(XorExpr::parse("xor(a b)"), std::invalid_argument);
    CHECK_THROWS_AS(XorExpr::parse("z"), std::invalid_argument);
    CHECK_THROWS_AS(XorExpr::parse("xor(a,b)c"), std::invalid_argument);
    CHECK_THROWS_AS(XorExpr::parse(""), std::invalid_argument);

    const auto eq2 = random_xor_expr();
    CHECK(eq2.variables() == std::vector<char>{'a', 'b', 'd', 'f', 'g', 'h'});
}

TEST_CASE("pyramid dataset: enumeration order, first 8 table rows, balance") {
    const auto ds = pyramid_xor_dataset();
    CHECK(ds.name == "pyramid-xor");
    CHECK(ds.size() == 256);
    CHECK(ds.feature_names ==
          std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h"});

    const int table_labels[8] = {0, 1, 1, 0, 1, 0, 0, 1};
    for (unsigned i = 0; i < 8; ++i) {
        for (unsigned bit = 0; bit < 8; ++bit)
            CHECK(ds.samples[i][bit] == ((i >> (7 - bit)) & 1));
        CHECK(ds.labels[i] == table_labels[i]);
    }

    const auto counts = ds.class_counts();
    CHECK(counts[0] == 128);
    CHECK(counts[1] == 128);

    // The pyramid tree is a balanced fold of all 8 variables, so each label
    // must equal the parity of the row. Exhaustive check.
    for (unsigned i = 0; i < 256; ++i)
        CHECK(ds.labels[i] == std::popcount(i) % 2);
}

TEST_CASE("random dataset labels equal the parity of {a,b,d,f,g,h} on every row") {
    const auto ds = random_xor_dataset();
    CHECK(ds.name == "random-xor");

    std::size_t ones = 0;
    for (unsigned i = 0; i < 256; ++i) {
        // Oracle: fold the six effective variables directly. d appears three
        // times in the tree and c,e never, so d survives and c,e drop out.
        const auto& row = ds.samples[i];
        const int parity = (static_cast<int>(row[0]) ^ static_cast<int>(row[1]) ^
                            static_cast<int>(row[3]) ^ static_cast<int>(row[5]) ^
                            static_cast<int>(row[6]) ^ static_cast<int>(row[7]));
        CHECK(ds.labels[i] == parity);
        ones += static_cast<std::size_t>(ds.labels[i]);
    }
    CHECK(ones == 128);

    SUBCASE("flipping c or e never changes the label") {
        const auto expr = random_xor_expr();
        std::map<char, int> assignment;
        for (unsigned i = 0; i < 256; ++i) {
            for (unsigned bit = 0; bit < 8; ++bit)
                assignment[static_cast<char>('a' + bit)] = (i >> (7 - bit)) & 1;
            const int base = expr.eval(assignment);
            for (char flip : {'c', 'e'}) {
                auto changed = assignment;
                changed[flip] ^= 1;
                CHECK(expr.eval(changed) == base);
            }
        }
    }

    SUBCASE("all-zero row and the a=1 row") {
        CHECK(ds.labels[0] == 0);
        CHECK(ds.labels[128] == 1);  // a=1, the rest 0
    }
}

TEST_CASE("generators are pure") {
    CHECK(structurally_equal(pyramid_xor_dataset(), pyramid_xor_dataset()));
    CHECK(structurally_equal(random_xor_dataset(), random_xor_dataset()));
    CHECK(structurally_equal(hadamard_dataset(3), hadamard_dataset(3)));
}

TEST_CASE("dataset csv round trips") {
    const auto dir = temp_dir();

    SUBCASE("pyramid serialization matches the table layout") {
        const auto ds = pyramid_xor_dataset();
        const auto path = dir / "pyramid-xor.csv";
        write_dataset_csv(ds, path);
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        CHECK(line == "a,b,c,d,e,f,g,h,out");
        std::getline(in, line);
        CHECK(line == "0,0,0,0,0,0,0,0,FALSE");
        std::getline(in, line);
        CHECK(line == "0,0,0,0,0,0,0,1,TRUE");

        const auto back = read_dataset_csv(path);
        CHECK(structurally_equal(ds, back));
        CHECK(back.name == "pyramid-xor");
    }

    SUBCASE("hadamard round trip keeps the signed encoding") {
        const auto ds = hadamard_dataset(2);
        const auto path = dir / "hadamard-4.csv";
        write_dataset_csv(ds, path);
        const auto back = read_dataset_csv(path);
        CHECK(structurally_equal(ds, back));
        CHECK(back.signed_encoding());
    }
}

TEST_CASE("dataset csv parse errors carry line numbers") {
    const auto dir = temp_dir();

    SUBCASE("short row") {
        const auto path = dir / "short-row.csv";
        std::ofstream(path) << "a,b,c,d,e,f,g,h,out\n0,0,0,0,0,0,0,0,FALSE\n0,0,0,0,0,1,TRUE\n";
        try {
            read_dataset_csv(path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }

    SUBCASE("non-binary cell") {
        const auto path = dir / "bad-cell.csv";
        std::ofstream(path) << "a,b,out\n0,2,FALSE\n";
        try {
            read_dataset_csv(path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("2") != std::string::npos);
        }
    }

    SUBCASE("mixed encodings") {
        const auto path = dir / "mixed.csv";
        std::ofstream(path) << "a,b,out\n1,1,TRUE\n-1,0,FALSE\n";
        CHECK_THROWS_AS(read_dataset_csv(path), ParseError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_dataset_csv(dir / "does-not-exist.csv"), ParseError);
    }

    SUBCASE("bad header") {
        const auto path = dir / "bad-header.csv";
        std::ofstream(path) << "a,b,label\n0,1,TRUE\n";
        CHECK_THROWS_AS(read_dataset_csv(path), ParseError);
    }
}

TEST_CASE("pgm rendering") {
    const auto dir = temp_dir();

    const auto path = dir / "h2.pgm";
    render_matrix_pgm(sylvester_hadamard(1), path);
    CHECK(slurp(path) == "P2\n2 2\n255\n255 255\n255 0\n");

    const auto h4 = sylvester_hadamard(2);
    const auto path4 = dir / "h4.pgm";
    render_matrix_pgm(h4, path4);
    const std::string text = slurp(path4);
    CHECK(text.rfind("P2\n4 4\n255\n", 0) == 0);
    CHECK(h4.at(3, 3) == 1);
    CHECK(text.substr(text.size() - 12) == "255 0 0 255\n");
}
