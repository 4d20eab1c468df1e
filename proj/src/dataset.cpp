#include "antilearn/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace antilearn {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int format_binary_value(double v, const char* what) {
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    if (v == -1.0) return -1;
    throw std::invalid_argument(std::string(what) + " value " + std::to_string(v) +
                                " is not in {-1,0,1}");
}

}  // namespace

std::array<std::size_t, 2> BinaryDataset::class_counts() const {
    std::array<std::size_t, 2> counts{0, 0};
    for (int label : labels) counts[label == 1 ? 1 : 0]++;
    return counts;
}

bool BinaryDataset::signed_encoding() const {
    for (const auto& row : samples)
        for (double v : row)
            if (v < 0.0) return true;
    return false;
}

bool structurally_equal(const BinaryDataset& a, const BinaryDataset& b) {
    return a.feature_names == b.feature_names && a.samples == b.samples && a.labels == b.labels;
}

void write_dataset_csv(const BinaryDataset& ds, const std::filesystem::path& path) {
    if (ds.labels.size() != ds.size())
        throw std::invalid_argument("dataset has " + std::to_string(ds.labels.size()) +
                                    " labels for " + std::to_string(ds.size()) + " samples");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

    const bool is_signed = ds.signed_encoding();
    for (std::size_t j = 0; j < ds.feature_names.size(); ++j) out << ds.feature_names[j] << ',';
    out << "out\n";

    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& row = ds.samples[i];
        if (row.size() != ds.dim())
            throw std::invalid_argument("row " + std::to_string(i) + " has width " +
                                        std::to_string(row.size()));
        for (double v : row) out << format_binary_value(v, "feature") << ',';
        if (is_signed)
            out << (ds.labels[i] == 1 ? "1" : "-1");
        else
            out << (ds.labels[i] == 1 ? "TRUE" : "FALSE");
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

BinaryDataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);

    BinaryDataset ds;
    ds.name = path.stem().string();

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 1);
    auto header = split_csv_line(line);
    if (header.size() < 2 || header.back() != "out")
        throw ParseError("header must list feature names followed by \"out\"", 1);
    ds.feature_names.assign(header.begin(), header.end() - 1);

    const std::size_t width = header.size();
    std::size_t first_zero_line = 0;
    std::size_t first_negative_line = 0;
    std::size_t first_bool_label_line = 0;
    std::size_t first_signed_label_line = 0;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != width)
            throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(width),
                             line_no);

        std::vector<double> row;
        row.reserve(width - 1);
        for (std::size_t j = 0; j + 1 < width; ++j) {
            const std::string& cell = fields[j];
            double v;
            if (cell == "0")
                v = 0.0;
            else if (cell == "1" || cell == "+1")
                v = 1.0;
            else if (cell == "-1")
                v = -1.0;
            else
                throw ParseError("non-binary cell \"" + cell + "\"", line_no);
            if (v == 0.0 && first_zero_line == 0) first_zero_line = line_no;
            if (v < 0.0 && first_negative_line == 0) first_negative_line = line_no;
            row.push_back(v);
        }

        const std::string& label = fields.back();
        int y;
        if (label == "TRUE" || label == "FALSE") {
            y = label == "TRUE" ? 1 : 0;
            if (first_bool_label_line == 0) first_bool_label_line = line_no;
        } else if (label == "1" || label == "+1" || label == "-1") {
            y = label == "-1" ? 0 : 1;
            if (label == "-1" && first_signed_label_line == 0) first_signed_label_line = line_no;
        } else {
            throw ParseError("label \"" + label + "\" is not TRUE/FALSE or +-1", line_no);
        }

        ds.samples.push_back(std::move(row));
        ds.labels.push_back(y);
    }

    // One encoding per dataset: {0,1} with TRUE/FALSE labels or {-1,+1} with
    // signed labels. Mixes are malformed; report the line that sealed it.
    if (first_zero_line && first_negative_line)
        throw ParseError("dataset mixes 0/1 and -1/+1 feature values",
                         std::max(first_zero_line, first_negative_line));
    if (first_bool_label_line && first_signed_label_line)
        throw ParseError("dataset mixes TRUE/FALSE and signed labels",
                         std::max(first_bool_label_line, first_signed_label_line));
    if (first_negative_line && first_bool_label_line)
        throw ParseError("signed feature values with TRUE/FALSE labels",
                         std::max(first_negative_line, first_bool_label_line));
    if (first_zero_line && first_signed_label_line)
        throw ParseError("0/1 feature values with signed labels",
                         std::max(first_zero_line, first_signed_label_line));

    return ds;
}

}  // namespace antilearn
