#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace antilearn {

// Failure while reading a structured text file. `line` is 1-based; 0 means
// the file could not be opened at all.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Named sample matrix with binary class labels. Feature values are stored as
// doubles so {0,1} and {-1,+1} datasets flow through the same pipeline, but
// each dataset uses one encoding uniformly.
struct BinaryDataset {
    std::string name;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> samples;  // size() x dim()
    std::vector<int> labels;                   // 0 or 1 per sample

    std::size_t size() const noexcept { return samples.size(); }
    std::size_t dim() const noexcept { return feature_names.size(); }

    std::array<std::size_t, 2> class_counts() const;

    // True for {-1,+1}-encoded datasets (any negative feature value present).
    bool signed_encoding() const;
};

// Equality of feature names, samples and labels. The name is deliberately
// excluded: it is not serialized, so CSV round trips compare with this.
bool structurally_equal(const BinaryDataset& a, const BinaryDataset& b);

// CSV layout: header of feature names plus a final "out" column. Labels are
// written TRUE/FALSE for {0,1} datasets and 1/-1 for signed ones.
void write_dataset_csv(const BinaryDataset& ds, const std::filesystem::path& path);

// Inverse of write_dataset_csv; the dataset name is taken from the file stem.
// Throws ParseError (with the offending line) on malformed input.
BinaryDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace antilearn
