#pragma once

#include <cstdint>
#include <vector>

namespace antilearn {

// Deterministic partition of sample indices into folds: every fold nonempty,
// sizes differing by at most one, and (when stratified) per-fold class counts
// differing by at most one per class.
struct FoldPlan {
    std::size_t fold_count = 0;
    std::vector<std::size_t> assignment;  // sample index -> fold index
    std::uint64_t seed = 0;
    bool stratified = true;

    std::size_t sample_count() const noexcept { return assignment.size(); }

    // fold index -> ascending sample indices
    std::vector<std::vector<std::size_t>> folds() const;
};

// Seeded-shuffle round-robin assignment, dealt within each class when
// stratified. fold_count == sample_count canonicalizes to fold i = sample i,
// so leave-one-out plans are identical for every seed and flag. Throws
// std::out_of_range unless 2 <= fold_count <= sample_count.
FoldPlan make_folds(std::size_t sample_count, std::size_t fold_count,
                    const std::vector<int>& labels, std::uint64_t seed,
                    bool stratified = true);

}  // namespace antilearn
