#include "antilearn/folds.hpp"

#include <numeric>
#include <stdexcept>

#include "antilearn/rng.hpp"

namespace antilearn {

std::vector<std::vector<std::size_t>> FoldPlan::folds() const {
    std::vector<std::vector<std::size_t>> out(fold_count);
    for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(i);
    return out;
}

FoldPlan make_folds(std::size_t sample_count, std::size_t fold_count,
                    const std::vector<int>& labels, std::uint64_t seed, bool stratified) {
    if (fold_count < 2 || fold_count > sample_count)
        throw std::out_of_range("fold count must be in [2, " + std::to_string(sample_count) +
                                "], got " + std::to_string(fold_count));
    if (labels.size() != sample_count)
        throw std::invalid_argument("got " + std::to_string(labels.size()) + " labels for " +
                                    std::to_string(sample_count) + " samples");

    FoldPlan plan;
    plan.fold_count = fold_count;
    plan.seed = seed;
    plan.stratified = stratified;
    plan.assignment.resize(sample_count);

    // Leave-one-out is canonical: fold i holds sample i, whatever the seed or
    // stratification flag, so every LOOCV run scores the same partition.
    if (fold_count == sample_count) {
        std::iota(plan.assignment.begin(), plan.assignment.end(), std::size_t{0});
        return plan;
    }

    SplitMix64 rng(seed);
    std::size_t next_fold = 0;
    auto deal = [&](std::vector<std::size_t>& indices) {
        shuffle(indices, rng);
        for (std::size_t idx : indices) {
            plan.assignment[idx] = next_fold;
            next_fold = (next_fold + 1) % fold_count;
        }
    };

    if (stratified) {
        // Deal class by class but keep one running fold cursor, so both the
        // per-class and the total fold sizes stay within one of each other.
        for (int cls = 0; cls < 2; ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < sample_count; ++i)
                if ((labels[i] == 1 ? 1 : 0) == cls) members.push_back(i);
            deal(members);
        }
    } else {
        std::vector<std::size_t> all(sample_count);
        std::iota(all.begin(), all.end(), std::size_t{0});
        deal(all);
    }
    return plan;
}

}  // namespace antilearn
