#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace antilearn {

// splitmix64 generator (Steele, Lea, Flood 2014). The standard <random>
// engines are portable but the distributions on top of them are not; this
// generator plus the helpers below give identical streams on every platform,
// which the reproducibility contracts require.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Uniform in [0, n). Modulo bias is irrelevant at the n used here and a
    // plain reduction keeps the stream layout obvious.
    std::uint64_t next_below(std::uint64_t n) {
        return n == 0 ? 0 : next() % n;
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates with draws from the shared generator.
template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

// FNV-1a over explicit bytes; used to derive per-fold seeds that are stable
// across platforms and runs.
class Fnv1a64 {
public:
    Fnv1a64& feed(std::uint8_t byte) {
        hash_ = (hash_ ^ byte) * 0x100000001b3ull;
        return *this;
    }
    Fnv1a64& feed(std::uint64_t value) {
        for (int i = 0; i < 8; ++i) feed(static_cast<std::uint8_t>(value >> (8 * i)));
        return *this;
    }
    Fnv1a64& feed(std::string_view text) {
        for (char c : text) feed(static_cast<std::uint8_t>(c));
        feed(std::uint8_t{0});
        return *this;
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace antilearn
