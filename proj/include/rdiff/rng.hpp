#pragma once

#include <cstdint>
#include <random>

namespace rdiff {

enum class StreamPurpose : std::uint64_t {
    Data = 1,
    Topology = 2,
    Run = 3,
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed for the stream (purpose, index) under `master`. Streams for different
// purposes or agents never share state, so drawing from one does not shift
// another.
std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t index);

class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}
    RngStream(std::uint64_t master, StreamPurpose purpose, std::uint64_t index)
        : eng_(derive_seed(master, purpose, index)) {}

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(eng_);
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace rdiff
