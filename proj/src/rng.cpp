#include "rdiff/rng.hpp"

namespace rdiff {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = a ^ (static_cast<std::uint64_t>(purpose) * 0xd6e8feb86659fd93ULL);
    std::uint64_t b = splitmix64(s);
    s = b ^ (index + 0x632be59bd9b4e019ULL);
    return splitmix64(s);
}

} // namespace rdiff
