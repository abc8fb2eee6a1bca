#pragma once

#include <cstdint>

namespace antichain {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: every draw is a pure function of
/// (seed, counter, stream), so parallel partitions see the same numbers.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    constexpr std::uint64_t bits(std::uint64_t counter, std::uint64_t stream = 0) const noexcept {
        return splitmix64(seed_ ^ splitmix64(counter ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
    }

    /// Uniform on the open interval (0, 1), 53 random bits.
    constexpr double open_unit(std::uint64_t counter, std::uint64_t stream = 0) const noexcept {
        return (static_cast<double>(bits(counter, stream) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
};

} // namespace antichain
