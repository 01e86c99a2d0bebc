#pragma once

#include <cstdint>
#include <span>

namespace mwc {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum class Stream : std::uint32_t {
    Select = 0,       // mixture entry choice
    Thresholds = 1,   // theta draws
    Permutation = 2,  // sigma keys
    Clocks = 3,       // exponential clocks
    Aux = 4,          // instance generation and other callers
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stateless counter-based generator: every draw is a hash of
// (seed, trial, stream, index), so results do not depend on evaluation order
// or thread count. Per-terminal draws may be redirected through index_map
// (terminal t reads index index_map[t]).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = kDefaultSeed, std::uint64_t trial = 0) noexcept
        : seed_(seed), trial_(trial) {}

    RandomSource split(std::uint64_t trial) const noexcept {
        RandomSource r(seed_, trial);
        r.index_map_ = index_map_;
        return r;
    }
    RandomSource with_index_map(std::span<const int> map) const noexcept {
        RandomSource r = *this;
        r.index_map_ = map;
        return r;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t trial() const noexcept { return trial_; }

    std::uint64_t bits(Stream s, std::uint64_t index) const noexcept;
    // Uniform in [0, 1) with 53 random bits.
    double uniform(Stream s, std::uint64_t index) const noexcept {
        return static_cast<double>(bits(s, index) >> 11) * 0x1.0p-53;
    }
    // Per-terminal draw honoring the index map.
    double terminal_uniform(Stream s, int terminal) const noexcept {
        const int idx = index_map_.empty() ? terminal : index_map_[static_cast<std::size_t>(terminal)];
        return uniform(s, static_cast<std::uint64_t>(idx));
    }

private:
    std::uint64_t seed_;
    std::uint64_t trial_;
    std::span<const int> index_map_;
};

}  // namespace mwc
