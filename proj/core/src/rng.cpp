#include "mwc/rng.hpp"

namespace mwc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t RandomSource::bits(Stream s, std::uint64_t index) const noexcept {
    std::uint64_t h = splitmix64(seed_);
    h = splitmix64(h ^ trial_);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(s) << 56) ^ index);
    return h;
}

}  // namespace mwc
