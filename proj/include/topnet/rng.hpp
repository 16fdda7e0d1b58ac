#ifndef TOPNET_RNG_HPP
#define TOPNET_RNG_HPP

#include <cstdint>

namespace topnet {

/**
 * Deterministic 64-bit generator (splitmix64).
 *
 * One master seed drives every experiment; independent streams are derived
 * with derive_stream(master, index) so sharded sampling stays reproducible
 * regardless of evaluation order.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform double in [0, 1), 53 mantissa bits. */
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /** Uniform double in [lo, hi). */
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/** Derive the seed of sub-stream `index` from a master seed. */
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    SplitMix64 mix(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return mix.next();
}

}  // namespace topnet

#endif  // TOPNET_RNG_HPP
