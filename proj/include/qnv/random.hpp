#pragma once

#include <cstdint>
#include <limits>

namespace qnv {

inline std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna); satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t key) noexcept {
        std::uint64_t x = key;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            w = splitmix64_mix(x);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1]; never returns 0 so log(u) is finite.
    double uniform_open0() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

/// Stream domains keep estimators that share a seed statistically independent.
enum class StreamSalt : std::uint64_t {
    BrownianEngine = 1,
    EulerOracle = 2,
    GbmDual = 3,
    Test = 99,
};

/// Generator for path `index` of a run; reproducible in isolation.
inline Xoshiro256pp path_stream(std::uint64_t seed, StreamSalt salt, std::uint64_t index) noexcept {
    const std::uint64_t run_key =
        splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(salt) + 1));
    return Xoshiro256pp(splitmix64_mix(run_key ^ splitmix64_mix(index + 0x632be59bd9b4e019ULL)));
}

} // namespace qnv
