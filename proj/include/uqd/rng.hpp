#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace uqd {

/// SplitMix64 finalizer. Used both to seed streams and to fold stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a sequence of integers into a single 64-bit stream id.
/// Order matters: {1, 2} and {2, 1} give different ids.
constexpr std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) noexcept
{
    std::uint64_t h = 0x6A09E667F3BCC909ULL;
    for (auto p : parts)
        h = splitmix64(h ^ splitmix64(p));
    return h;
}

/// Domain tags keeping the different stream families disjoint.
namespace stream_tag {
    inline constexpr std::uint64_t genesis = 0x01;
    inline constexpr std::uint64_t select = 0x02;
    inline constexpr std::uint64_t vary = 0x03;
    inline constexpr std::uint64_t evaluate = 0x04;
    inline constexpr std::uint64_t reevaluate = 0x05;
    inline constexpr std::uint64_t oracle = 0x06;
    inline constexpr std::uint64_t replication = 0x07;
} // namespace stream_tag

/// Deterministic pseudo-random stream (xoshiro256**) identified by (master_seed, stream_id).
///
/// Every sampler here is written against this type only; no std::*_distribution is used,
/// so sequences are identical across standard library implementations.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
    {
        std::uint64_t s = splitmix64(master_seed) ^ splitmix64(stream_id ^ 0xD1B54A32D192ED03ULL);
        for (auto& w : _state) {
            s += 0x9E3779B97F4A7C15ULL;
            w = splitmix64(s);
        }
    }

    std::uint64_t next_u64() noexcept
    {
        const std::uint64_t result = rotl(_state[1] * 5, 7) * 9;
        const std::uint64_t t = _state[1] << 17;
        _state[2] ^= _state[0];
        _state[3] ^= _state[1];
        _state[1] ^= _state[2];
        _state[0] ^= _state[3];
        _state[2] ^= t;
        _state[3] = rotl(_state[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Lemire's multiply-shift with rejection; n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) noexcept
    {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Standard normal draw, Marsaglia polar method.
    double normal() noexcept
    {
        if (_has_spare) {
            _has_spare = false;
            return _spare;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        _spare = v * f;
        _has_spare = true;
        return u * f;
    }

    double normal(double mean, double sigma) noexcept { return mean + sigma * normal(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::uint64_t _state[4]{};
    double _spare = 0.0;
    bool _has_spare = false;
};

} // namespace uqd
