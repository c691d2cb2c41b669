#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "rissk/math.hpp"

namespace rissk {

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// Reproducible random stream: xoshiro256++ keyed by (seed, stream_id)
// through a splitmix64 expansion. Identical (seed, stream) pairs replay
// bit-identical sequences; distinct stream ids give independent streams,
// one per Monte Carlo shard. Single-owner: move between threads, never
// share mutably.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {
        uint64_t sm = seed ^ (0x6A09E667F3BCC909ULL + stream_id * 0x9E3779B97F4A7C15ULL);
        for (auto& w : s_) w = detail::splitmix64(sm);
        s_[0] |= 1;  // forbid the all-zero state
        has_cached_ = false;
        cached_ = 0.0;
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_; }

    uint64_t next_u64() {
        const uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via Box-Muller (pairs cached). Explicit transform so
    // streams stay bit-identical across standard libraries.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // CN(0, var): independent real/imag parts N(0, var/2).
    std::complex<double> next_cnormal(double var = 1.0) {
        const double s = std::sqrt(var / 2.0);
        const double re = next_normal();
        const double im = next_normal();
        return {s * re, s * im};
    }

    uint32_t next_below(uint32_t n) {  // uniform in [0, n)
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    uint64_t s_[4];
    uint64_t seed_, stream_;
    bool has_cached_;
    double cached_;
};

}  // namespace rissk
