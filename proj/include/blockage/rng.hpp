#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace blockage {

// Philox 4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). Every
// (seed, stream) pair names an independent sequence addressed purely by a
// counter, which is what makes chunked Monte Carlo reproducible no matter
// how chunks are scheduled across threads.
struct Philox4x32 {
    static constexpr std::uint32_t mul_hi = 0xD2511F53u;
    static constexpr std::uint32_t mul_lo = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl_hi = 0x9E3779B9u;
    static constexpr std::uint32_t weyl_lo = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(mul_hi) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(mul_lo) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += weyl_hi;
            key[1] += weyl_lo;
        }
        return ctr;
    }
};

// One logical stream of a keyed Philox generator. The 64-bit stream id
// occupies the upper counter words, a running block index the lower two,
// so streams never collide and each holds 2^64 blocks of four outputs.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        return lo | (static_cast<std::uint64_t>(next_u32()) << 32);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1): strictly inside, safe under log(). 52 bits, so the
    // half-ulp offset is exact and neither endpoint is reachable.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    void refill() {
        buf_ = Philox4x32::block({static_cast<std::uint32_t>(counter_),
                                  static_cast<std::uint32_t>(counter_ >> 32), stream_[0],
                                  stream_[1]},
                                 key_);
        ++counter_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

// SplitMix64 finalizer; derives decorrelated child seeds (one per sweep
// cell) from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace detail {

// Sequential CDF inversion; exact, one uniform per variate. Used for small
// means where exp(-lambda) is comfortably representable.
template <class Stream>
std::uint64_t poisson_inversion(Stream& rng, double lambda) {
    const double u = rng.uniform01();
    double p = std::exp(-lambda);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
        if (p < 1e-320) break;  // CDF saturated within rounding of 1
    }
    return k;
}

// Hormann's PTRS transformed rejection with squeeze; exact for lambda >= 10.
template <class Stream>
std::uint64_t poisson_ptrs(Stream& rng, double lambda) {
    const double slam = std::sqrt(lambda);
    const double llam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform01() - 0.5;
        const double v = rng.uniform_open01();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * llam - lambda - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace detail

// Exact Poisson sampling; neither branch truncates or approximates the law.
template <class Stream>
std::uint64_t sample_poisson(Stream& rng, double lambda) {
    if (!(lambda >= 0.0)) {
        throw std::domain_error("sample_poisson: lambda must be >= 0");
    }
    if (lambda == 0.0) return 0;
    return lambda <= 30.0 ? detail::poisson_inversion(rng, lambda)
                          : detail::poisson_ptrs(rng, lambda);
}

}  // namespace blockage
