#pragma once

// Test-side oracles, deliberately independent of the library numerics:
// composite Simpson with panel doubling instead of adaptive recursion,
// long-double brute-force series sums.

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracles {

// Composite Simpson, panels doubled until two refinements agree to tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
    const auto simpson = [&](std::uint64_t panels) {
        const double h = (b - a) / static_cast<double>(panels);
        long double acc = f(a) + f(b);
        for (std::uint64_t i = 1; i < panels; ++i) {
            acc += (i % 2 ? 4.0L : 2.0L) * f(a + h * static_cast<double>(i));
        }
        return static_cast<double>(acc * h / 3.0L);
    };
    double prev = simpson(64);
    for (std::uint64_t n = 128; n <= (1ull << 24); n *= 2) {
        const double cur = simpson(n);
        if (std::abs(cur - prev) < tol) return cur + (cur - prev) / 15.0;
        prev = cur;
    }
    return prev;
}

// E[zeta^N] for N ~ Poisson(lambda), truncated once the remaining Poisson
// tail mass drops below tail_eps.
inline double attenuation_series(double zeta, double lambda, double tail_eps = 1e-12) {
    long double term = std::exp(static_cast<long double>(-lambda));
    long double cdf = term;
    long double zeta_pow = 1.0L;
    long double total = term;
    std::uint64_t n = 0;
    while ((1.0L - cdf) > tail_eps && term > 0.0L) {
        ++n;
        term *= lambda / static_cast<long double>(n);
        cdf += term;
        zeta_pow *= zeta;
        total += term * zeta_pow;
    }
    return static_cast<double>(total);
}

// P{N >= k} by direct long-double summation of the lower CDF.
inline double poisson_tail_brute(std::uint64_t k, double lambda) {
    long double term = std::exp(static_cast<long double>(-lambda));
    long double below = 0.0L;
    for (std::uint64_t n = 0; n < k; ++n) {
        below += term;
        term *= lambda / static_cast<long double>(n + 1);
    }
    return static_cast<double>(1.0L - below);
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
