#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace blockage {

inline double log_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_choose(std::uint64_t m, std::uint64_t n) {
    return log_factorial(m) - log_factorial(n) - log_factorial(m - n);
}

// log P{N = k} for N ~ Poisson(lambda). Log space keeps lambda^k / k!
// finite for means up to ~1e6 and beyond.
inline double poisson_log_pmf(std::uint64_t k, double lambda) {
    if (!(lambda >= 0.0)) {
        throw std::domain_error("poisson_log_pmf: lambda must be >= 0");
    }
    if (lambda == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(k) * std::log(lambda) - lambda - log_factorial(k);
}

inline double poisson_pmf(std::uint64_t k, double lambda) {
    return std::exp(poisson_log_pmf(k, lambda));
}

namespace detail {

// Lower regularized gamma by power series; converges fast for x < a+1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma by modified-Lentz continued fraction; for x >= a+1.
inline double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("gamma_p: requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_cf(a, x);
}

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("gamma_q: requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

// Survival function of the chi-square distribution with dof degrees of freedom.
inline double chi_square_sf(double stat, double dof) {
    return gamma_q(0.5 * dof, 0.5 * stat);
}

// P{N >= k} for N ~ Poisson(lambda). Sums whichever side of the CDF has
// fewer terms; the upper sum runs in linear space seeded by one log-space
// PMF evaluation, so it cannot overflow and never cancels.
inline double poisson_tail(std::uint64_t k, double lambda) {
    if (!(lambda >= 0.0)) {
        throw std::domain_error("poisson_tail: lambda must be >= 0");
    }
    if (k == 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    if (static_cast<double>(k) > lambda) {
        double term = poisson_pmf(k, lambda);
        double total = 0.0;
        for (std::uint64_t n = k;; ++n) {
            total += term;
            term *= lambda / static_cast<double>(n + 1);
            if (term < total * 1e-18 + 5e-324) break;
        }
        return total;
    }
    double cum = 0.0;
    for (std::uint64_t n = 0; n < k; ++n) {
        cum += poisson_pmf(n, lambda);
    }
    return cum < 1.0 ? 1.0 - cum : 0.0;
}

}  // namespace blockage
