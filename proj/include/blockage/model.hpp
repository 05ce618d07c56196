#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "blockage/geometry.hpp"
#include "blockage/special.hpp"

namespace blockage {

// F_{D|R}(d | r) = (d^2 - s^2) / (r^2 - s^2), the radial CDF of a
// homogeneous PPP point conditioned to the annulus [s, r].
inline double distance_cdf(double d, const GeometryConfig& geo) {
    if (!(d >= geo.s && d <= geo.r)) {
        throw std::domain_error("distance_cdf: d outside [s, r]");
    }
    return (d * d - geo.s * geo.s) / (geo.r * geo.r - geo.s * geo.s);
}

// Inverse of distance_cdf: maps u in [0, 1] to sqrt(s^2 + u (r^2 - s^2)).
inline double sample_distance(double u, const GeometryConfig& geo) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("sample_distance: u outside [0, 1]");
    }
    return std::sqrt(geo.s * geo.s + u * (geo.r * geo.r - geo.s * geo.s));
}

// P{M = m}: Poisson count of blockers inside the CC with mean rho_bar.
inline double blocker_count_pmf(std::uint64_t m, const ModelParams& params) {
    return poisson_pmf(m, params.rho_bar);
}

// Angle a blocker at distance d subtends at the receiver: 2 asin(w / 2d).
inline double subtended_angle(double d, const GeometryConfig& geo) {
    if (!(d >= geo.s && d <= geo.r)) {
        throw std::domain_error("subtended_angle: d outside [s, r]");
    }
    return 2.0 * std::asin(geo.w / (2.0 * d));
}

// Density of the subtended angle on [eps_min, eps_max]:
//   f(eps) = w^2 / (4 (r^2 - s^2)) * cos(eps/2) / sin^3(eps/2).
// Returns 0 outside the support so integrators can probe freely.
inline double angle_pdf_or_zero(double eps, const GeometryConfig& geo) {
    const DerivedGeometry dg = derive(geo);
    if (!(eps >= dg.eps_min && eps <= dg.eps_max)) return 0.0;
    const double half = 0.5 * eps;
    const double sh = std::sin(half);
    return geo.w * geo.w / (4.0 * (geo.r * geo.r - geo.s * geo.s)) * std::cos(half) / (sh * sh * sh);
}

// Checked variant: out-of-support arguments are caller bugs.
inline double angle_pdf(double eps, const GeometryConfig& geo) {
    const DerivedGeometry dg = derive(geo);
    if (!(eps >= dg.eps_min && eps <= dg.eps_max)) {
        throw std::domain_error("angle_pdf: eps outside [eps_min, eps_max]");
    }
    return angle_pdf_or_zero(eps, geo);
}

// Probability that a single blocker subtending eps covers a fixed arrival
// direction: eps / 2*pi, the azimuth being uniform.
inline double cover_prob_given_angle(double eps) {
    if (!(eps >= 0.0 && eps <= two_pi)) {
        throw std::domain_error("cover_prob_given_angle: eps outside [0, 2*pi]");
    }
    return eps / two_pi;
}

// Marginal probability g(r) that one uniformly placed blocker covers an
// arbitrary direction:
//   g = w^2 / (8 pi (r^2 - s^2)) * [ T(k_r) - T(k_s) ],
//   T(k) = 2 asin(k)/k^2 + 2 sqrt(1/k^2 - 1).
inline double cover_prob(const GeometryConfig& geo) {
    const DerivedGeometry dg = derive(geo);
    const auto term = [](double k) {
        return 2.0 * std::asin(k) / (k * k) + 2.0 * std::sqrt(1.0 / (k * k) - 1.0);
    };
    return geo.w * geo.w / (8.0 * pi * (geo.r * geo.r - geo.s * geo.s)) *
           (term(dg.k_r) - term(dg.k_s));
}

// Binomial cover-count law P{N = n | M = m} with an explicit per-blocker
// cover probability.
inline double cover_count_pmf(std::uint64_t n, std::uint64_t m, double g) {
    if (n > m) {
        throw std::domain_error("cover_count_pmf: n must not exceed m");
    }
    if (!(g >= 0.0 && g <= 1.0)) {
        throw std::domain_error("cover_count_pmf: g outside [0, 1]");
    }
    if (g == 0.0) return n == 0 ? 1.0 : 0.0;
    if (g == 1.0) return n == m ? 1.0 : 0.0;
    const double logp = log_choose(m, n) + static_cast<double>(n) * std::log(g) +
                        static_cast<double>(m - n) * std::log1p(-g);
    return std::exp(logp);
}

inline double cover_count_pmf(std::uint64_t n, std::uint64_t m, const GeometryConfig& geo) {
    return cover_count_pmf(n, m, cover_prob(geo));
}

// Closed-form expected attenuation of the arriving signal:
//   exp(-rho_bar (1 - exp(-g (1 - zeta)))).
inline double expected_attenuation_paper(const ModelParams& params, const GeometryConfig& geo) {
    const double x = cover_prob(geo) * (1.0 - params.zeta);
    return std::exp(params.rho_bar * std::expm1(-x));
}

// Exact E[zeta^N] for the thinned cover count N ~ Poisson(rho_bar g):
//   exp(-rho_bar g (1 - zeta)).
// Reference value for how much the closed form above approximates.
inline double expected_attenuation_exact(const ModelParams& params, const GeometryConfig& geo) {
    return std::exp(-params.rho_bar * cover_prob(geo) * (1.0 - params.zeta));
}

inline constexpr std::uint64_t outage_never = std::numeric_limits<std::uint64_t>::max();

// Smallest cover count n whose accumulated loss n * 10 log10(zeta) falls
// strictly below threshold_db. The analytic tail and the empirical counter
// share this rule, so boundary ties (threshold an exact multiple of the
// per-cover loss) resolve identically on both paths.
inline std::uint64_t outage_min_covers(double zeta, double threshold_db) {
    const double per_cover_db = to_db(zeta);  // <= 0
    if (per_cover_db == 0.0) return outage_never;
    const double q = threshold_db / per_cover_db;  // >= 0
    if (q >= 9e18) return outage_never;
    std::uint64_t k = q > 1.0 ? static_cast<std::uint64_t>(q) - 1 : 0;
    while (!(static_cast<double>(k) * per_cover_db < threshold_db)) ++k;
    return k;
}

// P{accumulated blockage loss in dB < threshold_db} under N ~ Poisson(rho_bar g).
inline double outage_probability(const ModelParams& params, const GeometryConfig& geo,
                                 double threshold_db) {
    if (!(threshold_db <= 0.0)) {
        throw std::domain_error("outage_probability: threshold_db must be <= 0");
    }
    const std::uint64_t k = outage_min_covers(params.zeta, threshold_db);
    if (k == outage_never) return 0.0;  // zeta == 1: the loss never accumulates
    return poisson_tail(k, params.rho_bar * cover_prob(geo));
}

}  // namespace blockage
