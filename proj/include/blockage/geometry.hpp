#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace blockage {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Narrowest annulus the closed forms accept: below this width the
// (r^2 - s^2) denominators of the distance CDF and the cover probability
// are pure cancellation noise.
inline constexpr double min_annulus_width = 1e-6;

// Per-blocker penetration loss: quoted in dB at the interfaces, used as a
// linear power ratio in (0, 1] everywhere inside the math.
inline double zeta_from_db(double zeta_db) {
    if (!(zeta_db <= 0.0)) {
        throw std::domain_error("zeta_db must be <= 0 dB, got " + std::to_string(zeta_db));
    }
    return std::pow(10.0, zeta_db / 10.0);
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

// Spatial layout of one link: the receiver sits at the center of a
// communication circle of radius r with the transmitter on its edge;
// cylindrical blockers of diameter w approach no closer than s; the
// receiver itself is a cylinder of diameter w_r.
struct GeometryConfig {
    double r;    // communication circle radius [m]
    double w;    // blocker diameter [m]
    double w_r;  // receiver diameter [m]
    double s;    // nearest possible blocker distance [m]

    GeometryConfig(double r_, double w_, double w_r_, double s_)
        : r(r_), w(w_), w_r(w_r_), s(s_) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("geometry: blocker diameter w must be > 0");
        }
        if (!(w_r >= 0.0)) {
            throw std::invalid_argument("geometry: receiver diameter w_r must be >= 0");
        }
        if (!(s > 0.0)) {
            throw std::invalid_argument("geometry: nearest blocker distance s must be > 0");
        }
        if (!(s >= 0.5 * (w + w_r))) {
            throw std::invalid_argument(
                "geometry: s must be >= (w + w_r)/2 = " + std::to_string(0.5 * (w + w_r)));
        }
        if (!(r > s)) {
            throw std::invalid_argument("geometry: radius r must exceed s");
        }
        if (!(r - s >= min_annulus_width)) {
            throw std::invalid_argument("geometry: annulus width r - s below minimum separation");
        }
    }

    static double default_s(double w, double w_r) { return 0.5 * (w + w_r); }
};

// Dimensionless ratios and the support of the subtended angle.
struct DerivedGeometry {
    double k_r;      // w / 2r
    double k_s;      // w / 2s
    double eps_min;  // 2 asin(k_r)
    double eps_max;  // 2 asin(k_s)
};

inline DerivedGeometry derive(const GeometryConfig& geo) {
    const double k_r = geo.w / (2.0 * geo.r);
    const double k_s = geo.w / (2.0 * geo.s);
    return {k_r, k_s, 2.0 * std::asin(k_r), 2.0 * std::asin(k_s)};
}

// Blocker population: PPP intensity rho plus per-blocker attenuation zeta,
// with the mean in-circle blocker count rho_bar = rho * pi * r^2.
struct ModelParams {
    double rho;      // blockers per square meter
    double zeta;     // linear power ratio in (0, 1]
    double rho_bar;  // expected blocker count inside the CC

    ModelParams(double rho_, double zeta_, const GeometryConfig& geo)
        : rho(rho_), zeta(zeta_), rho_bar(rho_ * pi * geo.r * geo.r) {
        if (!(rho >= 0.0)) {
            throw std::invalid_argument("model: intensity rho must be >= 0");
        }
        if (!(zeta > 0.0 && zeta <= 1.0)) {
            throw std::invalid_argument("model: zeta must lie in (0, 1]");
        }
    }
};

struct PolarLocation {
    double d;      // radial distance [m], in [s, r]
    double omega;  // azimuth [rad], in (0, 2*pi]
};

struct CoverCount {
    std::uint64_t n;  // blockers covering the probed direction
    std::uint64_t m;  // total blockers in the CC
};

}  // namespace blockage
