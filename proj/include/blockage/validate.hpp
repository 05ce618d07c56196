#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "blockage/model.hpp"
#include "blockage/quadrature.hpp"
#include "blockage/rng.hpp"
#include "blockage/sim.hpp"
#include "blockage/stats.hpp"
#include "blockage/sweep.hpp"

namespace blockage::validate {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidateOptions {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = 8192;
    unsigned threads = 0;
    double zeta_db = -20.0;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// E[zeta^N] summed term by term until the Poisson tail mass drops below
// tail_bound; independent route to the closed form.
inline double attenuation_series(double zeta, double lambda, double tail_bound = 1e-12) {
    double term = std::exp(-lambda);
    double cdf = term;
    double zeta_pow = 1.0;
    double total = term;
    std::uint64_t n = 0;
    while (1.0 - cdf > tail_bound && term > 0.0) {
        ++n;
        term *= lambda / static_cast<double>(n);
        cdf += term;
        zeta_pow *= zeta;
        total += term * zeta_pow;
    }
    return total;
}

inline std::vector<GeometryConfig> reference_geometries() {
    return {
        GeometryConfig(5.0, 0.5, 0.3, 0.4),
        GeometryConfig(10.0, 0.5, 0.3, 0.4),
        GeometryConfig(20.0, 0.5, 0.3, 0.4),
        GeometryConfig(10.0, 0.5, 0.5, 0.5),
        GeometryConfig(2.0, 0.3, 0.0, 0.15),
    };
}

}  // namespace detail

// Built-in property suite: distributional checks against the closed forms,
// quadrature cross-checks, the thinning identity, and simulation-vs-theory
// containment. Statistical thresholds scale with the configured trial
// count through the measured standard errors.
inline std::vector<CheckResult> run_validation(const ValidateOptions& opts) {
    std::vector<CheckResult> results;
    const double zeta = zeta_from_db(opts.zeta_db);
    const std::uint64_t n = opts.trials;

    // radial distance law
    {
        const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
        PhiloxStream rng(derive_seed(opts.seed, 1001), 0);
        std::vector<double> samples(n);
        for (double& d : samples) d = sample_distance(rng.uniform01(), geo);
        const double dist =
            ks_distance(std::move(samples), [&](double d) { return distance_cdf(d, geo); });
        const double threshold = 1.5 * 1.36 / std::sqrt(static_cast<double>(n));
        results.push_back({"distance_cdf_ks", dist < threshold,
                           "KS=" + detail::fmt(dist) + " threshold=" + detail::fmt(threshold)});
    }

    // blocker count law, one mean per sampler branch
    {
        bool pass = true;
        std::string detail_str;
        for (const double rho : {0.01, 0.1}) {
            const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
            const ModelParams params(rho, zeta, geo);
            const sim::TrialPlan plan{n, derive_seed(opts.seed, 1002), opts.chunk_size,
                                      opts.threads};
            const auto stats = sim::run_trials(params, geo, plan, sim::CoverStatsAccumulator{});
            const auto gof = chi_square_gof(stats.blocker_histogram(), n, [&](std::uint64_t k) {
                return poisson_pmf(k, params.rho_bar);
            });
            pass = pass && gof.p_value >= 0.001;
            detail_str += "mean=" + detail::fmt(params.rho_bar) + " p=" + detail::fmt(gof.p_value) + " ";
        }
        results.push_back({"blocker_count_chi_square", pass, detail_str + "(alpha=0.001)"});
    }

    // closed-form cover probability vs numerical integration
    {
        double worst = 0.0;
        for (const GeometryConfig& geo : detail::reference_geometries()) {
            const DerivedGeometry dg = derive(geo);
            const double quad = integrate(
                [&](double eps) {
                    return cover_prob_given_angle(eps) * angle_pdf_or_zero(eps, geo);
                },
                dg.eps_min, dg.eps_max, 1e-12);
            worst = std::max(worst, std::abs(quad - cover_prob(geo)));
        }
        results.push_back({"cover_prob_quadrature", worst <= 1e-8,
                           "max |closed - quadrature| = " + detail::fmt(worst)});
    }

    // subtended-angle density integrates to one
    {
        PhiloxStream rng(derive_seed(opts.seed, 1003), 0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double w = 0.05 + 0.95 * rng.uniform01();
            const double w_r = rng.uniform01() * w;
            const double s = 0.5 * (w + w_r) * (1.0 + 3.0 * rng.uniform01());
            const double r = s + 0.5 + 49.5 * rng.uniform01();
            const GeometryConfig geo(r, w, w_r, s);
            const DerivedGeometry dg = derive(geo);
            const double mass = integrate(
                [&](double eps) { return angle_pdf_or_zero(eps, geo); }, dg.eps_min, dg.eps_max,
                1e-12);
            worst = std::max(worst, std::abs(mass - 1.0));
        }
        results.push_back({"angle_pdf_normalization", worst <= 1e-8,
                           "max |integral - 1| = " + detail::fmt(worst) + " over 10 geometries"});
    }

    // exact thinning value vs term-by-term series
    {
        double worst = 0.0;
        for (const GeometryConfig& geo : detail::reference_geometries()) {
            for (const double rho : {0.0, 0.05, 0.2, 0.5}) {
                const ModelParams params(rho, zeta, geo);
                const double lambda = params.rho_bar * cover_prob(geo);
                const double series = detail::attenuation_series(zeta, lambda);
                worst = std::max(worst,
                                 std::abs(series - expected_attenuation_exact(params, geo)));
            }
        }
        results.push_back({"attenuation_series", worst <= 1e-10,
                           "max |exact - series| = " + detail::fmt(worst)});
    }

    // second-order error bound on the closed-form approximation
    {
        analysis::SweepGrid grid;
        grid.rho_values = analysis::make_rho_grid(0.01, 0.5, 20, analysis::Spacing::log);
        grid.radii = {5.0, 10.0, 20.0};
        grid.zeta_db = opts.zeta_db;
        bool pass = true;
        double worst_ratio = 0.0;
        for (const auto& rec : analysis::approximation_error_report(grid)) {
            if (!rec.in_regime) continue;
            pass = pass && !rec.exceeds_bound;
            if (rec.bound > 0.0) worst_ratio = std::max(worst_ratio, rec.gap / rec.bound);
        }
        results.push_back({"paper_approximation_bound", pass,
                           "max gap/bound = " + detail::fmt(worst_ratio) + " (regime g(1-zeta) <= 0.05)"});
    }

    // empirical cover fraction of a lone blocker vs g
    {
        const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
        const double g = cover_prob(geo);
        PhiloxStream rng(derive_seed(opts.seed, 1004), 0);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double d = sample_distance(rng.uniform01(), geo);
            const double omega = two_pi * (1.0 - rng.uniform01());
            hits += sim::covers(d, omega, 0.0, geo) ? 1 : 0;
        }
        const double frac = static_cast<double>(hits) / static_cast<double>(n);
        const double se = std::sqrt(g * (1.0 - g) / static_cast<double>(n));
        results.push_back({"cover_fraction", std::abs(frac - g) <= 3.0 * se,
                           "empirical=" + detail::fmt(frac) + " g=" + detail::fmt(g) +
                               " tol=" + detail::fmt(3.0 * se)});
    }

    // cover counts thin to a Poisson with mean rho_bar * g
    {
        const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
        const ModelParams params(0.1, zeta, geo);
        const sim::TrialPlan plan{n, derive_seed(opts.seed, 1005), opts.chunk_size, opts.threads};
        const auto stats = sim::run_trials(params, geo, plan, sim::CoverStatsAccumulator{});
        const double target = params.rho_bar * cover_prob(geo);
        const double se = std::sqrt(stats.var_covers() / static_cast<double>(n));
        results.push_back({"thinning_mean", std::abs(stats.mean_covers() - target) <= 3.0 * se,
                           "mean covers=" + detail::fmt(stats.mean_covers()) +
                               " expected=" + detail::fmt(target) + " tol=" + detail::fmt(3.0 * se)});
    }

    // the exact expectation sits inside the simulation interval
    {
        bool pass = true;
        std::string detail_str;
        std::uint64_t cell = 0;
        for (const double r : {5.0, 10.0}) {
            for (const double rho : {0.02, 0.1}) {
                const GeometryConfig geo(r, 0.5, 0.3, 0.4);
                const ModelParams params(rho, zeta, geo);
                const sim::TrialPlan plan{n, derive_seed(opts.seed, 2000 + cell),
                                          opts.chunk_size, opts.threads};
                const auto est = sim::estimate_attenuation(params, geo, plan);
                const double exact = expected_attenuation_exact(params, geo);
                const double dev = est.std_error > 0.0
                                       ? std::abs(est.mean - exact) / est.std_error
                                       : 0.0;
                pass = pass && dev <= 3.0;
                ++cell;
            }
        }
        results.push_back({"theory_containment", pass,
                           "exact thinning value within mean +/- 3 SE on a 2x2 grid"});
    }

    // analytic Poisson-tail outage vs the empirical fraction
    {
        bool pass = true;
        double worst_dev = 0.0;
        std::uint64_t cell = 0;
        const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
        for (const double rho : {0.05, 0.2}) {
            for (const double threshold_db : {-15.0, -35.0}) {
                const ModelParams params(rho, zeta, geo);
                const double analytic = outage_probability(params, geo, threshold_db);
                const sim::TrialPlan plan{n, derive_seed(opts.seed, 3000 + cell),
                                          opts.chunk_size, opts.threads};
                const double empirical = sim::empirical_outage(params, geo, threshold_db, plan);
                const double se =
                    std::sqrt(std::max(analytic * (1.0 - analytic), 1e-12) / static_cast<double>(n));
                const double dev = std::abs(empirical - analytic) / se;
                worst_dev = std::max(worst_dev, dev);
                pass = pass && dev <= 3.0;
                ++cell;
            }
        }
        results.push_back({"outage_consistency", pass,
                           "max |empirical - analytic| = " + detail::fmt(worst_dev) +
                               " binomial SEs (limit 3)"});
    }

    return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace blockage::validate
