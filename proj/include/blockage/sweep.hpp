#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockage/model.hpp"
#include "blockage/sim.hpp"

namespace blockage::analysis {

enum class Spacing { linear, log };

// Ordered grid of rho values with exact endpoints.
inline std::vector<double> make_rho_grid(double min, double max, std::size_t steps,
                                         Spacing spacing) {
    if (steps < 1) throw std::invalid_argument("rho grid: steps must be >= 1");
    if (!(min >= 0.0)) throw std::invalid_argument("rho grid: rho must be >= 0");
    if (!(min <= max)) throw std::invalid_argument("rho grid: min must not exceed max");
    if (spacing == Spacing::log && !(min > 0.0)) {
        throw std::invalid_argument("rho grid: log spacing requires rho min > 0");
    }
    std::vector<double> grid(steps);
    grid.front() = min;
    if (steps == 1) return grid;
    grid.back() = max;
    for (std::size_t i = 1; i + 1 < steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        grid[i] = spacing == Spacing::log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                          : min + t * (max - min);
    }
    return grid;
}

struct SweepGrid {
    std::vector<double> rho_values;
    std::vector<double> radii;
    double w = 0.5;
    double w_r = 0.3;
    double s = 0.4;
    double zeta_db = -20.0;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
};

struct SweepRecord {
    double rho;
    double r;
    double theory_paper;
    double theory_exact;
    double sim_mean;
    double sim_std_error;
    double sim_ci95_low;
    double sim_ci95_high;
    double abs_err;  // |theory_paper - sim_mean|
    double rel_err;  // abs_err / sim_mean
    bool within_ci;
    std::uint64_t trials;
    std::uint64_t seed;  // master sweep seed
};

// Near-deterministic cells have std_error ~ 0; an absolute floor keeps
// them from failing containment on rounding dust.
inline constexpr double default_ci_abs_floor = 1e-4;

// One record per (rho, r) cell in row-major order (r outer, rho inner).
// Cell i draws from seed derive_seed(grid.seed, i), so the output is a
// pure function of (grid, chunk_size).
inline std::vector<SweepRecord> run_sweep(const SweepGrid& grid, std::uint64_t chunk_size,
                                          unsigned threads = 0,
                                          double ci_abs_floor = default_ci_abs_floor,
                                          std::uint64_t blocker_cap = sim::default_blocker_cap) {
    if (grid.rho_values.empty() || grid.radii.empty()) {
        throw std::invalid_argument("sweep: rho and radius lists must be nonempty");
    }
    const double zeta = zeta_from_db(grid.zeta_db);
    std::vector<SweepRecord> records;
    records.reserve(grid.rho_values.size() * grid.radii.size());
    std::uint64_t cell = 0;
    for (const double r : grid.radii) {
        for (const double rho : grid.rho_values) {
            try {
                const GeometryConfig geo(r, grid.w, grid.w_r, grid.s);
                const ModelParams params(rho, zeta, geo);
                const double paper = expected_attenuation_paper(params, geo);
                const double exact = expected_attenuation_exact(params, geo);
                const sim::TrialPlan plan{grid.trials, derive_seed(grid.seed, cell), chunk_size,
                                          threads, blocker_cap};
                const sim::AttenuationEstimate est = sim::estimate_attenuation(params, geo, plan);
                const double abs_err = std::abs(paper - est.mean);
                const bool within =
                    (est.ci95_low <= paper && paper <= est.ci95_high) || abs_err <= ci_abs_floor;
                records.push_back({rho, r, paper, exact, est.mean, est.std_error, est.ci95_low,
                                   est.ci95_high, abs_err, abs_err / est.mean, within, grid.trials,
                                   grid.seed});
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep cell (rho=" + std::to_string(rho) +
                                         ", r=" + std::to_string(r) + "): " + e.what());
            }
            ++cell;
        }
    }
    return records;
}

struct ApproxErrorRecord {
    double rho;
    double r;
    double gap;    // |theory_paper - theory_exact|
    double bound;  // rho_bar g^2 (1 - zeta)^2 / 2
    bool in_regime;      // g (1 - zeta) <= 0.05, where the bound is meaningful
    bool exceeds_bound;  // flagged, never an error
};

// Per-cell gap between the closed form and the exact thinning value,
// against the second-order bound on the Poisson-limit + Taylor steps.
inline std::vector<ApproxErrorRecord> approximation_error_report(const SweepGrid& grid) {
    if (grid.rho_values.empty() || grid.radii.empty()) {
        throw std::invalid_argument("report: rho and radius lists must be nonempty");
    }
    const double zeta = zeta_from_db(grid.zeta_db);
    std::vector<ApproxErrorRecord> records;
    records.reserve(grid.rho_values.size() * grid.radii.size());
    for (const double r : grid.radii) {
        for (const double rho : grid.rho_values) {
            const GeometryConfig geo(r, grid.w, grid.w_r, grid.s);
            const ModelParams params(rho, zeta, geo);
            const double g = cover_prob(geo);
            const double gap = std::abs(expected_attenuation_paper(params, geo) -
                                        expected_attenuation_exact(params, geo));
            const double bound =
                0.5 * params.rho_bar * g * g * (1.0 - zeta) * (1.0 - zeta);
            const bool in_regime = g * (1.0 - zeta) <= 0.05;
            records.push_back({rho, r, gap, bound, in_regime, gap > bound});
        }
    }
    return records;
}

}  // namespace blockage::analysis
