#pragma once

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockage/report.hpp"
#include "blockage/sweep.hpp"
#include "blockage/validate.hpp"

namespace blockage::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HelpRequested {
    std::string text;
};

enum class Mode { eval, sweep, outage, validate };

struct RunConfig {
    Mode mode = Mode::eval;
    double w = 0.5;
    double w_r = 0.3;
    double s = 0.4;  // defaults to (w + w_r)/2 when not given
    double zeta_db = -20.0;
    std::vector<double> rho_values;      // eval: exactly one; outage: one or more
    double rho_min = 0.01;
    double rho_max = 0.5;
    std::size_t rho_steps = 20;
    analysis::Spacing rho_spacing = analysis::Spacing::linear;
    std::vector<double> radii;
    std::vector<double> thresholds_db;   // outage mode
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = 8192;
    unsigned threads = 0;
    std::uint64_t blocker_cap = sim::default_blocker_cap;
    std::string out = "-";
    io::Format format = io::Format::csv;
};

namespace detail {

inline void post_validate(RunConfig& cfg, bool s_given) {
    if (!s_given) cfg.s = GeometryConfig::default_s(cfg.w, cfg.w_r);
    try {
        zeta_from_db(cfg.zeta_db);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--zeta-db: ") + e.what());
    }
    for (const double rho : cfg.rho_values) {
        if (!(rho >= 0.0)) throw UsageError("--rho: must be >= 0");
    }
    for (const double r : cfg.radii) {
        try {
            GeometryConfig check(r, cfg.w, cfg.w_r, cfg.s);
        } catch (const std::exception& e) {
            throw UsageError("--radius " + io::format_double(r) + ": " + e.what());
        }
    }
    if (cfg.mode == Mode::sweep) {
        try {
            analysis::make_rho_grid(cfg.rho_min, cfg.rho_max, cfg.rho_steps, cfg.rho_spacing);
        } catch (const std::exception& e) {
            throw UsageError(std::string("--rho-min/--rho-max/--rho-steps: ") + e.what());
        }
    }
    if (cfg.mode == Mode::eval && (cfg.rho_values.size() != 1 || cfg.radii.size() != 1)) {
        throw UsageError("eval takes exactly one --rho and one --radius");
    }
    if (cfg.mode == Mode::outage) {
        for (const double t : cfg.thresholds_db) {
            if (!(t <= 0.0)) throw UsageError("--threshold-db: must be <= 0 dB");
        }
    }
}

}  // namespace detail

inline RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Stochastic blockage model for open-area mm-wave D2D links"};
    app.name("blockage");
    app.require_subcommand(1);

    std::vector<CLI::Option*> s_options;

    const auto add_geometry = [&](CLI::App* sub) {
        sub->add_option("--w", cfg.w, "blocker diameter [m]")->capture_default_str();
        sub->add_option("--wr", cfg.w_r, "receiver diameter [m]")->capture_default_str();
        s_options.push_back(
            sub->add_option("--s", cfg.s, "nearest blocker distance [m]; default (w+wr)/2"));
        sub->add_option("--zeta-db", cfg.zeta_db, "per-blocker attenuation [dB], <= 0")
            ->capture_default_str();
    };
    const auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials per cell")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
        sub->add_option("--chunk-size", cfg.chunk_size, "trials per RNG chunk")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", cfg.threads, "worker threads; 0 = all cores")
            ->capture_default_str();
        sub->add_option("--blocker-cap", cfg.blocker_cap, "max blockers per sampled field")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output path; '-' for stdout")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, io::Format>{{"csv", io::Format::csv},
                                                  {"json", io::Format::json}},
                CLI::ignore_case))
            ->capture_default_str();
    };

    CLI::App* eval = app.add_subcommand("eval", "single-point theory and simulation");
    eval->add_option("--rho", cfg.rho_values, "blocker intensity [1/m^2]")
        ->required()
        ->expected(1);
    eval->add_option("--radius", cfg.radii, "communication circle radius [m]")
        ->required()
        ->expected(1);
    add_geometry(eval);
    add_sim(eval);
    add_output(eval);

    CLI::App* sweep = app.add_subcommand("sweep", "theory-vs-simulation sweep over rho and r");
    sweep->add_option("--rho-min", cfg.rho_min, "smallest intensity")->capture_default_str();
    sweep->add_option("--rho-max", cfg.rho_max, "largest intensity")->capture_default_str();
    sweep->add_option("--rho-steps", cfg.rho_steps, "grid points")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--rho-spacing", cfg.rho_spacing, "grid spacing")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, analysis::Spacing>{{"linear", analysis::Spacing::linear},
                                                     {"log", analysis::Spacing::log}},
            CLI::ignore_case))
        ->capture_default_str();
    sweep->add_option("--radius", cfg.radii, "radius [m]; repeat for several")->required();
    add_geometry(sweep);
    add_sim(sweep);
    add_output(sweep);

    CLI::App* outage = app.add_subcommand("outage", "analytic vs empirical outage probability");
    outage->add_option("--rho", cfg.rho_values, "intensity [1/m^2]; repeat for several")
        ->required();
    outage->add_option("--radius", cfg.radii, "radius [m]; repeat for several")->required();
    outage->add_option("--threshold-db", cfg.thresholds_db, "outage threshold [dB]; repeatable")
        ->required();
    add_geometry(outage);
    add_sim(outage);
    add_output(outage);

    CLI::App* validate = app.add_subcommand("validate", "run the built-in property suite");
    validate->add_option("--zeta-db", cfg.zeta_db, "per-blocker attenuation [dB], <= 0")
        ->capture_default_str();
    add_sim(validate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (eval->parsed()) cfg.mode = Mode::eval;
    else if (sweep->parsed()) cfg.mode = Mode::sweep;
    else if (outage->parsed()) cfg.mode = Mode::outage;
    else cfg.mode = Mode::validate;

    bool s_given = false;
    for (const CLI::Option* opt : s_options) s_given = s_given || opt->count() > 0;
    detail::post_validate(cfg, s_given);
    return cfg;
}

namespace detail {

inline int dispatch(const RunConfig& cfg) {
    switch (cfg.mode) {
        case Mode::eval: {
            analysis::SweepGrid grid{cfg.rho_values, cfg.radii, cfg.w,    cfg.w_r,
                                     cfg.s,          cfg.zeta_db, cfg.trials, cfg.seed};
            const auto records =
                analysis::run_sweep(grid, cfg.chunk_size, cfg.threads,
                                    analysis::default_ci_abs_floor, cfg.blocker_cap);
            io::emit_results(records, cfg.format, cfg.out);
            return 0;
        }
        case Mode::sweep: {
            analysis::SweepGrid grid;
            grid.rho_values =
                analysis::make_rho_grid(cfg.rho_min, cfg.rho_max, cfg.rho_steps, cfg.rho_spacing);
            grid.radii = cfg.radii;
            grid.w = cfg.w;
            grid.w_r = cfg.w_r;
            grid.s = cfg.s;
            grid.zeta_db = cfg.zeta_db;
            grid.trials = cfg.trials;
            grid.seed = cfg.seed;
            const auto records =
                analysis::run_sweep(grid, cfg.chunk_size, cfg.threads,
                                    analysis::default_ci_abs_floor, cfg.blocker_cap);
            io::emit_results(records, cfg.format, cfg.out);
            return 0;
        }
        case Mode::outage: {
            const double zeta = zeta_from_db(cfg.zeta_db);
            std::vector<io::OutageRecord> records;
            std::uint64_t cell = 0;
            for (const double r : cfg.radii) {
                for (const double rho : cfg.rho_values) {
                    for (const double threshold_db : cfg.thresholds_db) {
                        const GeometryConfig geo(r, cfg.w, cfg.w_r, cfg.s);
                        const ModelParams params(rho, zeta, geo);
                        const double analytic = outage_probability(params, geo, threshold_db);
                        const sim::TrialPlan plan{cfg.trials, derive_seed(cfg.seed, cell),
                                                  cfg.chunk_size, cfg.threads, cfg.blocker_cap};
                        const double empirical =
                            sim::empirical_outage(params, geo, threshold_db, plan);
                        records.push_back({rho, r, threshold_db, analytic, empirical,
                                           std::abs(analytic - empirical), cfg.trials, cfg.seed});
                        ++cell;
                    }
                }
            }
            io::emit_results(records, cfg.format, cfg.out);
            return 0;
        }
        case Mode::validate: {
            const validate::ValidateOptions opts{cfg.trials, cfg.seed, cfg.chunk_size,
                                                 cfg.threads, cfg.zeta_db};
            const auto results = validate::run_validation(opts);
            bool all = true;
            for (const auto& check : results) {
                std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << ": "
                          << check.detail << '\n';
                all = all && check.pass;
            }
            std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
            return all ? 0 : 1;
        }
    }
    return 1;
}

}  // namespace detail

inline int run_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    try {
        return detail::dispatch(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int run(int argc, const char* const* argv) {
    return run_args(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace blockage::cli
