#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "blockage/model.hpp"
#include "blockage/sim.hpp"
#include "blockage/stats.hpp"

using Catch::Approx;
using namespace blockage;

namespace {

const GeometryConfig& fig_geo() {
    static const GeometryConfig geo(10.0, 0.5, 0.3, 0.4);
    return geo;
}

}  // namespace

TEST_CASE("empty process lands no blockers") {
    const ModelParams params(0.0, 0.01, fig_geo());
    for (std::uint64_t stream = 0; stream < 5; ++stream) {
        PhiloxStream rng(17, stream);
        CHECK(sim::sample_field(params, fig_geo(), rng).locations.empty());
    }
}

TEST_CASE("sampled fields are deterministic and live on the annulus") {
    const ModelParams params(0.1, 0.01, fig_geo());
    PhiloxStream rng_a(31, 2);
    PhiloxStream rng_b(31, 2);
    const sim::BlockerField a = sim::sample_field(params, fig_geo(), rng_a);
    const sim::BlockerField b = sim::sample_field(params, fig_geo(), rng_b);
    REQUIRE(a.locations.size() == b.locations.size());
    for (std::size_t i = 0; i < a.locations.size(); ++i) {
        CHECK(a.locations[i].d == b.locations[i].d);
        CHECK(a.locations[i].omega == b.locations[i].omega);
        CHECK(a.locations[i].d >= fig_geo().s);
        CHECK(a.locations[i].d <= fig_geo().r);
        CHECK(a.locations[i].omega > 0.0);
        CHECK(a.locations[i].omega <= two_pi);
    }
}

TEST_CASE("blocker count matches its Poisson mean over many fields") {
    // rho = 0.1, r = 10: mean pi * 10
    const ModelParams params(0.1, 0.01, fig_geo());
    const sim::TrialPlan plan{100'000, 42, 4096};
    const auto stats = sim::run_trials(params, fig_geo(), plan, sim::CoverStatsAccumulator{});
    const double lambda = params.rho_bar;
    CHECK(std::abs(stats.mean_blockers() - lambda) <=
          3.0 * std::sqrt(lambda / static_cast<double>(plan.trials)));

    const auto gof = chi_square_gof(stats.blocker_histogram(), plan.trials,
                                    [&](std::uint64_t k) { return poisson_pmf(k, lambda); });
    INFO("chi2 p = " << gof.p_value);
    CHECK(gof.p_value >= 1e-3);
}

TEST_CASE("sampled distances follow the annulus law") {
    const GeometryConfig& geo = fig_geo();
    PhiloxStream rng(42, 9);
    std::vector<double> samples(100'000);
    for (double& d : samples) d = sample_distance(rng.uniform01(), geo);
    const double dist =
        ks_distance(std::move(samples), [&](double d) { return distance_cdf(d, geo); });
    CHECK(dist < 1.5 * 1.36 / std::sqrt(1e5));
}

TEST_CASE("cover counting matches hand geometry") {
    const GeometryConfig geo(2.0, 0.5, 0.3, 0.5);
    const double deg = pi / 180.0;

    // single blocker dead ahead subtends +/- 14.48 degrees
    sim::BlockerField field{geo, {{1.0, 0.0}}};
    CHECK(sim::count_covers(field, 10.0 * deg).n == 1);
    CHECK(sim::count_covers(field, 20.0 * deg).n == 0);
    CHECK(sim::count_covers(field, 10.0 * deg).m == 1);

    // cover interval straddling the 0/2pi seam
    sim::BlockerField seam{geo, {{1.0, two_pi - 0.01}}};
    CHECK(sim::count_covers(seam, 0.01).n == 1);

    // just inside / just outside the subtended half-angle
    CHECK(sim::covers(1.0, std::asin(0.25) - 1e-9, 0.0, geo));
    CHECK_FALSE(sim::covers(1.0, std::asin(0.25) + 1e-9, 0.0, geo));

    // several blockers, mixed outcomes
    sim::BlockerField mixed{geo, {{1.0, 0.0}, {1.0, pi}, {0.5, 0.3}, {1.9, 0.01}}};
    const CoverCount count = sim::count_covers(mixed, 0.0);
    CHECK(count.m == 4);
    CHECK(count.n == 3);  // ahead, near blocker at 0.3 rad (eps/2 ~ 0.5236), far one at 0.01
}

TEST_CASE("angle wrap maps differences into [-pi, pi)") {
    CHECK(sim::wrap_angle(0.0) == Approx(0.0).margin(1e-15));
    CHECK(sim::wrap_angle(two_pi - 0.02) == Approx(-0.02).margin(1e-12));
    CHECK(sim::wrap_angle(-two_pi + 0.02) == Approx(0.02).margin(1e-12));
    CHECK(std::abs(sim::wrap_angle(3.0 * pi)) == Approx(pi).margin(1e-12));
    CHECK(sim::wrap_angle(0.5) == Approx(0.5).margin(1e-15));
}

TEST_CASE("attenuation estimate honours degenerate cases") {
    const ModelParams empty(0.0, 0.01, fig_geo());
    const sim::TrialPlan plan{5000, 3, 512};
    const sim::AttenuationEstimate est = sim::estimate_attenuation(empty, fig_geo(), plan);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
    CHECK(est.ci95_low == 1.0);
    CHECK(est.ci95_high == 1.0);
    CHECK(est.mean_db == 0.0);
    CHECK(est.trials == 5000);
    CHECK(est.seed == 3);

    const ModelParams transparent(0.1, 1.0, fig_geo());
    const sim::AttenuationEstimate est2 = sim::estimate_attenuation(transparent, fig_geo(), plan);
    CHECK(est2.mean == 1.0);
    CHECK(est2.std_error == 0.0);
}

TEST_CASE("simulation agrees with the exact thinning expectation") {
    const GeometryConfig geo(10.0, 0.5, 0.3, 0.5);
    const ModelParams params(0.1, 0.01, geo);
    const sim::TrialPlan plan{100'000, 42, 8192};
    const sim::AttenuationEstimate est = sim::estimate_attenuation(params, geo, plan);
    const double exact = expected_attenuation_exact(params, geo);
    INFO("mean=" << est.mean << " exact=" << exact << " se=" << est.std_error);
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);
    CHECK(est.ci95_low <= est.mean);
    CHECK(est.mean <= est.ci95_high);

    // at this low density the closed form also sits inside the interval
    const double paper = expected_attenuation_paper(params, geo);
    CHECK(est.ci95_low <= paper);
    CHECK(paper <= est.ci95_high);
}

TEST_CASE("estimates are bit-identical across runs and thread counts") {
    const ModelParams params(0.2, 0.01, fig_geo());
    sim::TrialPlan plan{20'000, 11, 1024};

    plan.threads = 1;
    const sim::AttenuationEstimate serial = sim::estimate_attenuation(params, fig_geo(), plan);
    const sim::AttenuationEstimate again = sim::estimate_attenuation(params, fig_geo(), plan);
    plan.threads = 4;
    const sim::AttenuationEstimate parallel = sim::estimate_attenuation(params, fig_geo(), plan);

    CHECK(serial.mean == again.mean);
    CHECK(serial.std_error == again.std_error);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.std_error == parallel.std_error);
    CHECK(serial.ci95_low == parallel.ci95_low);
    CHECK(serial.ci95_high == parallel.ci95_high);
}

TEST_CASE("partial trailing chunks are counted") {
    const ModelParams params(0.05, 0.01, fig_geo());
    const sim::TrialPlan plan{10'001, 5, 1000};
    const sim::AttenuationEstimate est = sim::estimate_attenuation(params, fig_geo(), plan);
    CHECK(est.trials == 10'001);
    CHECK(est.mean > 0.0);
    CHECK(est.mean <= 1.0);
}

TEST_CASE("implausible blocker populations hit the cap") {
    const ModelParams params(0.1, 0.01, fig_geo());
    sim::TrialPlan plan{100, 7, 32};
    plan.blocker_cap = 10;  // mean count is ~31.4
    CHECK_THROWS_WITH(sim::estimate_attenuation(params, fig_geo(), plan),
                      Catch::Matchers::ContainsSubstring("cap"));
    CHECK_THROWS_AS(sim::estimate_attenuation(params, fig_geo(), plan), std::runtime_error);
}

TEST_CASE("invalid plans are rejected") {
    const ModelParams params(0.1, 0.01, fig_geo());
    CHECK_THROWS_AS(sim::estimate_attenuation(params, fig_geo(), {0, 1, 8}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sim::estimate_attenuation(params, fig_geo(), {10, 1, 0}),
                    std::invalid_argument);
}

TEST_CASE("single-blocker cover fraction converges to g") {
    const GeometryConfig& geo = fig_geo();
    const double g = cover_prob(geo);
    PhiloxStream rng(1234, 0);
    const std::uint64_t n = 100'000;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double d = sample_distance(rng.uniform01(), geo);
        const double omega = two_pi * (1.0 - rng.uniform01());
        hits += sim::covers(d, omega, 0.0, geo) ? 1 : 0;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(n);
    CHECK(std::abs(frac - g) <= 3.0 * std::sqrt(g * (1.0 - g) / static_cast<double>(n)));
}

TEST_CASE("cover counts thin to a Poisson with mean rho_bar g") {
    const ModelParams params(0.1, 0.01, fig_geo());
    const sim::TrialPlan plan{100'000, 77, 4096};
    const auto stats = sim::run_trials(params, fig_geo(), plan, sim::CoverStatsAccumulator{});
    const double target = params.rho_bar * cover_prob(fig_geo());
    const double se = std::sqrt(stats.var_covers() / static_cast<double>(plan.trials));
    INFO("mean covers=" << stats.mean_covers() << " target=" << target);
    CHECK(std::abs(stats.mean_covers() - target) <= 3.0 * se);
}

TEST_CASE("empirical outage tracks the Poisson tail") {
    const GeometryConfig& geo = fig_geo();
    const ModelParams empty(0.0, 0.01, geo);
    const sim::TrialPlan plan{100'000, 8, 8192};
    CHECK(sim::empirical_outage(empty, geo, -30.0, plan) == 0.0);

    // density tuned so the thinned cover count has mean 1/2
    const double rho = 0.5 / (pi * 100.0 * cover_prob(geo));
    const ModelParams params(rho, 0.01, geo);
    const double analytic = outage_probability(params, geo, -30.0);
    CHECK(analytic == Approx(0.09020401043104986).epsilon(1e-6));

    const double empirical = sim::empirical_outage(params, geo, -30.0, plan);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(plan.trials));
    CHECK(std::abs(empirical - analytic) <= 3.0 * se);

    CHECK(sim::empirical_outage(params, geo, -30.0, plan) == empirical);  // same seed, same result
}
