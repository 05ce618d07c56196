#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "blockage/rng.hpp"
#include "blockage/special.hpp"
#include "blockage/stats.hpp"

using Catch::Approx;
using namespace blockage;

TEST_CASE("philox 4x32-10 reproduces the published vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(Philox4x32::block(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::block(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            A2{0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::block(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            A2{0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are deterministic and distinct") {
    PhiloxStream zero(0, 0);
    CHECK(zero.next_u32() == 0x6627e8d5u);
    CHECK(zero.next_u32() == 0xe169c58du);
    CHECK(zero.next_u32() == 0xbc57ac4cu);
    CHECK(zero.next_u32() == 0x9b00dbd8u);

    PhiloxStream a(123, 5);
    PhiloxStream b(123, 5);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

    PhiloxStream c(123, 6);
    PhiloxStream d(124, 5);
    PhiloxStream ref(123, 5);
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 16; ++i) {
        const std::uint64_t r = ref.next_u64();
        differs_c = differs_c || (c.next_u64() != r);
        differs_d = differs_d || (d.next_u64() != r);
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("uniform draws stay inside their intervals") {
    PhiloxStream rng(7, 0);
    double min_open = 1.0;
    for (int i = 0; i < 20'000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform_open01();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        min_open = std::min(min_open, v);
    }
    CHECK(min_open > 0.0);
}

TEST_CASE("derived seeds are stable and spread out") {
    CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFull);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 1000);
}

namespace {

void check_poisson_fit(double lambda, std::uint64_t n, std::uint64_t stream) {
    PhiloxStream rng(20240601, stream);
    std::vector<std::uint64_t> hist;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t k = sample_poisson(rng, lambda);
        if (k >= hist.size()) hist.resize(k + 1, 0);
        ++hist[k];
        sum += static_cast<double>(k);
    }
    const double mean = sum / static_cast<double>(n);
    const double mean_tol = 4.0 * std::sqrt(lambda / static_cast<double>(n));
    INFO("lambda=" << lambda << " mean=" << mean);
    CHECK(std::abs(mean - lambda) <= mean_tol);

    const auto gof =
        chi_square_gof(hist, n, [&](std::uint64_t k) { return poisson_pmf(k, lambda); });
    INFO("chi2=" << gof.statistic << " dof=" << gof.dof << " p=" << gof.p_value);
    CHECK(gof.p_value >= 1e-3);
}

}  // namespace

TEST_CASE("poisson sampling is exact on both branches") {
    PhiloxStream rng(1, 0);
    CHECK(sample_poisson(rng, 0.0) == 0);
    CHECK_THROWS_AS(sample_poisson(rng, -1.0), std::domain_error);

    check_poisson_fit(0.2, 100'000, 1);   // inversion, sparse
    check_poisson_fit(5.0, 100'000, 2);   // inversion
    check_poisson_fit(31.5, 100'000, 3);  // rejection, just past the cutover
    check_poisson_fit(300.0, 50'000, 4);  // rejection, heavy
}

TEST_CASE("poisson sampling is reproducible") {
    PhiloxStream a(9, 3);
    PhiloxStream b(9, 3);
    for (int i = 0; i < 200; ++i) CHECK(sample_poisson(a, 31.5) == sample_poisson(b, 31.5));
}
