#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "blockage/special.hpp"

namespace blockage {

// Two-sided Kolmogorov-Smirnov distance between an empirical sample and a
// reference CDF. Takes the sample by value and sorts it.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

struct ChiSquareResult {
    double statistic;
    std::uint64_t dof;
    double p_value;
    std::uint64_t bins;
};

// Pearson chi-square goodness of fit of an integer histogram against a
// discrete pmf over {0, 1, ...}. Adjacent cells pool left-to-right until
// each bin holds an expected count of at least min_expected; the last bin
// absorbs the entire right tail.
template <class Pmf>
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& hist, std::uint64_t n_samples,
                               Pmf&& pmf, double min_expected = 5.0) {
    if (n_samples == 0) throw std::invalid_argument("chi_square_gof: no samples");
    const double n = static_cast<double>(n_samples);

    std::vector<double> expected;
    std::vector<double> observed;
    double e_acc = 0.0;
    double o_acc = 0.0;
    double cum_p = 0.0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        const double p = pmf(static_cast<std::uint64_t>(k));
        cum_p += p;
        e_acc += n * p;
        o_acc += static_cast<double>(hist[k]);
        if (e_acc >= min_expected) {
            expected.push_back(e_acc);
            observed.push_back(o_acc);
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    // everything past the histogram is unobserved tail mass
    e_acc += n * std::max(0.0, 1.0 - cum_p);
    if (expected.empty()) {
        expected.push_back(e_acc);
        observed.push_back(o_acc);
    } else {
        expected.back() += e_acc;
        observed.back() += o_acc;
    }

    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    const std::uint64_t bins = expected.size();
    if (bins < 2) return {stat, 0, 1.0, bins};
    const std::uint64_t dof = bins - 1;
    return {stat, dof, chi_square_sf(stat, static_cast<double>(dof)), bins};
}

}  // namespace blockage
