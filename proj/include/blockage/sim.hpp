#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blockage/geometry.hpp"
#include "blockage/model.hpp"
#include "blockage/rng.hpp"
#include "blockage/summation.hpp"

namespace blockage::sim {

inline constexpr std::uint64_t default_blocker_cap = 10'000'000;

struct BlockerField {
    GeometryConfig geo;
    std::vector<PolarLocation> locations;
};

struct TrialResult {
    std::uint64_t n_covers;
    std::uint64_t m_blockers;
    double attenuation_linear;  // zeta^n_covers
};

struct AttenuationEstimate {
    double mean;
    double std_error;
    double ci95_low;
    double ci95_high;
    double mean_db;
    std::uint64_t trials;
    std::uint64_t seed;
};

// How a batch of trials is executed. Results are a function of
// (trials, seed, chunk_size) only; `threads` never changes them.
struct TrialPlan {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = 8192;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::uint64_t blocker_cap = default_blocker_cap;
};

// Streams one PPP realization through f(d, omega) in a fixed draw order:
// the Poisson count first, then one (distance, azimuth) pair per blocker.
template <class Stream, class F>
std::uint64_t visit_field(const ModelParams& params, const GeometryConfig& geo, Stream& rng,
                          std::uint64_t blocker_cap, F&& f) {
    const std::uint64_t m = sample_poisson(rng, params.rho_bar);
    if (m > blocker_cap) {
        throw std::runtime_error("sample_field: blocker count " + std::to_string(m) +
                                 " exceeds cap " + std::to_string(blocker_cap) +
                                 "; check rho and the geometry scale");
    }
    for (std::uint64_t i = 0; i < m; ++i) {
        const double d = sample_distance(rng.uniform01(), geo);
        const double omega = two_pi * (1.0 - rng.uniform01());  // (0, 2*pi]
        f(d, omega);
    }
    return m;
}

template <class Stream>
BlockerField sample_field(const ModelParams& params, const GeometryConfig& geo, Stream& rng,
                          std::uint64_t blocker_cap = default_blocker_cap) {
    BlockerField field{geo, {}};
    visit_field(params, geo, rng, blocker_cap,
                [&](double d, double omega) { field.locations.push_back({d, omega}); });
    return field;
}

// Maps an angle difference to [-pi, pi): delta = ((x + pi) mod 2pi) - pi.
inline double wrap_angle(double x) {
    double y = std::fmod(x + pi, two_pi);
    if (y < 0.0) y += two_pi;
    return y - pi;
}

// Cover test: |wrap(omega - phi)| <= eps/2 with eps = 2 asin(w / 2d),
// inclusive at both ends.
inline bool covers(double d, double omega, double phi, const GeometryConfig& geo) {
    const double eps_half = std::asin(geo.w / (2.0 * d));
    return std::abs(wrap_angle(omega - phi)) <= eps_half;
}

inline CoverCount count_covers(const BlockerField& field, double phi) {
    std::uint64_t n = 0;
    for (const PolarLocation& loc : field.locations) {
        n += covers(loc.d, loc.omega, phi, field.geo) ? 1 : 0;
    }
    return {n, field.locations.size()};
}

// Deterministic integer power; n_covers stays small so this is exact
// enough and identical on every code path.
inline double pow_int(double base, std::uint64_t n) {
    double result = 1.0;
    double b = base;
    while (n != 0) {
        if (n & 1u) result *= b;
        b *= b;
        n >>= 1u;
    }
    return result;
}

// Runs plan.trials simulated links in fixed-size chunks. Chunk i always
// consumes stream (seed, i) and per-chunk accumulators merge in index
// order, so the result is bit-identical for any thread count. Acc needs
// add(const TrialResult&) and merge(const Acc&).
template <class Acc>
Acc run_trials(const ModelParams& params, const GeometryConfig& geo, const TrialPlan& plan,
               Acc proto) {
    if (plan.trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    if (plan.chunk_size < 1) throw std::invalid_argument("run_trials: chunk_size must be >= 1");

    const std::uint64_t n_chunks = (plan.trials + plan.chunk_size - 1) / plan.chunk_size;
    std::vector<Acc> chunk_accs(static_cast<std::size_t>(n_chunks), proto);

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks || failed.load(std::memory_order_relaxed)) break;
            try {
                PhiloxStream rng(plan.seed, c);
                Acc& acc = chunk_accs[static_cast<std::size_t>(c)];
                const std::uint64_t begin = c * plan.chunk_size;
                const std::uint64_t count = std::min(plan.chunk_size, plan.trials - begin);
                for (std::uint64_t t = 0; t < count; ++t) {
                    std::uint64_t n = 0;
                    const std::uint64_t m =
                        visit_field(params, geo, rng, plan.blocker_cap,
                                    [&](double d, double omega) {
                                        n += covers(d, omega, 0.0, geo) ? 1 : 0;
                                    });
                    acc.add(TrialResult{n, m, pow_int(params.zeta, n)});
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const unsigned hw = plan.threads != 0
                            ? plan.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(hw, n_chunks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    Acc total = proto;
    for (const Acc& acc : chunk_accs) total.merge(acc);
    return total;
}

// Mean and spread of A = zeta^N. Compensated sums: 1e5 values in (0, 1]
// lose digits under naive accumulation.
class AttenuationAccumulator {
public:
    void add(const TrialResult& trial) {
        sum_.add(trial.attenuation_linear);
        sum_sq_.add(trial.attenuation_linear * trial.attenuation_linear);
        ++count_;
    }

    void merge(const AttenuationAccumulator& other) {
        sum_.add(other.sum_.value());
        sum_sq_.add(other.sum_sq_.value());
        count_ += other.count_;
    }

    AttenuationEstimate finalize(std::uint64_t seed) const {
        const double n = static_cast<double>(count_);
        const double mean = sum_.value() / n;
        double var = 0.0;
        if (count_ > 1) {
            var = std::max(0.0, (sum_sq_.value() - n * mean * mean) / (n - 1.0));
        }
        const double se = std::sqrt(var / n);
        return {mean, se, mean - 1.96 * se, mean + 1.96 * se, to_db(mean), count_, seed};
    }

private:
    CompensatedSum sum_;
    CompensatedSum sum_sq_;
    std::uint64_t count_ = 0;
};

// Counts trials whose accumulated loss reaches the outage threshold.
class OutageAccumulator {
public:
    explicit OutageAccumulator(std::uint64_t min_covers) : min_covers_(min_covers) {}

    void add(const TrialResult& trial) {
        outages_ += (min_covers_ != outage_never && trial.n_covers >= min_covers_) ? 1 : 0;
        ++count_;
    }

    void merge(const OutageAccumulator& other) {
        outages_ += other.outages_;
        count_ += other.count_;
    }

    double fraction() const { return static_cast<double>(outages_) / static_cast<double>(count_); }

private:
    std::uint64_t min_covers_;
    std::uint64_t outages_ = 0;
    std::uint64_t count_ = 0;
};

// First and second moments of the cover count and blocker count, plus the
// blocker-count histogram; integer state, so merging is trivially exact.
class CoverStatsAccumulator {
public:
    void add(const TrialResult& trial) {
        sum_n_ += trial.n_covers;
        sum_n_sq_ += trial.n_covers * trial.n_covers;
        sum_m_ += trial.m_blockers;
        if (trial.m_blockers >= m_hist_.size()) m_hist_.resize(trial.m_blockers + 1, 0);
        ++m_hist_[trial.m_blockers];
        ++count_;
    }

    void merge(const CoverStatsAccumulator& other) {
        sum_n_ += other.sum_n_;
        sum_n_sq_ += other.sum_n_sq_;
        sum_m_ += other.sum_m_;
        if (other.m_hist_.size() > m_hist_.size()) m_hist_.resize(other.m_hist_.size(), 0);
        for (std::size_t i = 0; i < other.m_hist_.size(); ++i) m_hist_[i] += other.m_hist_[i];
        count_ += other.count_;
    }

    std::uint64_t count() const { return count_; }
    double mean_covers() const { return static_cast<double>(sum_n_) / static_cast<double>(count_); }
    double mean_blockers() const { return static_cast<double>(sum_m_) / static_cast<double>(count_); }
    double var_covers() const {
        const double n = static_cast<double>(count_);
        const double mean = mean_covers();
        return (static_cast<double>(sum_n_sq_) - n * mean * mean) / (n - 1.0);
    }
    const std::vector<std::uint64_t>& blocker_histogram() const { return m_hist_; }

private:
    std::uint64_t sum_n_ = 0;
    std::uint64_t sum_n_sq_ = 0;
    std::uint64_t sum_m_ = 0;
    std::vector<std::uint64_t> m_hist_;
    std::uint64_t count_ = 0;
};

inline AttenuationEstimate estimate_attenuation(const ModelParams& params,
                                                const GeometryConfig& geo,
                                                const TrialPlan& plan) {
    const auto acc = run_trials(params, geo, plan, AttenuationAccumulator{});
    return acc.finalize(plan.seed);
}

inline double empirical_outage(const ModelParams& params, const GeometryConfig& geo,
                               double threshold_db, const TrialPlan& plan) {
    if (!(threshold_db <= 0.0)) {
        throw std::domain_error("empirical_outage: threshold_db must be <= 0");
    }
    const std::uint64_t k = outage_min_covers(params.zeta, threshold_db);
    const auto acc = run_trials(params, geo, plan, OutageAccumulator(k));
    return acc.fraction();
}

}  // namespace blockage::sim
