#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "probesizer/core.hpp"

namespace probesizer {

constexpr double kDefaultAlpha = 0.05;
constexpr int64_t kDefaultSimsPerSeed = 1000;

// Counts of (A incorrect/correct) x (B incorrect/correct) over a test set.
struct ContingencyTable {
    int64_t n00 = 0;  // both incorrect
    int64_t n01 = 0;  // A incorrect, B correct
    int64_t n10 = 0;  // A correct, B incorrect
    int64_t n11 = 0;  // both correct

    int64_t total() const noexcept { return n00 + n01 + n10 + n11; }
    void validate() const;
};

ContingencyTable contingency(const PairedPredictions& pred, int64_t seed_id);

// Discordance statistic (n01 - n10)^2 / (n01 + n10); 0 when there is no
// discordant pair (defined non-significant).
double mcnemar_chi2(const ContingencyTable& table);

// Strict comparison against the 1-df critical value.
bool is_significant(double chi2, double alpha);

enum class SubsampleMode {
    // Without replacement below the pool size, bootstrap at the pool size
    // (otherwise every full-pool draw would be identical).
    Auto,
    WithoutReplacement,
    Bootstrap,
};

struct PowerEstimate {
    double power = 0.0;
    int64_t num_simulations = 0;
    int64_t num_significant = 0;
    double alpha = kDefaultAlpha;
    int64_t subsample_size = 0;
};

// Simulation-based power: for every classifier seed, draw item subsamples,
// test each draw, and pool the significant count across seeds. Deterministic
// under rng_seed and independent of the thread count.
PowerEstimate estimate_power(const PairedPredictions& pred, int64_t subsample_size,
                             int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                             SubsampleMode mode = SubsampleMode::Auto);

struct PowerCurve {
    std::vector<std::pair<int64_t, PowerEstimate>> points;  // ascending test size
};

// One estimate per size; size index i uses the stream Rng::derive(rng_seed, {i}).
PowerCurve power_curve(const PairedPredictions& pred, const std::vector<int64_t>& sizes,
                       int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                       SubsampleMode mode = SubsampleMode::Auto);

// Best observed value across seeds and each seed's shortfall from it
// (accuracy-like metrics: best = max).
std::pair<double, std::vector<double>> suboptimality_gap(
    const std::vector<double>& observed_risks);

}  // namespace probesizer
