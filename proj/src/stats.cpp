#include "probesizer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probesizer/chi_square.hpp"
#include "probesizer/parallel.hpp"
#include "probesizer/rng.hpp"

namespace probesizer {

void ContingencyTable::validate() const {
    if (n00 < 0 || n01 < 0 || n10 < 0 || n11 < 0) {
        fail_validation("contingency counts must be non-negative");
    }
    if (total() < 1) {
        fail_validation("contingency table must cover at least one item");
    }
}

ContingencyTable contingency(const PairedPredictions& pred, int64_t seed_id) {
    const size_t row = pred.seed_index(seed_id);
    ContingencyTable table;
    for (size_t i = 0; i < pred.num_items(); ++i) {
        const bool a = pred.correct_a(row, i);
        const bool b = pred.correct_b(row, i);
        if (!a && !b) {
            ++table.n00;
        } else if (!a && b) {
            ++table.n01;
        } else if (a && !b) {
            ++table.n10;
        } else {
            ++table.n11;
        }
    }
    return table;
}

double mcnemar_chi2(const ContingencyTable& table) {
    table.validate();
    const int64_t discordant = table.n01 + table.n10;
    if (discordant == 0) {
        return 0.0;
    }
    const double diff = static_cast<double>(table.n01 - table.n10);
    return diff * diff / static_cast<double>(discordant);
}

bool is_significant(double chi2, double alpha) {
    if (chi2 < 0.0) {
        fail_validation("chi2 statistic must be non-negative");
    }
    return chi2 > chi_square_critical_1df(alpha);
}

namespace {

// One simulated draw: subsample items for a given seed row and test it.
bool draw_is_significant(const PairedPredictions& pred, size_t seed_row,
                         int64_t subsample_size, bool bootstrap, double critical,
                         Rng& rng, std::vector<uint32_t>& scratch) {
    const size_t pool = pred.num_items();
    int64_t n01 = 0;
    int64_t n10 = 0;
    const auto count_item = [&](size_t item) {
        const bool a = pred.correct_a(seed_row, item);
        const bool b = pred.correct_b(seed_row, item);
        n01 += (!a && b) ? 1 : 0;
        n10 += (a && !b) ? 1 : 0;
    };
    if (bootstrap) {
        for (int64_t k = 0; k < subsample_size; ++k) {
            count_item(static_cast<size_t>(rng.below(pool)));
        }
    } else {
        scratch.resize(pool);
        std::iota(scratch.begin(), scratch.end(), 0u);
        for (int64_t k = 0; k < subsample_size; ++k) {
            const auto j = static_cast<size_t>(k) + static_cast<size_t>(rng.below(pool - k));
            std::swap(scratch[static_cast<size_t>(k)], scratch[j]);
            count_item(scratch[static_cast<size_t>(k)]);
        }
    }
    const int64_t discordant = n01 + n10;
    if (discordant == 0) {
        return false;
    }
    const double diff = static_cast<double>(n01 - n10);
    return diff * diff / static_cast<double>(discordant) > critical;
}

}  // namespace

PowerEstimate estimate_power(const PairedPredictions& pred, int64_t subsample_size,
                             int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                             SubsampleMode mode) {
    const auto pool = static_cast<int64_t>(pred.num_items());
    if (subsample_size < 1) {
        fail_validation("subsample size must be >= 1");
    }
    if (subsample_size > pool) {
        fail_validation("subsample size " + std::to_string(subsample_size) +
                        " exceeds the item pool of " + std::to_string(pool));
    }
    if (num_sims_per_seed < 1) {
        fail_validation("num_sims_per_seed must be >= 1");
    }
    const double critical = chi_square_critical_1df(alpha);
    const bool bootstrap = mode == SubsampleMode::Bootstrap ||
                           (mode == SubsampleMode::Auto && subsample_size == pool);

    const size_t num_seeds = pred.num_seeds();
    const size_t total = num_seeds * static_cast<size_t>(num_sims_per_seed);
    std::vector<uint8_t> significant(total, 0);

    parallel_for(total, [&](size_t begin, size_t end) {
        std::vector<uint32_t> scratch;
        for (size_t draw = begin; draw < end; ++draw) {
            const size_t seed_row = draw / static_cast<size_t>(num_sims_per_seed);
            const size_t sim = draw % static_cast<size_t>(num_sims_per_seed);
            Rng rng = Rng::stream(rng_seed, {seed_row, sim});
            significant[draw] = draw_is_significant(pred, seed_row, subsample_size,
                                                    bootstrap, critical, rng, scratch)
                                    ? 1
                                    : 0;
        }
    });

    PowerEstimate estimate;
    estimate.subsample_size = subsample_size;
    estimate.alpha = alpha;
    estimate.num_simulations = static_cast<int64_t>(total);
    estimate.num_significant =
        std::accumulate(significant.begin(), significant.end(), int64_t{0});
    estimate.power = static_cast<double>(estimate.num_significant) /
                     static_cast<double>(estimate.num_simulations);
    return estimate;
}

PowerCurve power_curve(const PairedPredictions& pred, const std::vector<int64_t>& sizes,
                       int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                       SubsampleMode mode) {
    if (sizes.empty()) {
        fail_validation("power curve needs at least one test size");
    }
    for (size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) {
            fail_validation("power curve sizes must be strictly increasing");
        }
    }
    PowerCurve curve;
    curve.points.reserve(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
        const uint64_t stream = Rng::derive(rng_seed, {i});
        curve.points.emplace_back(
            sizes[i], estimate_power(pred, sizes[i], num_sims_per_seed, alpha, stream, mode));
    }
    return curve;
}

std::pair<double, std::vector<double>> suboptimality_gap(
    const std::vector<double>& observed_risks) {
    if (observed_risks.empty()) {
        fail_validation("suboptimality gap needs at least one observation");
    }
    const double best = *std::max_element(observed_risks.begin(), observed_risks.end());
    std::vector<double> gaps;
    gaps.reserve(observed_risks.size());
    for (double value : observed_risks) {
        gaps.push_back(best - value);
    }
    return {best, gaps};
}

}  // namespace probesizer
