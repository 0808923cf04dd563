#pragma once

#include <cstdint>
#include <vector>

#include "probesizer/core.hpp"

namespace probesizer {

constexpr double kDefaultCollapsedBelow = 0.2;
constexpr double kDefaultNotCollapsedAt = 0.8;
constexpr int64_t kDefaultCollapseTrials = 20;

enum class CollapseVerdict { Collapsed, NotCollapsed, Inconclusive };

struct CollapseReport {
    int64_t num_trials = 0;
    int64_t num_significant = 0;
    CollapseVerdict verdict = CollapseVerdict::Inconclusive;
    double collapsed_below = kDefaultCollapsedBelow;
    double not_collapsed_at = kDefaultNotCollapsedAt;

    double significant_fraction() const {
        return num_trials > 0
                   ? static_cast<double>(num_significant) / static_cast<double>(num_trials)
                   : 0.0;
    }
};

// Cross-validation rotation: run i validates on fold i, tests on fold
// (i+1) mod F, and trains on the rest.
struct FoldAssignment {
    int run_index = 0;
    int val_fold = 0;
    int test_fold = 0;
    std::vector<int> train_folds;
};

struct FoldPlan {
    int num_folds = 0;
    std::vector<FoldAssignment> assignments;
};

FoldPlan fold_plan(int num_folds);

// Verdict from repeated pilot-style trials: Collapsed when the significant
// fraction falls below collapsed_below, NotCollapsed at not_collapsed_at or
// above, Inconclusive between.
CollapseReport detect_collapse(const std::vector<bool>& trial_significant,
                               double collapsed_below = kDefaultCollapsedBelow,
                               double not_collapsed_at = kDefaultNotCollapsedAt);

// Chi-squared variant: applies the significance test per trial first.
CollapseReport detect_collapse_chi2(const std::vector<double>& trial_chi2, double alpha,
                                    double collapsed_below = kDefaultCollapsedBelow,
                                    double not_collapsed_at = kDefaultNotCollapsedAt);

// Repeated without-replacement pilot subsamples. Trial t draws its items
// from stream (rng_seed, t) and reads the seed row t mod num_seeds, so every
// classifier seed participates.
std::vector<bool> subsample_trials(const PairedPredictions& pred, int64_t trial_size,
                                   int64_t num_trials, double alpha, uint64_t rng_seed);

}  // namespace probesizer
