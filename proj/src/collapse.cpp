#include "probesizer/collapse.hpp"

#include <numeric>

#include "probesizer/chi_square.hpp"
#include "probesizer/parallel.hpp"
#include "probesizer/rng.hpp"

namespace probesizer {

FoldPlan fold_plan(int num_folds) {
    if (num_folds < 3) {
        fail_validation("fold rotation needs at least 3 folds");
    }
    FoldPlan plan;
    plan.num_folds = num_folds;
    plan.assignments.reserve(static_cast<size_t>(num_folds));
    for (int i = 0; i < num_folds; ++i) {
        FoldAssignment run;
        run.run_index = i;
        run.val_fold = i;
        run.test_fold = (i + 1) % num_folds;
        for (int f = 0; f < num_folds; ++f) {
            if (f != run.val_fold && f != run.test_fold) {
                run.train_folds.push_back(f);
            }
        }
        plan.assignments.push_back(std::move(run));
    }
    return plan;
}

CollapseReport detect_collapse(const std::vector<bool>& trial_significant,
                               double collapsed_below, double not_collapsed_at) {
    if (trial_significant.size() < 2) {
        fail_validation("collapse detection needs at least 2 trials");
    }
    if (!(collapsed_below > 0.0) || !(collapsed_below < 1.0) ||
        !(not_collapsed_at > 0.0) || !(not_collapsed_at < 1.0) ||
        collapsed_below > not_collapsed_at) {
        fail_validation("collapse thresholds must satisfy 0 < low <= high < 1");
    }
    CollapseReport report;
    report.num_trials = static_cast<int64_t>(trial_significant.size());
    for (bool sig : trial_significant) {
        report.num_significant += sig ? 1 : 0;
    }
    report.collapsed_below = collapsed_below;
    report.not_collapsed_at = not_collapsed_at;
    const double fraction = report.significant_fraction();
    if (fraction < collapsed_below) {
        report.verdict = CollapseVerdict::Collapsed;
    } else if (fraction >= not_collapsed_at) {
        report.verdict = CollapseVerdict::NotCollapsed;
    } else {
        report.verdict = CollapseVerdict::Inconclusive;
    }
    return report;
}

CollapseReport detect_collapse_chi2(const std::vector<double>& trial_chi2, double alpha,
                                    double collapsed_below, double not_collapsed_at) {
    const double critical = chi_square_critical_1df(alpha);
    std::vector<bool> significant;
    significant.reserve(trial_chi2.size());
    for (double chi2 : trial_chi2) {
        if (chi2 < 0.0) {
            fail_validation("chi2 trial values must be non-negative");
        }
        significant.push_back(chi2 > critical);
    }
    return detect_collapse(significant, collapsed_below, not_collapsed_at);
}

std::vector<bool> subsample_trials(const PairedPredictions& pred, int64_t trial_size,
                                   int64_t num_trials, double alpha, uint64_t rng_seed) {
    const auto pool = static_cast<int64_t>(pred.num_items());
    if (trial_size < 1 || trial_size > pool) {
        fail_validation("trial size must lie in [1, pool]");
    }
    if (num_trials < 2) {
        fail_validation("need at least 2 subsample trials");
    }
    const double critical = chi_square_critical_1df(alpha);
    const size_t num_seeds = pred.num_seeds();

    std::vector<uint8_t> results(static_cast<size_t>(num_trials), 0);
    parallel_for(results.size(), [&](size_t begin, size_t end) {
        std::vector<uint32_t> scratch(pred.num_items());
        for (size_t t = begin; t < end; ++t) {
            Rng rng = Rng::stream(rng_seed, {t});
            const size_t seed_row = t % num_seeds;
            std::iota(scratch.begin(), scratch.end(), 0u);
            int64_t n01 = 0;
            int64_t n10 = 0;
            for (int64_t k = 0; k < trial_size; ++k) {
                const auto j = static_cast<size_t>(k) +
                               static_cast<size_t>(rng.below(static_cast<uint64_t>(pool - k)));
                std::swap(scratch[static_cast<size_t>(k)], scratch[j]);
                const size_t item = scratch[static_cast<size_t>(k)];
                const bool a = pred.correct_a(seed_row, item);
                const bool b = pred.correct_b(seed_row, item);
                n01 += (!a && b) ? 1 : 0;
                n10 += (a && !b) ? 1 : 0;
            }
            const int64_t discordant = n01 + n10;
            if (discordant > 0) {
                const double diff = static_cast<double>(n01 - n10);
                results[t] = diff * diff / static_cast<double>(discordant) > critical ? 1 : 0;
            }
        }
    });

    std::vector<bool> out(results.size());
    for (size_t i = 0; i < results.size(); ++i) {
        out[i] = results[i] != 0;
    }
    return out;
}

}  // namespace probesizer
