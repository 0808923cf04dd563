#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "power_oracle.hpp"
#include "probesizer/collapse.hpp"
#include "probesizer/rng.hpp"

using namespace probesizer;

namespace {

PairedPredictions from_strings(const std::string& a, const std::string& b) {
    std::vector<std::string> items;
    std::vector<uint8_t> ca;
    std::vector<uint8_t> cb;
    for (size_t i = 0; i < a.size(); ++i) {
        items.push_back("i" + std::to_string(i));
        ca.push_back(a[i] == '1' ? 1 : 0);
        cb.push_back(b[i] == '1' ? 1 : 0);
    }
    return PairedPredictions(items, {0}, ca, cb);
}

}  // namespace

TEST_CASE("fold rotation plan") {
    const FoldPlan plan = fold_plan(6);
    REQUIRE(plan.assignments.size() == 6);

    const auto& run5 = plan.assignments[5];
    CHECK(run5.val_fold == 5);
    CHECK(run5.test_fold == 0);  // (5+1) mod 6
    CHECK(run5.train_folds == std::vector<int>{1, 2, 3, 4});

    const auto& run0 = plan.assignments[0];
    CHECK(run0.val_fold == 0);
    CHECK(run0.test_fold == 1);
    CHECK(run0.train_folds == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("fold plan coverage: each fold serves once as val and once as test") {
    for (int folds : {3, 4, 6, 9}) {
        const FoldPlan plan = fold_plan(folds);
        std::set<int> vals;
        std::set<int> tests;
        for (const auto& run : plan.assignments) {
            vals.insert(run.val_fold);
            tests.insert(run.test_fold);
            // each run partitions all folds
            std::set<int> covered{run.val_fold, run.test_fold};
            covered.insert(run.train_folds.begin(), run.train_folds.end());
            CHECK(covered.size() == static_cast<size_t>(folds));
            CHECK(run.test_fold == (run.val_fold + 1) % folds);
        }
        CHECK(vals.size() == static_cast<size_t>(folds));
        CHECK(tests.size() == static_cast<size_t>(folds));
    }
    // minimal case: one train fold per run
    for (const auto& run : fold_plan(3).assignments) {
        CHECK(run.train_folds.size() == 1);
    }
    CHECK_THROWS_AS(fold_plan(2), Error);
    CHECK_THROWS_AS(fold_plan(0), Error);
}

TEST_CASE("collapse verdicts at the default thresholds") {
    CHECK(detect_collapse(std::vector<bool>(10, false)).verdict == CollapseVerdict::Collapsed);
    CHECK(detect_collapse(std::vector<bool>(10, true)).verdict ==
          CollapseVerdict::NotCollapsed);

    std::vector<bool> half(10, false);
    for (int i = 0; i < 5; ++i) {
        half[i] = true;
    }
    const CollapseReport report = detect_collapse(half);
    CHECK(report.verdict == CollapseVerdict::Inconclusive);
    CHECK(report.num_trials == 10);
    CHECK(report.num_significant == 5);
    CHECK(report.significant_fraction() == doctest::Approx(0.5));

    CHECK_THROWS_AS(detect_collapse({true}), Error);
    CHECK_THROWS_AS(detect_collapse(half, 0.9, 0.1), Error);
}

TEST_CASE("chi2 trial variant applies the significance test first") {
    // 5.0 is significant at alpha=0.05, 1.0 is not
    const CollapseReport report = detect_collapse_chi2({5.0, 5.0, 1.0, 5.0, 5.0}, 0.05);
    CHECK(report.num_significant == 4);
    CHECK(report.verdict == CollapseVerdict::NotCollapsed);
    CHECK_THROWS_AS(detect_collapse_chi2({-1.0, 2.0}, 0.05), Error);
}

TEST_CASE("adding a significant trial never moves the verdict toward collapsed") {
    const auto rank = [](CollapseVerdict verdict) {
        switch (verdict) {
            case CollapseVerdict::Collapsed:
                return 0;
            case CollapseVerdict::Inconclusive:
                return 1;
            case CollapseVerdict::NotCollapsed:
                return 2;
        }
        return 1;
    };
    Rng rng(67);
    for (int round = 0; round < 200; ++round) {
        const size_t trials = 2 + rng.below(30);
        std::vector<bool> results;
        for (size_t t = 0; t < trials; ++t) {
            results.push_back(rng.below(2) == 1);
        }
        const int before = rank(detect_collapse(results).verdict);
        results.push_back(true);
        const int after = rank(detect_collapse(results).verdict);
        CHECK(after >= before);
    }
}

TEST_CASE("subsample trials on identical and perfectly disagreeing predictions") {
    std::string all_one(100, '1');
    std::string all_zero(100, '0');

    const auto identical = from_strings(all_one, all_one);
    for (bool significant : subsample_trials(identical, 50, 10, 0.05, 3)) {
        CHECK_FALSE(significant);
    }
    CHECK(detect_collapse(subsample_trials(identical, 50, 10, 0.05, 3)).verdict ==
          CollapseVerdict::Collapsed);

    const auto disagreement = from_strings(all_one, all_zero);
    for (bool significant : subsample_trials(disagreement, 50, 10, 0.05, 3)) {
        CHECK(significant);  // chi2 == 50 in every trial
    }
    CHECK(detect_collapse(subsample_trials(disagreement, 50, 10, 0.05, 3)).verdict ==
          CollapseVerdict::NotCollapsed);
}

TEST_CASE("trial significant fraction tracks the subset-enumeration oracle") {
    const auto pred = from_strings("110101", "011100");
    const auto exact = oracle::exact_power(pred, 4);

    const int64_t trials = 4000;
    const auto results = subsample_trials(pred, 4, trials, 0.05, 29);
    int64_t significant = 0;
    for (bool s : results) {
        significant += s ? 1 : 0;
    }
    const double fraction = static_cast<double>(significant) / static_cast<double>(trials);
    const double sigma =
        std::sqrt(exact.power * (1.0 - exact.power) / static_cast<double>(trials));
    CHECK(std::fabs(fraction - exact.power) <= 3.0 * sigma + 1e-12);
}

TEST_CASE("subsample trial preconditions and determinism") {
    const auto pred = from_strings("110101", "011100");
    CHECK_THROWS_AS(subsample_trials(pred, 7, 10, 0.05, 1), Error);
    CHECK_THROWS_AS(subsample_trials(pred, 0, 10, 0.05, 1), Error);
    CHECK_THROWS_AS(subsample_trials(pred, 4, 1, 0.05, 1), Error);

    const auto first = subsample_trials(pred, 4, 50, 0.05, 9);
    const auto second = subsample_trials(pred, 4, 50, 0.05, 9);
    CHECK(first == second);
}

TEST_CASE("zero-gap synthetic comparison collapses with certainty") {
    // identical configurations: every trial is non-significant
    std::string pattern = "1101001110";
    const auto pred = from_strings(pattern, pattern);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto trials = subsample_trials(pred, 5, 10, 0.05, seed);
        CHECK(detect_collapse(trials).verdict == CollapseVerdict::Collapsed);
    }
}
