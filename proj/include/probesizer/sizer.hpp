#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "probesizer/bounds.hpp"
#include "probesizer/core.hpp"

namespace probesizer {

constexpr double kDefaultEta = 4.0;
constexpr int kDefaultBitsPerParam = 32;

// Smallest n with finite_class_margin(n, delta, B, spec) <= epsilon.
int64_t required_train_size(double epsilon, double delta, double metric_range,
                            const FunctionClassSpec& spec);

// ceil((1 + 2/eta) * n_train): total collection under an eta:1:1 split.
int64_t total_size(int64_t n_train, double eta);

enum class GapMode { MeanOfGaps, GapOfMeans };

struct Recommendation {
    double epsilon = 0.0;
    double gap = 0.0;
    int64_t n_train = 0;
    int64_t n_total = 0;
    double eta = kDefaultEta;
    FunctionClassSpec class_spec_used;
    bool collapse_warning = false;
};

struct RecommendOptions {
    double delta = kDefaultDelta;
    double eta = kDefaultEta;
    int bits_per_param = kDefaultBitsPerParam;
    GapMode gap_mode = GapMode::MeanOfGaps;
    // Verdict from a collapse pre-check, when one was run. A collapsed
    // comparison still yields a recommendation, flagged as meaningless.
    std::optional<bool> collapsed;
};

// Invert the bound for a pilot study: epsilon = gap/2, the class spec is the
// larger of the two configurations' spaces, and the total adds the eta:1:1
// validation and test shares.
Recommendation recommend(const std::vector<PerformancePair>& pilot,
                         const ComparisonProblem& problem,
                         const RecommendOptions& options = {});

}  // namespace probesizer
