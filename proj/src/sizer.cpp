#include "probesizer/sizer.hpp"

#include <algorithm>
#include <cmath>

namespace probesizer {

int64_t required_train_size(double epsilon, double delta, double metric_range,
                            const FunctionClassSpec& spec) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        fail_validation("epsilon must be positive");
    }
    if (!(metric_range > 0.0) || !std::isfinite(metric_range)) {
        fail_validation("metric range must be positive and finite");
    }
    if (epsilon > metric_range) {
        fail_validation("comparison gap exceeds metric range");
    }
    const double term = two_log_term(delta, spec);
    const double raw = term * metric_range * metric_range / (epsilon * epsilon);
    auto n = static_cast<int64_t>(std::ceil(raw));
    n = std::max<int64_t>(n, 1);
    // The closed form can land one off at floating-point boundaries; nudge to
    // the definitional answer (smallest n whose margin does not exceed eps).
    while (finite_class_margin(n, delta, metric_range, spec) > epsilon) {
        ++n;
    }
    while (n > 1 && finite_class_margin(n - 1, delta, metric_range, spec) <= epsilon) {
        --n;
    }
    return n;
}

int64_t total_size(int64_t n_train, double eta) {
    if (n_train < 1) {
        fail_validation("n_train must be >= 1");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        fail_validation("eta must be positive");
    }
    const double total = (1.0 + 2.0 / eta) * static_cast<double>(n_train);
    return static_cast<int64_t>(std::ceil(total));
}

Recommendation recommend(const std::vector<PerformancePair>& pilot,
                         const ComparisonProblem& problem,
                         const RecommendOptions& options) {
    SplitSpec split{options.eta};
    split.validate();
    for (const auto& pair : pilot) {
        pair.validate();
    }

    const double gap = options.gap_mode == GapMode::MeanOfGaps ? mean_gap(pilot)
                                                               : gap_of_means(pilot);
    if (gap <= 0.0) {
        fail_collapsed(
            "pilot performances are identical (zero gap): run collapse detection "
            "before sizing this comparison");
    }

    const auto spec_a = FunctionClassSpec::from_classifier(problem.config_a().classifier,
                                                           options.bits_per_param);
    const auto spec_b = FunctionClassSpec::from_classifier(problem.config_b().classifier,
                                                           options.bits_per_param);

    Recommendation rec;
    rec.gap = gap;
    rec.epsilon = gap / 2.0;
    rec.eta = options.eta;
    // The larger hypothesis space drives the requirement.
    const int64_t n_a = required_train_size(rec.epsilon, options.delta,
                                            kAccuracyMetricRange, spec_a);
    const int64_t n_b = required_train_size(rec.epsilon, options.delta,
                                            kAccuracyMetricRange, spec_b);
    if (n_a >= n_b) {
        rec.n_train = n_a;
        rec.class_spec_used = spec_a;
    } else {
        rec.n_train = n_b;
        rec.class_spec_used = spec_b;
    }
    rec.n_total = total_size(rec.n_train, options.eta);
    rec.collapse_warning = options.collapsed.value_or(false);
    return rec;
}

}  // namespace probesizer
