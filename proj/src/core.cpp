#include "probesizer/core.hpp"

#include <cmath>
#include <unordered_set>

namespace probesizer {

void ClassifierSpec::validate() const {
    if (input_dim < 0) {
        fail_validation("classifier input_dim must be >= 0");
    }
    if (num_classes < 2) {
        fail_validation("classifier num_classes must be >= 2");
    }
    if (kind == ClassifierKind::LogisticRegression && hidden_units != 0) {
        fail_validation("logistic regression must have hidden_units == 0");
    }
    if (kind == ClassifierKind::Mlp && hidden_units < 1) {
        fail_validation("mlp must have hidden_units >= 1");
    }
}

ClassifierSpec logreg_spec(int input_dim, int num_classes) {
    ClassifierSpec spec{ClassifierKind::LogisticRegression, input_dim, 0, num_classes};
    spec.validate();
    return spec;
}

ClassifierSpec mlp_spec(int input_dim, int hidden_units, int num_classes) {
    ClassifierSpec spec{ClassifierKind::Mlp, input_dim, hidden_units, num_classes};
    spec.validate();
    return spec;
}

int64_t parameter_count(const ClassifierSpec& spec) {
    spec.validate();
    const int64_t d = spec.input_dim;
    if (spec.kind == ClassifierKind::LogisticRegression) {
        return d + 1;
    }
    const int64_t h = spec.hidden_units;
    return (d + 1) * h + h + 1;
}

void ProbingConfiguration::validate() const {
    if (task_id.empty()) {
        fail_validation("probing configuration task_id must be non-empty");
    }
    classifier.validate();
}

ComparisonProblem::ComparisonProblem(ProbingConfiguration config_a, ProbingConfiguration config_b)
    : config_a_(std::move(config_a)), config_b_(std::move(config_b)) {
    config_a_.validate();
    config_b_.validate();
    if (config_a_.task_id != config_b_.task_id) {
        fail_validation("comparison requires a shared task: got '" + config_a_.task_id +
                        "' vs '" + config_b_.task_id + "'");
    }
}

PairedPredictions::PairedPredictions(std::vector<std::string> item_ids,
                                     std::vector<int64_t> seeds,
                                     std::vector<uint8_t> correct_a,
                                     std::vector<uint8_t> correct_b)
    : item_ids_(std::move(item_ids)),
      seeds_(std::move(seeds)),
      correct_a_(std::move(correct_a)),
      correct_b_(std::move(correct_b)) {
    if (item_ids_.empty()) {
        fail_validation("paired predictions need at least one item");
    }
    if (seeds_.empty()) {
        fail_validation("paired predictions need at least one seed");
    }
    const size_t expected = item_ids_.size() * seeds_.size();
    if (correct_a_.size() != expected || correct_b_.size() != expected) {
        fail_validation("correctness matrices must both be (num_seeds x num_items)");
    }
    std::unordered_set<std::string> unique_items(item_ids_.begin(), item_ids_.end());
    if (unique_items.size() != item_ids_.size()) {
        fail_validation("item ids must be unique");
    }
    std::unordered_set<int64_t> unique_seeds(seeds_.begin(), seeds_.end());
    if (unique_seeds.size() != seeds_.size()) {
        fail_validation("seed ids must be unique");
    }
}

size_t PairedPredictions::seed_index(int64_t seed_id) const {
    for (size_t i = 0; i < seeds_.size(); ++i) {
        if (seeds_[i] == seed_id) {
            return i;
        }
    }
    fail_validation("unknown seed id " + std::to_string(seed_id));
}

double PairedPredictions::accuracy_a(size_t seed_index) const {
    size_t correct = 0;
    for (size_t i = 0; i < num_items(); ++i) {
        correct += this->correct_a(seed_index, i) ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(num_items());
}

double PairedPredictions::accuracy_b(size_t seed_index) const {
    size_t correct = 0;
    for (size_t i = 0; i < num_items(); ++i) {
        correct += this->correct_b(seed_index, i) ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(num_items());
}

void SplitSpec::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        fail_validation("eta must be a positive finite ratio");
    }
}

void PerformancePair::validate(double metric_range) const {
    if (!std::isfinite(r1) || !std::isfinite(r2)) {
        fail_validation("performance values must be finite");
    }
    if (metric_range > 0.0) {
        if (r1 < 0.0 || r1 > metric_range || r2 < 0.0 || r2 > metric_range) {
            fail_validation("performance values must lie in [0, metric_range]");
        }
    }
}

double mean_gap(const std::vector<PerformancePair>& pilot) {
    if (pilot.empty()) {
        fail_validation("pilot performance list must be non-empty");
    }
    double sum = 0.0;
    for (const auto& pair : pilot) {
        sum += std::fabs(pair.r1 - pair.r2);
    }
    return sum / static_cast<double>(pilot.size());
}

double gap_of_means(const std::vector<PerformancePair>& pilot) {
    if (pilot.empty()) {
        fail_validation("pilot performance list must be non-empty");
    }
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (const auto& pair : pilot) {
        sum1 += pair.r1;
        sum2 += pair.r2;
    }
    const auto n = static_cast<double>(pilot.size());
    return std::fabs(sum1 / n - sum2 / n);
}

}  // namespace probesizer
