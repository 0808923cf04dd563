#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probesizer/error.hpp"

namespace probesizer {

enum class ClassifierKind { LogisticRegression, Mlp };

// Shape of a probing classifier's hypothesis space. hidden_units must be 0
// for logistic regression and >= 1 for the MLP.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::LogisticRegression;
    int input_dim = 0;
    int hidden_units = 0;
    int num_classes = 2;

    void validate() const;
};

ClassifierSpec logreg_spec(int input_dim, int num_classes = 2);
ClassifierSpec mlp_spec(int input_dim, int hidden_units, int num_classes = 2);

// Weight-count convention used for bound accounting: LogReg counts D+1,
// MLP counts (D+1)*H + H + 1. Independent of the number of classes.
int64_t parameter_count(const ClassifierSpec& spec);

// One (task, encoder, classifier) triple.
struct ProbingConfiguration {
    std::string task_id;
    std::string encoder_id;
    ClassifierSpec classifier;

    void validate() const;
};

// A pair of configurations under comparison. Construction rejects mismatched
// tasks: the paired test downstream needs a shared item set.
class ComparisonProblem {
public:
    ComparisonProblem(ProbingConfiguration config_a, ProbingConfiguration config_b);

    const ProbingConfiguration& config_a() const noexcept { return config_a_; }
    const ProbingConfiguration& config_b() const noexcept { return config_b_; }

private:
    ProbingConfiguration config_a_;
    ProbingConfiguration config_b_;
};

// Per-item, per-seed correctness of two configurations on a shared test set.
// Matrices are row-major (seed x item).
class PairedPredictions {
public:
    PairedPredictions(std::vector<std::string> item_ids,
                      std::vector<int64_t> seeds,
                      std::vector<uint8_t> correct_a,
                      std::vector<uint8_t> correct_b);

    size_t num_items() const noexcept { return item_ids_.size(); }
    size_t num_seeds() const noexcept { return seeds_.size(); }
    const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
    const std::vector<int64_t>& seeds() const noexcept { return seeds_; }

    bool correct_a(size_t seed_index, size_t item_index) const {
        return correct_a_[seed_index * item_ids_.size() + item_index] != 0;
    }
    bool correct_b(size_t seed_index, size_t item_index) const {
        return correct_b_[seed_index * item_ids_.size() + item_index] != 0;
    }

    const std::vector<uint8_t>& raw_a() const noexcept { return correct_a_; }
    const std::vector<uint8_t>& raw_b() const noexcept { return correct_b_; }

    // Index of a seed id; throws when absent.
    size_t seed_index(int64_t seed_id) const;

    // Accuracy of each side for one seed row.
    double accuracy_a(size_t seed_index) const;
    double accuracy_b(size_t seed_index) const;

private:
    std::vector<std::string> item_ids_;
    std::vector<int64_t> seeds_;
    std::vector<uint8_t> correct_a_;
    std::vector<uint8_t> correct_b_;
};

// Train : validation : test = eta : 1 : 1.
struct SplitSpec {
    double eta = 4.0;

    void validate() const;
};

enum class MetricKind { Accuracy, ControlTaskGap, VariationalMdl, PrequentialMdl };

// Metric range (the B in the bound) for bounded metrics; MDL codelengths are
// unbounded and require an explicit caller-supplied cap.
constexpr double kAccuracyMetricRange = 1.0;

struct PerformancePair {
    double r1 = 0.0;
    double r2 = 0.0;
    MetricKind metric = MetricKind::Accuracy;

    // metric_range <= 0 means "unbounded, skip the range check".
    void validate(double metric_range = kAccuracyMetricRange) const;
};

// Arithmetic mean of |r1 - r2| across pilot runs.
double mean_gap(const std::vector<PerformancePair>& pilot);

// Alternative aggregation: |mean(r1) - mean(r2)|.
double gap_of_means(const std::vector<PerformancePair>& pilot);

}  // namespace probesizer
