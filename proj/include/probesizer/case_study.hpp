#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probesizer/collapse.hpp"
#include "probesizer/core.hpp"
#include "probesizer/dataset.hpp"
#include "probesizer/sizer.hpp"
#include "probesizer/stats.hpp"
#include "probesizer/trainer.hpp"

namespace probesizer {

enum class CaseStudyKind {
    BoundCheck,            // one configuration, margin overlay over the size grid
    GaussianNoise,         // clean vs noise-corrupted representations
    CorruptedEncoder,      // clean vs degraded synthetic encoder
    EncoderComparison,     // two synthetic encoders over the same items
    ClassifierComparison,  // two probe architectures on one dataset
};

const char* case_study_kind_name(CaseStudyKind kind);
CaseStudyKind case_study_kind_from_name(const std::string& name);

struct CaseStudyParams {
    int num_seeds = 5;
    std::vector<int> per_class_train_grid = {128, 512, 2048, 8192, 32768};
    std::vector<double> noise_grid = {0.01, 0.03, 0.1, 0.3, 1.0, 3.0};

    // Base synthetic encoder. The separation-to-noise ratio is set so that
    // even the smallest corruption in the noise grid shifts the reachable
    // accuracy by a few percent, which keeps the power curves rising in the
    // test size instead of being swamped by small-sample training noise.
    int num_classes = 2;
    int dim = 8;
    double class_separation = 0.6;
    double noise_floor = 0.1414213562373095;  // sqrt(0.02)

    // Second encoder (corrupted/encoder-comparison kinds). Non-positive
    // values fall back to the base encoder's.
    double separation_b = 0.35;
    double noise_floor_b = -1.0;
    int dim_b = -1;
    double corruption_noise = 0.01;  // extra variance for the corrupted pool

    // Probes.
    int mlp_hidden_units = 20;
    bool identical_classifiers = false;

    // Analysis.
    double delta = kDefaultDelta;
    double eta = kDefaultEta;
    double alpha = kDefaultAlpha;
    int64_t num_sims_per_seed = kDefaultSimsPerSeed;
    int bits_per_param = kDefaultBitsPerParam;
    double power_target = 0.8;
    int64_t collapse_trials = kDefaultCollapseTrials;
    double collapsed_below = kDefaultCollapsedBelow;
    double not_collapsed_at = kDefaultNotCollapsedAt;

    // Trainer grid (desk-scale defaults; the full search space is available
    // through the config file).
    std::vector<double> trainer_learning_rates = {5e-3, 1e-2};
    std::vector<int> trainer_batch_sizes = {64};
    int trainer_max_epochs = 30;
    int trainer_patience = 5;

    void validate() const;
    int pool_samples_per_class() const;  // enough for the largest grid entry
    TrainerConfig trainer_for(const ClassifierSpec& model) const;
};

// Paired training of two configurations over shared test items.
struct PairedRunResult {
    std::vector<double> acc_a;  // per seed
    std::vector<double> acc_b;
    int64_t n_train = 0;
    int64_t n_test = 0;
    bool any_degenerate = false;
    std::vector<std::string> item_ids;
    std::vector<int64_t> seeds;
    std::vector<uint8_t> correct_a;  // seed x item
    std::vector<uint8_t> correct_b;

    PairedPredictions predictions() const;
};

PairedRunResult run_paired_probes(const RepresentationDataset& ds_a,
                                  const RepresentationDataset& ds_b,
                                  const TrainerConfig& cfg_a, const TrainerConfig& cfg_b,
                                  int num_seeds, uint64_t rng_seed);

struct AccuracyCell {
    std::string config;  // "a" or "b"
    double sigma2 = 0.0;
    int per_class_train = 0;
    int64_t n_train = 0;
    int64_t n_test = 0;
    int seed_index = 0;
    double test_accuracy = 0.0;
};

struct MarginRow {
    std::string config;
    double sigma2 = 0.0;
    int per_class_train = 0;
    int64_t n_train = 0;
    double mean_accuracy = 0.0;
    double stdev = 0.0;
    double theoretical_margin = 0.0;
    int covered_seeds = 0;
    int total_seeds = 0;
};

struct PowerRow {
    double sigma2 = 0.0;
    int per_class_train = 0;
    PowerEstimate estimate;
};

struct RecommendationRow {
    double sigma2 = 0.0;
    int per_class_train = 0;
    int64_t n_test = 0;
    double mean_gap = 0.0;
    bool collapsed_gap = false;  // zero pilot gap, no size recommendation
    Recommendation recommendation;
};

struct CaseStudyReport {
    CaseStudyKind kind = CaseStudyKind::BoundCheck;
    CaseStudyParams params;
    uint64_t rng_seed = 0;

    std::vector<AccuracyCell> accuracy;
    std::vector<MarginRow> margins;
    std::vector<PowerRow> power;
    std::vector<RecommendationRow> recommendations;

    double margin_coverage = 1.0;  // fraction of seeds inside mean +- margin
    // sigma2 (or 0 for single comparisons) -> smallest test size reaching the
    // power target, -1 when never reached.
    std::map<double, int64_t> min_test_size_for_power;
    std::optional<CollapseReport> collapse;
};

CaseStudyReport run_case_study(CaseStudyKind kind, const CaseStudyParams& params,
                               uint64_t rng_seed);

// Parse a JSON object of parameter overrides; unknown keys are rejected.
// An empty document keeps every default.
CaseStudyParams case_study_params_from_json(const std::string& json_text);

// Writes report.json, accuracy.csv, margins.csv, power.csv,
// recommendations.csv (and plots/*.svg when with_plots) into dir.
void write_case_study_artifacts(const CaseStudyReport& report, const std::string& dir,
                                bool with_plots);

std::string case_study_summary_json(const CaseStudyReport& report);

}  // namespace probesizer
