/* probesizer — planning and auditing paired-classifier comparison experiments.
 *
 * C interface to the probesizer core. All functions return a ps_status;
 * on failure ps_last_error() carries a thread-local message describing the
 * violated precondition. Opaque handles are created and released with the
 * matching *_create/_read and *_free calls.
 */
#ifndef PROBESIZER_H
#define PROBESIZER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PS_API __declspec(dllexport)
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
    PS_OK = 0,
    PS_ERROR_INTERNAL = 1,
    PS_ERROR_VALIDATION = 2,
    PS_ERROR_COLLAPSED = 3,
    PS_ERROR_IO = 4
} ps_status;

/* Message for the most recent failure on this thread. */
PS_API const char* ps_last_error(void);
PS_API const char* ps_version(void);

/* ---------------- classifiers and bounds ---------------- */

typedef enum ps_classifier_kind {
    PS_CLASSIFIER_LOGREG = 0,
    PS_CLASSIFIER_MLP = 1
} ps_classifier_kind;

typedef struct ps_classifier_spec {
    ps_classifier_kind kind;
    int32_t input_dim;
    int32_t hidden_units; /* 0 for logistic regression */
    int32_t num_classes;
} ps_classifier_spec;

PS_API ps_status ps_parameter_count(const ps_classifier_spec* spec, int64_t* out_count);

typedef enum ps_bound_adapter {
    PS_BOUND_PLAIN = 0,
    PS_BOUND_CONTROL_TASK = 1,
    PS_BOUND_VARIATIONAL_MDL = 2,
    PS_BOUND_PREQUENTIAL_MDL = 3
} ps_bound_adapter;

typedef struct ps_bound_query {
    int64_t n;
    double delta;               /* <= 0 selects the default 1e-8 */
    double metric_range;        /* <= 0 selects the accuracy default (1.0);
                                   the MDL adapters require an explicit cap */
    int64_t param_count;
    int32_t bits_per_param;     /* <= 0 selects the default 32 */
    ps_bound_adapter adapter;
    double control_delta;       /* <= 0: reuse delta */
    double prequential_c;       /* <= 0: default 1.0 */
    double prequential_t1_fraction; /* <= 0: default 0.001 */
} ps_bound_query;

typedef struct ps_bound_result {
    double margin;
    double effective_delta;
    int32_t loose; /* 1 for the prequential adapter */
} ps_bound_result;

PS_API ps_status ps_bound_margin(const ps_bound_query* query, ps_bound_result* out);

PS_API ps_status ps_required_train_size(double epsilon, double delta, double metric_range,
                                        int64_t param_count, int32_t bits_per_param,
                                        int64_t* out_n);

PS_API ps_status ps_total_size(int64_t n_train, double eta, int64_t* out_total);

typedef struct ps_recommendation {
    double mean_gap;
    double epsilon;
    int64_t n_train;
    int64_t n_total;
    double eta;
    int64_t param_count_used;
    int32_t bits_per_param;
    int32_t collapse_warning;
} ps_recommendation;

/* r1/r2 hold one performance per pilot run (accuracy-family, in [0,1]).
 * gap_of_means selects |mean(r1)-mean(r2)| instead of mean |r1-r2|.
 * collapse_flag: -1 no pre-check ran, 0 not collapsed, 1 collapsed
 * (a collapsed comparison is still sized but flagged meaningless). */
PS_API ps_status ps_recommend(const double* r1, const double* r2, size_t num_pairs,
                              const ps_classifier_spec* spec_a,
                              const ps_classifier_spec* spec_b, double delta, double eta,
                              int32_t bits_per_param, int32_t gap_of_means,
                              int32_t collapse_flag, ps_recommendation* out);

/* ---------------- paired predictions ---------------- */

typedef struct ps_predictions ps_predictions;

/* correct_a/correct_b are row-major (num_seeds x num_items) 0/1 matrices. */
PS_API ps_status ps_predictions_create(const char* const* item_ids, size_t num_items,
                                       const int64_t* seeds, size_t num_seeds,
                                       const uint8_t* correct_a, const uint8_t* correct_b,
                                       ps_predictions** out);
PS_API ps_status ps_predictions_read_csv(const char* path, ps_predictions** out);
PS_API ps_status ps_predictions_write_csv(const ps_predictions* pred, const char* path);
PS_API void ps_predictions_free(ps_predictions* pred);

PS_API size_t ps_predictions_num_items(const ps_predictions* pred);
PS_API size_t ps_predictions_num_seeds(const ps_predictions* pred);
PS_API ps_status ps_predictions_seed_ids(const ps_predictions* pred, int64_t* out_seeds);
/* Per-seed accuracies of both configurations; arrays sized num_seeds. */
PS_API ps_status ps_predictions_accuracy_pairs(const ps_predictions* pred, double* out_r1,
                                               double* out_r2);

/* ---------------- significance and power ---------------- */

typedef struct ps_contingency_table {
    int64_t n00; /* both incorrect */
    int64_t n01; /* A incorrect, B correct */
    int64_t n10; /* A correct, B incorrect */
    int64_t n11; /* both correct */
} ps_contingency_table;

PS_API ps_status ps_contingency(const ps_predictions* pred, int64_t seed_id,
                                ps_contingency_table* out);
PS_API ps_status ps_mcnemar_chi2(const ps_contingency_table* table, double* out_chi2);
PS_API ps_status ps_chi2_critical_1df(double alpha, double* out_critical);
PS_API ps_status ps_is_significant(double chi2, double alpha, int32_t* out_significant);

typedef enum ps_subsample_mode {
    PS_SUBSAMPLE_AUTO = 0, /* without replacement below the pool, bootstrap at it */
    PS_SUBSAMPLE_WITHOUT_REPLACEMENT = 1,
    PS_SUBSAMPLE_BOOTSTRAP = 2
} ps_subsample_mode;

typedef struct ps_power_estimate {
    double power;
    int64_t num_simulations;
    int64_t num_significant;
    double alpha;
    int64_t subsample_size;
} ps_power_estimate;

PS_API ps_status ps_estimate_power(const ps_predictions* pred, int64_t subsample_size,
                                   int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                                   ps_subsample_mode mode, ps_power_estimate* out);

/* sizes must be strictly increasing; out holds num_sizes estimates. */
PS_API ps_status ps_power_curve(const ps_predictions* pred, const int64_t* sizes,
                                size_t num_sizes, int64_t num_sims_per_seed, double alpha,
                                uint64_t rng_seed, ps_subsample_mode mode,
                                ps_power_estimate* out);

/* out_gaps sized n; best-minus-value per observation (accuracy-like: best = max). */
PS_API ps_status ps_suboptimality_gap(const double* observed, size_t n, double* out_best,
                                      double* out_gaps);

/* ---------------- collapse detection ---------------- */

typedef enum ps_collapse_verdict {
    PS_COLLAPSED = 0,
    PS_NOT_COLLAPSED = 1,
    PS_INCONCLUSIVE = 2
} ps_collapse_verdict;

typedef struct ps_collapse_report {
    int64_t num_trials;
    int64_t num_significant;
    ps_collapse_verdict verdict;
    double collapsed_below;
    double not_collapsed_at;
} ps_collapse_report;

/* out_significant sized num_trials (0/1 per trial). */
PS_API ps_status ps_subsample_trials(const ps_predictions* pred, int64_t trial_size,
                                     int64_t num_trials, double alpha, uint64_t rng_seed,
                                     uint8_t* out_significant);

PS_API ps_status ps_detect_collapse(const uint8_t* significant, size_t num_trials,
                                    double collapsed_below, double not_collapsed_at,
                                    ps_collapse_report* out);

typedef struct ps_fold_assignment {
    int32_t run_index;
    int32_t val_fold;
    int32_t test_fold;
} ps_fold_assignment;

/* out sized num_folds; run i validates on fold i, tests on (i+1) mod F,
 * trains on the remaining folds. */
PS_API ps_status ps_fold_plan(int32_t num_folds, ps_fold_assignment* out);

/* ---------------- synthetic case studies ---------------- */

/* kind: bound-check | gaussian-noise | corrupted-encoder |
 *       encoder-comparison | classifier-comparison.
 * params_json: JSON object overriding case-study defaults (empty or NULL for
 * defaults); unknown keys are rejected. Writes the artifact files into
 * out_dir (with_plots adds SVG charts) and, when out_summary_json is
 * non-NULL, returns a summary document to free with ps_string_free. */
PS_API ps_status ps_run_case_study(const char* kind, const char* params_json,
                                   const char* out_dir, uint64_t rng_seed, int32_t with_plots,
                                   char** out_summary_json);

PS_API void ps_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PROBESIZER_H */
