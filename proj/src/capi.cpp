#include "probesizer.h"

#include <cstring>
#include <new>
#include <string>

#include "probesizer/bounds.hpp"
#include "probesizer/case_study.hpp"
#include "probesizer/chi_square.hpp"
#include "probesizer/collapse.hpp"
#include "probesizer/core.hpp"
#include "probesizer/predictions_io.hpp"
#include "probesizer/sizer.hpp"
#include "probesizer/stats.hpp"

using namespace probesizer;

struct ps_predictions {
    PairedPredictions impl;
};

namespace {

thread_local std::string g_last_error;

ps_status set_error(ErrorCode code, const char* message) {
    g_last_error = message;
    return static_cast<ps_status>(static_cast<int>(code));
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
ps_status guarded(Fn&& fn) {
    try {
        fn();
        return PS_OK;
    } catch (const Error& e) {
        return set_error(e.code(), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(ErrorCode::Internal, "out of memory");
    } catch (const std::exception& e) {
        return set_error(ErrorCode::Internal, e.what());
    }
}

ps_status require(bool ok, const char* message) {
    return ok ? PS_OK : set_error(ErrorCode::Validation, message);
}

ClassifierSpec to_spec(const ps_classifier_spec& c) {
    ClassifierSpec spec;
    spec.kind = c.kind == PS_CLASSIFIER_MLP ? ClassifierKind::Mlp
                                            : ClassifierKind::LogisticRegression;
    spec.input_dim = c.input_dim;
    spec.hidden_units = c.hidden_units;
    spec.num_classes = c.num_classes;
    return spec;
}

SubsampleMode to_mode(ps_subsample_mode mode) {
    switch (mode) {
        case PS_SUBSAMPLE_WITHOUT_REPLACEMENT:
            return SubsampleMode::WithoutReplacement;
        case PS_SUBSAMPLE_BOOTSTRAP:
            return SubsampleMode::Bootstrap;
        case PS_SUBSAMPLE_AUTO:
        default:
            return SubsampleMode::Auto;
    }
}

void fill_estimate(const PowerEstimate& estimate, ps_power_estimate* out) {
    out->power = estimate.power;
    out->num_simulations = estimate.num_simulations;
    out->num_significant = estimate.num_significant;
    out->alpha = estimate.alpha;
    out->subsample_size = estimate.subsample_size;
}

}  // namespace

extern "C" {

const char* ps_last_error(void) { return g_last_error.c_str(); }

const char* ps_version(void) { return "1.0.0"; }

ps_status ps_parameter_count(const ps_classifier_spec* spec, int64_t* out_count) {
    if (ps_status s = require(spec && out_count, "spec and out_count must be non-null")) {
        return s;
    }
    return guarded([&] { *out_count = parameter_count(to_spec(*spec)); });
}

ps_status ps_bound_margin(const ps_bound_query* query, ps_bound_result* out) {
    if (ps_status s = require(query && out, "query and out must be non-null")) {
        return s;
    }
    return guarded([&] {
        BoundQuery q;
        q.n = query->n;
        q.delta = query->delta > 0.0 ? query->delta : kDefaultDelta;
        if (query->metric_range > 0.0) {
            q.metric_range = query->metric_range;
        }
        q.class_spec.param_count = query->param_count;
        q.class_spec.bits_per_param =
            query->bits_per_param > 0 ? query->bits_per_param : kDefaultBitsPerParam;
        switch (query->adapter) {
            case PS_BOUND_CONTROL_TASK:
                q.adapter = BoundAdapter::ControlTask;
                break;
            case PS_BOUND_VARIATIONAL_MDL:
                q.adapter = BoundAdapter::VariationalMdl;
                break;
            case PS_BOUND_PREQUENTIAL_MDL:
                q.adapter = BoundAdapter::PrequentialMdl;
                break;
            case PS_BOUND_PLAIN:
            default:
                q.adapter = BoundAdapter::Plain;
                break;
        }
        q.control_delta = query->control_delta;
        q.prequential_c =
            query->prequential_c > 0.0 ? query->prequential_c : kDefaultPrequentialC;
        q.prequential_t1_fraction = query->prequential_t1_fraction > 0.0
                                        ? query->prequential_t1_fraction
                                        : kDefaultPrequentialT1Fraction;
        const BoundResult result = evaluate_bound(q);
        out->margin = result.margin;
        out->effective_delta = result.effective_delta;
        out->loose = result.loose ? 1 : 0;
    });
}

ps_status ps_required_train_size(double epsilon, double delta, double metric_range,
                                 int64_t param_count, int32_t bits_per_param, int64_t* out_n) {
    if (ps_status s = require(out_n != nullptr, "out_n must be non-null")) {
        return s;
    }
    return guarded([&] {
        FunctionClassSpec spec{param_count,
                               bits_per_param > 0 ? bits_per_param : kDefaultBitsPerParam};
        *out_n = required_train_size(epsilon, delta > 0.0 ? delta : kDefaultDelta,
                                     metric_range > 0.0 ? metric_range : kAccuracyMetricRange,
                                     spec);
    });
}

ps_status ps_total_size(int64_t n_train, double eta, int64_t* out_total) {
    if (ps_status s = require(out_total != nullptr, "out_total must be non-null")) {
        return s;
    }
    return guarded([&] { *out_total = total_size(n_train, eta); });
}

ps_status ps_recommend(const double* r1, const double* r2, size_t num_pairs,
                       const ps_classifier_spec* spec_a, const ps_classifier_spec* spec_b,
                       double delta, double eta, int32_t bits_per_param, int32_t gap_of_means,
                       int32_t collapse_flag, ps_recommendation* out) {
    if (ps_status s = require(r1 && r2 && spec_a && spec_b && out && num_pairs > 0,
                              "recommend needs pilot pairs, both specs, and out")) {
        return s;
    }
    return guarded([&] {
        std::vector<PerformancePair> pilot;
        pilot.reserve(num_pairs);
        for (size_t i = 0; i < num_pairs; ++i) {
            pilot.push_back({r1[i], r2[i], MetricKind::Accuracy});
        }
        ComparisonProblem problem({"task", "encoder-a", to_spec(*spec_a)},
                                  {"task", "encoder-b", to_spec(*spec_b)});
        RecommendOptions options;
        options.delta = delta > 0.0 ? delta : kDefaultDelta;
        options.eta = eta > 0.0 ? eta : kDefaultEta;
        options.bits_per_param = bits_per_param > 0 ? bits_per_param : kDefaultBitsPerParam;
        options.gap_mode = gap_of_means ? GapMode::GapOfMeans : GapMode::MeanOfGaps;
        if (collapse_flag >= 0) {
            options.collapsed = collapse_flag != 0;
        }
        const Recommendation rec = recommend(pilot, problem, options);
        out->mean_gap = rec.gap;
        out->epsilon = rec.epsilon;
        out->n_train = rec.n_train;
        out->n_total = rec.n_total;
        out->eta = rec.eta;
        out->param_count_used = rec.class_spec_used.param_count;
        out->bits_per_param = rec.class_spec_used.bits_per_param;
        out->collapse_warning = rec.collapse_warning ? 1 : 0;
    });
}

ps_status ps_predictions_create(const char* const* item_ids, size_t num_items,
                                const int64_t* seeds, size_t num_seeds,
                                const uint8_t* correct_a, const uint8_t* correct_b,
                                ps_predictions** out) {
    if (ps_status s = require(item_ids && seeds && correct_a && correct_b && out,
                              "all prediction inputs must be non-null")) {
        return s;
    }
    return guarded([&] {
        std::vector<std::string> items(item_ids, item_ids + num_items);
        std::vector<int64_t> seed_ids(seeds, seeds + num_seeds);
        std::vector<uint8_t> a(correct_a, correct_a + num_items * num_seeds);
        std::vector<uint8_t> b(correct_b, correct_b + num_items * num_seeds);
        *out = new ps_predictions{PairedPredictions(std::move(items), std::move(seed_ids),
                                                    std::move(a), std::move(b))};
    });
}

ps_status ps_predictions_read_csv(const char* path, ps_predictions** out) {
    if (ps_status s = require(path && out, "path and out must be non-null")) {
        return s;
    }
    return guarded([&] { *out = new ps_predictions{read_predictions_csv(path)}; });
}

ps_status ps_predictions_write_csv(const ps_predictions* pred, const char* path) {
    if (ps_status s = require(pred && path, "pred and path must be non-null")) {
        return s;
    }
    return guarded([&] { write_predictions_csv(pred->impl, path); });
}

void ps_predictions_free(ps_predictions* pred) { delete pred; }

size_t ps_predictions_num_items(const ps_predictions* pred) {
    return pred ? pred->impl.num_items() : 0;
}

size_t ps_predictions_num_seeds(const ps_predictions* pred) {
    return pred ? pred->impl.num_seeds() : 0;
}

ps_status ps_predictions_seed_ids(const ps_predictions* pred, int64_t* out_seeds) {
    if (ps_status s = require(pred && out_seeds, "pred and out_seeds must be non-null")) {
        return s;
    }
    const auto& seeds = pred->impl.seeds();
    std::memcpy(out_seeds, seeds.data(), seeds.size() * sizeof(int64_t));
    return PS_OK;
}

ps_status ps_predictions_accuracy_pairs(const ps_predictions* pred, double* out_r1,
                                        double* out_r2) {
    if (ps_status s = require(pred && out_r1 && out_r2, "all arguments must be non-null")) {
        return s;
    }
    return guarded([&] {
        for (size_t seed = 0; seed < pred->impl.num_seeds(); ++seed) {
            out_r1[seed] = pred->impl.accuracy_a(seed);
            out_r2[seed] = pred->impl.accuracy_b(seed);
        }
    });
}

ps_status ps_contingency(const ps_predictions* pred, int64_t seed_id,
                         ps_contingency_table* out) {
    if (ps_status s = require(pred && out, "pred and out must be non-null")) {
        return s;
    }
    return guarded([&] {
        const ContingencyTable table = contingency(pred->impl, seed_id);
        out->n00 = table.n00;
        out->n01 = table.n01;
        out->n10 = table.n10;
        out->n11 = table.n11;
    });
}

ps_status ps_mcnemar_chi2(const ps_contingency_table* table, double* out_chi2) {
    if (ps_status s = require(table && out_chi2, "table and out_chi2 must be non-null")) {
        return s;
    }
    return guarded([&] {
        *out_chi2 = mcnemar_chi2(ContingencyTable{table->n00, table->n01, table->n10, table->n11});
    });
}

ps_status ps_chi2_critical_1df(double alpha, double* out_critical) {
    if (ps_status s = require(out_critical != nullptr, "out_critical must be non-null")) {
        return s;
    }
    return guarded([&] { *out_critical = chi_square_critical_1df(alpha); });
}

ps_status ps_is_significant(double chi2, double alpha, int32_t* out_significant) {
    if (ps_status s = require(out_significant != nullptr, "out_significant must be non-null")) {
        return s;
    }
    return guarded([&] { *out_significant = is_significant(chi2, alpha) ? 1 : 0; });
}

ps_status ps_estimate_power(const ps_predictions* pred, int64_t subsample_size,
                            int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                            ps_subsample_mode mode, ps_power_estimate* out) {
    if (ps_status s = require(pred && out, "pred and out must be non-null")) {
        return s;
    }
    return guarded([&] {
        fill_estimate(estimate_power(pred->impl, subsample_size, num_sims_per_seed, alpha,
                                     rng_seed, to_mode(mode)),
                      out);
    });
}

ps_status ps_power_curve(const ps_predictions* pred, const int64_t* sizes, size_t num_sizes,
                         int64_t num_sims_per_seed, double alpha, uint64_t rng_seed,
                         ps_subsample_mode mode, ps_power_estimate* out) {
    if (ps_status s =
            require(pred && sizes && out && num_sizes > 0, "pred, sizes, out must be non-null")) {
        return s;
    }
    return guarded([&] {
        const std::vector<int64_t> size_list(sizes, sizes + num_sizes);
        const PowerCurve curve =
            power_curve(pred->impl, size_list, num_sims_per_seed, alpha, rng_seed, to_mode(mode));
        for (size_t i = 0; i < curve.points.size(); ++i) {
            fill_estimate(curve.points[i].second, out + i);
        }
    });
}

ps_status ps_suboptimality_gap(const double* observed, size_t n, double* out_best,
                               double* out_gaps) {
    if (ps_status s = require(observed && out_best && out_gaps && n > 0,
                              "observed values, out_best, out_gaps must be non-null")) {
        return s;
    }
    return guarded([&] {
        const std::vector<double> values(observed, observed + n);
        const auto [best, gaps] = suboptimality_gap(values);
        *out_best = best;
        std::memcpy(out_gaps, gaps.data(), gaps.size() * sizeof(double));
    });
}

ps_status ps_subsample_trials(const ps_predictions* pred, int64_t trial_size,
                              int64_t num_trials, double alpha, uint64_t rng_seed,
                              uint8_t* out_significant) {
    if (ps_status s =
            require(pred && out_significant, "pred and out_significant must be non-null")) {
        return s;
    }
    return guarded([&] {
        const auto trials = subsample_trials(pred->impl, trial_size, num_trials, alpha, rng_seed);
        for (size_t i = 0; i < trials.size(); ++i) {
            out_significant[i] = trials[i] ? 1 : 0;
        }
    });
}

ps_status ps_detect_collapse(const uint8_t* significant, size_t num_trials,
                             double collapsed_below, double not_collapsed_at,
                             ps_collapse_report* out) {
    if (ps_status s = require(significant && out, "significant and out must be non-null")) {
        return s;
    }
    return guarded([&] {
        std::vector<bool> trials(num_trials);
        for (size_t i = 0; i < num_trials; ++i) {
            trials[i] = significant[i] != 0;
        }
        const CollapseReport report = detect_collapse(
            trials, collapsed_below > 0.0 ? collapsed_below : kDefaultCollapsedBelow,
            not_collapsed_at > 0.0 ? not_collapsed_at : kDefaultNotCollapsedAt);
        out->num_trials = report.num_trials;
        out->num_significant = report.num_significant;
        switch (report.verdict) {
            case CollapseVerdict::Collapsed:
                out->verdict = PS_COLLAPSED;
                break;
            case CollapseVerdict::NotCollapsed:
                out->verdict = PS_NOT_COLLAPSED;
                break;
            case CollapseVerdict::Inconclusive:
                out->verdict = PS_INCONCLUSIVE;
                break;
        }
        out->collapsed_below = report.collapsed_below;
        out->not_collapsed_at = report.not_collapsed_at;
    });
}

ps_status ps_fold_plan(int32_t num_folds, ps_fold_assignment* out) {
    if (ps_status s = require(out != nullptr, "out must be non-null")) {
        return s;
    }
    return guarded([&] {
        const FoldPlan plan = fold_plan(num_folds);
        for (size_t i = 0; i < plan.assignments.size(); ++i) {
            out[i].run_index = plan.assignments[i].run_index;
            out[i].val_fold = plan.assignments[i].val_fold;
            out[i].test_fold = plan.assignments[i].test_fold;
        }
    });
}

ps_status ps_run_case_study(const char* kind, const char* params_json, const char* out_dir,
                            uint64_t rng_seed, int32_t with_plots, char** out_summary_json) {
    if (ps_status s = require(kind && out_dir, "kind and out_dir must be non-null")) {
        return s;
    }
    return guarded([&] {
        const CaseStudyKind study_kind = case_study_kind_from_name(kind);
        const CaseStudyParams params =
            case_study_params_from_json(params_json ? params_json : "");
        const CaseStudyReport report = run_case_study(study_kind, params, rng_seed);
        write_case_study_artifacts(report, out_dir, with_plots != 0);
        if (out_summary_json) {
            const std::string summary = case_study_summary_json(report);
            char* buffer = new char[summary.size() + 1];
            std::memcpy(buffer, summary.c_str(), summary.size() + 1);
            *out_summary_json = buffer;
        }
    });
}

void ps_string_free(char* s) { delete[] s; }

}  // extern "C"
