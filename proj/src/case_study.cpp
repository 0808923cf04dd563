#include "probesizer/case_study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "probesizer/bounds.hpp"
#include "probesizer/rng.hpp"
#include "probesizer/svg.hpp"

namespace probesizer {

namespace {

using nlohmann::json;

// Stream namespaces within a case study.
enum : uint64_t {
    kStreamPoolA = 1,
    kStreamPoolB = 2,
    kStreamNoise = 3,
    kStreamSubsample = 4,
    kStreamTrainA = 5,
    kStreamTrainB = 6,
    kStreamPower = 7,
    kStreamCollapse = 8,
};

std::string fmt_double(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string fmt_short(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", v);
    return buffer;
}

}  // namespace

const char* case_study_kind_name(CaseStudyKind kind) {
    switch (kind) {
        case CaseStudyKind::BoundCheck:
            return "bound-check";
        case CaseStudyKind::GaussianNoise:
            return "gaussian-noise";
        case CaseStudyKind::CorruptedEncoder:
            return "corrupted-encoder";
        case CaseStudyKind::EncoderComparison:
            return "encoder-comparison";
        case CaseStudyKind::ClassifierComparison:
            return "classifier-comparison";
    }
    return "bound-check";
}

CaseStudyKind case_study_kind_from_name(const std::string& name) {
    if (name == "bound-check") {
        return CaseStudyKind::BoundCheck;
    }
    if (name == "gaussian-noise") {
        return CaseStudyKind::GaussianNoise;
    }
    if (name == "corrupted-encoder") {
        return CaseStudyKind::CorruptedEncoder;
    }
    if (name == "encoder-comparison") {
        return CaseStudyKind::EncoderComparison;
    }
    if (name == "classifier-comparison") {
        return CaseStudyKind::ClassifierComparison;
    }
    fail_validation("unknown case study kind '" + name + "'");
}

void CaseStudyParams::validate() const {
    if (num_seeds < 1) {
        fail_validation("case study needs num_seeds >= 1");
    }
    if (per_class_train_grid.empty()) {
        fail_validation("per_class_train_grid must be non-empty");
    }
    for (size_t i = 0; i < per_class_train_grid.size(); ++i) {
        if (per_class_train_grid[i] < 1) {
            fail_validation("per_class_train entries must be >= 1");
        }
        if (i > 0 && per_class_train_grid[i] <= per_class_train_grid[i - 1]) {
            fail_validation("per_class_train_grid must be strictly increasing");
        }
    }
    for (double s2 : noise_grid) {
        if (s2 < 0.0) {
            fail_validation("noise grid entries must be non-negative");
        }
    }
    SplitSpec{eta}.validate();
    if (!(power_target > 0.0) || !(power_target <= 1.0)) {
        fail_validation("power_target must lie in (0,1]");
    }
    SyntheticDatasetSpec base{num_classes, dim, 1, class_separation, noise_floor, 0};
    base.validate();
}

int CaseStudyParams::pool_samples_per_class() const {
    const int largest = per_class_train_grid.back();
    const auto eval = std::max<int64_t>(1, std::llround(static_cast<double>(largest) / eta));
    return static_cast<int>(largest + 2 * eval);
}

TrainerConfig CaseStudyParams::trainer_for(const ClassifierSpec& model) const {
    TrainerConfig cfg;
    cfg.learning_rates = trainer_learning_rates;
    cfg.batch_sizes = trainer_batch_sizes;
    cfg.max_epochs = trainer_max_epochs;
    cfg.patience = trainer_patience;
    cfg.model = model;
    cfg.validate();
    return cfg;
}

PairedPredictions PairedRunResult::predictions() const {
    return PairedPredictions(item_ids, seeds, correct_a, correct_b);
}

namespace {

struct SideRun {
    std::vector<double> acc;       // per seed
    std::vector<uint8_t> correct;  // seed x item
    std::vector<uint64_t> item_ids;
    int64_t n_train = 0;
    int64_t n_test = 0;
    bool any_degenerate = false;
};

SideRun run_side(const RepresentationDataset& subset, const TrainerConfig& cfg, int num_seeds,
                 uint64_t train_stream_base) {
    SideRun side;
    side.n_train = static_cast<int64_t>(subset.count_in_split(Split::Train));
    side.n_test = static_cast<int64_t>(subset.count_in_split(Split::Test));
    for (int s = 0; s < num_seeds; ++s) {
        const TrainedProbe probe =
            train_probe(subset, cfg, Rng::derive(train_stream_base, {static_cast<uint64_t>(s)}));
        if (s == 0) {
            side.item_ids = probe.test_item_ids;
        }
        side.acc.push_back(probe.test_accuracy);
        side.correct.insert(side.correct.end(), probe.test_correct.begin(),
                            probe.test_correct.end());
        side.any_degenerate = side.any_degenerate || probe.degenerate;
    }
    return side;
}

PairedRunResult assemble_pair(const SideRun& a, const SideRun& b, int num_seeds) {
    if (a.item_ids != b.item_ids) {
        fail_validation("paired configurations must share the test item set");
    }
    PairedRunResult pair;
    pair.acc_a = a.acc;
    pair.acc_b = b.acc;
    pair.n_train = a.n_train;
    pair.n_test = a.n_test;
    pair.any_degenerate = a.any_degenerate || b.any_degenerate;
    pair.item_ids.reserve(a.item_ids.size());
    for (uint64_t id : a.item_ids) {
        pair.item_ids.push_back(std::to_string(id));
    }
    for (int s = 0; s < num_seeds; ++s) {
        pair.seeds.push_back(s);
    }
    pair.correct_a = a.correct;
    pair.correct_b = b.correct;
    return pair;
}

}  // namespace

PairedRunResult run_paired_probes(const RepresentationDataset& ds_a,
                                  const RepresentationDataset& ds_b,
                                  const TrainerConfig& cfg_a, const TrainerConfig& cfg_b,
                                  int num_seeds, uint64_t rng_seed) {
    if (num_seeds < 1) {
        fail_validation("paired run needs num_seeds >= 1");
    }
    const SideRun a = run_side(ds_a, cfg_a, num_seeds, Rng::derive(rng_seed, {kStreamTrainA}));
    const SideRun b = run_side(ds_b, cfg_b, num_seeds, Rng::derive(rng_seed, {kStreamTrainB}));
    return assemble_pair(a, b, num_seeds);
}

namespace {

double theoretical_margin(const CaseStudyParams& p, const ClassifierSpec& probe,
                          int64_t n_train) {
    return finite_class_margin(n_train, p.delta, kAccuracyMetricRange,
                               FunctionClassSpec::from_classifier(probe, p.bits_per_param));
}

MarginRow margin_row(const CaseStudyParams& p, const std::string& config, double sigma2,
                     int per_class_train, const SideRun& side, const ClassifierSpec& probe) {
    MarginRow row;
    row.config = config;
    row.sigma2 = sigma2;
    row.per_class_train = per_class_train;
    row.n_train = side.n_train;
    double sum = 0.0;
    for (double acc : side.acc) {
        sum += acc;
    }
    const auto n = static_cast<double>(side.acc.size());
    row.mean_accuracy = sum / n;
    double ss = 0.0;
    for (double acc : side.acc) {
        ss += (acc - row.mean_accuracy) * (acc - row.mean_accuracy);
    }
    row.stdev = side.acc.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    row.theoretical_margin = theoretical_margin(p, probe, side.n_train);
    row.total_seeds = static_cast<int>(side.acc.size());
    for (double acc : side.acc) {
        if (std::fabs(acc - row.mean_accuracy) <= row.theoretical_margin) {
            ++row.covered_seeds;
        }
    }
    return row;
}

void append_accuracy_cells(CaseStudyReport& report, const std::string& config, double sigma2,
                           int per_class_train, const SideRun& side) {
    for (size_t s = 0; s < side.acc.size(); ++s) {
        AccuracyCell cell;
        cell.config = config;
        cell.sigma2 = sigma2;
        cell.per_class_train = per_class_train;
        cell.n_train = side.n_train;
        cell.n_test = side.n_test;
        cell.seed_index = static_cast<int>(s);
        cell.test_accuracy = side.acc[s];
        report.accuracy.push_back(cell);
    }
}

RecommendationRow make_recommendation_row(const CaseStudyParams& p, double sigma2,
                                          int per_class_train, const PairedRunResult& pair,
                                          const ClassifierSpec& probe_a,
                                          const ClassifierSpec& probe_b) {
    RecommendationRow row;
    row.sigma2 = sigma2;
    row.per_class_train = per_class_train;
    row.n_test = pair.n_test;
    std::vector<PerformancePair> pilot;
    for (size_t s = 0; s < pair.acc_a.size(); ++s) {
        pilot.push_back({pair.acc_a[s], pair.acc_b[s], MetricKind::Accuracy});
    }
    row.mean_gap = mean_gap(pilot);
    if (row.mean_gap <= 0.0) {
        row.collapsed_gap = true;
        return row;
    }
    ComparisonProblem problem({"synthetic", "encoder-a", probe_a},
                              {"synthetic", "encoder-b", probe_b});
    RecommendOptions options;
    options.delta = p.delta;
    options.eta = p.eta;
    options.bits_per_param = p.bits_per_param;
    row.recommendation = recommend(pilot, problem, options);
    return row;
}

// One configuration pair evaluated across the whole subset grid.
struct ComparisonContext {
    const RepresentationDataset* pool_a = nullptr;
    const RepresentationDataset* pool_b = nullptr;
    ClassifierSpec probe_a;
    ClassifierSpec probe_b;
    double sigma2 = 0.0;
    uint64_t comparison_id = 0;
    bool record_side_a = true;  // margins/accuracy rows for side A
    bool run_collapse = false;
};

void run_comparison(const CaseStudyParams& p, const ComparisonContext& ctx, uint64_t rng_seed,
                    std::map<int, SideRun>* side_a_cache, CaseStudyReport& report) {
    int64_t min_size_reaching_target = -1;
    PairedRunResult largest_pair;
    for (size_t size_idx = 0; size_idx < p.per_class_train_grid.size(); ++size_idx) {
        const int pct = p.per_class_train_grid[size_idx];
        const uint64_t subsample_seed = Rng::derive(rng_seed, {kStreamSubsample, size_idx});

        SideRun side_a;
        if (side_a_cache && side_a_cache->count(pct)) {
            side_a = (*side_a_cache)[pct];
        } else {
            const RepresentationDataset ds_a =
                stratified_subsample(*ctx.pool_a, pct, p.eta, subsample_seed);
            side_a = run_side(ds_a, p.trainer_for(ctx.probe_a), p.num_seeds,
                              Rng::derive(rng_seed, {kStreamTrainA, size_idx}));
            if (side_a_cache) {
                (*side_a_cache)[pct] = side_a;
            }
        }
        const RepresentationDataset ds_b =
            stratified_subsample(*ctx.pool_b, pct, p.eta, subsample_seed);
        const SideRun side_b =
            run_side(ds_b, p.trainer_for(ctx.probe_b), p.num_seeds,
                     Rng::derive(rng_seed, {kStreamTrainB, ctx.comparison_id, size_idx}));

        if (ctx.record_side_a) {
            append_accuracy_cells(report, "a", 0.0, pct, side_a);
            report.margins.push_back(margin_row(p, "a", 0.0, pct, side_a, ctx.probe_a));
        }
        append_accuracy_cells(report, "b", ctx.sigma2, pct, side_b);
        report.margins.push_back(margin_row(p, "b", ctx.sigma2, pct, side_b, ctx.probe_b));

        const PairedRunResult pair = assemble_pair(side_a, side_b, p.num_seeds);
        const PairedPredictions pred = pair.predictions();
        const PowerEstimate estimate = estimate_power(
            pred, pair.n_test, p.num_sims_per_seed, p.alpha,
            Rng::derive(rng_seed, {kStreamPower, ctx.comparison_id, size_idx}));
        PowerRow power_row;
        power_row.sigma2 = ctx.sigma2;
        power_row.per_class_train = pct;
        power_row.estimate = estimate;
        report.power.push_back(power_row);
        if (min_size_reaching_target < 0 && estimate.power >= p.power_target) {
            min_size_reaching_target = pair.n_test;
        }

        report.recommendations.push_back(
            make_recommendation_row(p, ctx.sigma2, pct, pair, ctx.probe_a, ctx.probe_b));

        if (size_idx + 1 == p.per_class_train_grid.size()) {
            largest_pair = pair;
        }
    }
    report.min_test_size_for_power[ctx.sigma2] = min_size_reaching_target;

    if (ctx.run_collapse) {
        const PairedPredictions pred = largest_pair.predictions();
        const int64_t trial_size = std::max<int64_t>(2, largest_pair.n_test / 2);
        const auto trials =
            subsample_trials(pred, trial_size, p.collapse_trials, p.alpha,
                             Rng::derive(rng_seed, {kStreamCollapse, ctx.comparison_id}));
        report.collapse = detect_collapse(trials, p.collapsed_below, p.not_collapsed_at);
    }
}

}  // namespace

CaseStudyReport run_case_study(CaseStudyKind kind, const CaseStudyParams& params,
                               uint64_t rng_seed) {
    params.validate();
    CaseStudyReport report;
    report.kind = kind;
    report.params = params;
    report.rng_seed = rng_seed;

    SyntheticDatasetSpec base_spec;
    base_spec.num_classes = params.num_classes;
    base_spec.dim = params.dim;
    base_spec.samples_per_class = params.pool_samples_per_class();
    base_spec.class_separation = params.class_separation;
    base_spec.noise_floor = params.noise_floor;
    base_spec.rng_seed = Rng::derive(rng_seed, {kStreamPoolA});
    const RepresentationDataset pool_a = generate_dataset(base_spec);

    const ClassifierSpec logreg_a = logreg_spec(params.dim, params.num_classes);

    switch (kind) {
        case CaseStudyKind::BoundCheck: {
            // Single configuration: margins only, no paired analysis.
            for (size_t size_idx = 0; size_idx < params.per_class_train_grid.size();
                 ++size_idx) {
                const int pct = params.per_class_train_grid[size_idx];
                const RepresentationDataset subset = stratified_subsample(
                    pool_a, pct, params.eta, Rng::derive(rng_seed, {kStreamSubsample, size_idx}));
                const SideRun side =
                    run_side(subset, params.trainer_for(logreg_a), params.num_seeds,
                             Rng::derive(rng_seed, {kStreamTrainA, size_idx}));
                append_accuracy_cells(report, "a", 0.0, pct, side);
                report.margins.push_back(margin_row(params, "a", 0.0, pct, side, logreg_a));
            }
            break;
        }
        case CaseStudyKind::GaussianNoise: {
            std::map<int, SideRun> side_a_cache;
            for (size_t noise_idx = 0; noise_idx < params.noise_grid.size(); ++noise_idx) {
                const double sigma2 = params.noise_grid[noise_idx];
                const RepresentationDataset pool_b = add_gaussian_noise(
                    pool_a, sigma2, Rng::derive(rng_seed, {kStreamNoise, noise_idx}));
                ComparisonContext ctx;
                ctx.pool_a = &pool_a;
                ctx.pool_b = &pool_b;
                ctx.probe_a = logreg_a;
                ctx.probe_b = logreg_a;
                ctx.sigma2 = sigma2;
                ctx.comparison_id = noise_idx;
                ctx.record_side_a = noise_idx == 0;
                run_comparison(params, ctx, rng_seed, &side_a_cache, report);
            }
            break;
        }
        case CaseStudyKind::CorruptedEncoder:
        case CaseStudyKind::EncoderComparison: {
            SyntheticDatasetSpec spec_b = base_spec;
            spec_b.class_separation =
                params.separation_b > 0.0 ? params.separation_b : params.class_separation;
            if (params.noise_floor_b > 0.0) {
                spec_b.noise_floor = params.noise_floor_b;
            }
            if (kind == CaseStudyKind::EncoderComparison && params.dim_b > 0) {
                spec_b.dim = params.dim_b;
            }
            spec_b.rng_seed = Rng::derive(rng_seed, {kStreamPoolB});
            RepresentationDataset pool_b = generate_dataset(spec_b);
            if (kind == CaseStudyKind::CorruptedEncoder && params.corruption_noise > 0.0) {
                pool_b = add_gaussian_noise(pool_b, params.corruption_noise,
                                            Rng::derive(rng_seed, {kStreamNoise}));
            }
            ComparisonContext ctx;
            ctx.pool_a = &pool_a;
            ctx.pool_b = &pool_b;
            ctx.probe_a = logreg_a;
            ctx.probe_b = logreg_spec(spec_b.dim, params.num_classes);
            ctx.run_collapse = true;
            run_comparison(params, ctx, rng_seed, nullptr, report);
            break;
        }
        case CaseStudyKind::ClassifierComparison: {
            ComparisonContext ctx;
            ctx.pool_a = &pool_a;
            ctx.pool_b = &pool_a;  // same representations, different probes
            ctx.probe_a = logreg_a;
            ctx.probe_b = params.identical_classifiers
                              ? logreg_a
                              : mlp_spec(params.dim, params.mlp_hidden_units, params.num_classes);
            ctx.run_collapse = true;
            run_comparison(params, ctx, rng_seed, nullptr, report);
            break;
        }
    }

    int covered = 0;
    int total = 0;
    for (const auto& row : report.margins) {
        covered += row.covered_seeds;
        total += row.total_seeds;
    }
    report.margin_coverage = total > 0 ? static_cast<double>(covered) / total : 1.0;
    return report;
}

CaseStudyParams case_study_params_from_json(const std::string& json_text) {
    CaseStudyParams p;
    if (json_text.empty()) {
        return p;
    }
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail_validation(std::string("case study params are not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        fail_validation("case study params must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "num_seeds") {
                p.num_seeds = value.get<int>();
            } else if (key == "per_class_train_grid") {
                p.per_class_train_grid = value.get<std::vector<int>>();
            } else if (key == "noise_grid") {
                p.noise_grid = value.get<std::vector<double>>();
            } else if (key == "num_classes") {
                p.num_classes = value.get<int>();
            } else if (key == "dim") {
                p.dim = value.get<int>();
            } else if (key == "class_separation") {
                p.class_separation = value.get<double>();
            } else if (key == "noise_floor") {
                p.noise_floor = value.get<double>();
            } else if (key == "separation_b") {
                p.separation_b = value.get<double>();
            } else if (key == "noise_floor_b") {
                p.noise_floor_b = value.get<double>();
            } else if (key == "dim_b") {
                p.dim_b = value.get<int>();
            } else if (key == "corruption_noise") {
                p.corruption_noise = value.get<double>();
            } else if (key == "mlp_hidden_units") {
                p.mlp_hidden_units = value.get<int>();
            } else if (key == "identical_classifiers") {
                p.identical_classifiers = value.get<bool>();
            } else if (key == "delta") {
                p.delta = value.get<double>();
            } else if (key == "eta") {
                p.eta = value.get<double>();
            } else if (key == "alpha") {
                p.alpha = value.get<double>();
            } else if (key == "num_sims_per_seed") {
                p.num_sims_per_seed = value.get<int64_t>();
            } else if (key == "bits_per_param") {
                p.bits_per_param = value.get<int>();
            } else if (key == "power_target") {
                p.power_target = value.get<double>();
            } else if (key == "collapse_trials") {
                p.collapse_trials = value.get<int64_t>();
            } else if (key == "collapsed_below") {
                p.collapsed_below = value.get<double>();
            } else if (key == "not_collapsed_at") {
                p.not_collapsed_at = value.get<double>();
            } else if (key == "trainer_learning_rates") {
                p.trainer_learning_rates = value.get<std::vector<double>>();
            } else if (key == "trainer_batch_sizes") {
                p.trainer_batch_sizes = value.get<std::vector<int>>();
            } else if (key == "trainer_max_epochs") {
                p.trainer_max_epochs = value.get<int>();
            } else if (key == "trainer_patience") {
                p.trainer_patience = value.get<int>();
            } else {
                fail_validation("unknown case study parameter '" + key + "'");
            }
        } catch (const json::exception&) {
            fail_validation("case study parameter '" + key + "' has the wrong type");
        }
    }
    p.validate();
    return p;
}

namespace {

json params_to_json(const CaseStudyParams& p) {
    json j;
    j["num_seeds"] = p.num_seeds;
    j["per_class_train_grid"] = p.per_class_train_grid;
    j["noise_grid"] = p.noise_grid;
    j["num_classes"] = p.num_classes;
    j["dim"] = p.dim;
    j["class_separation"] = p.class_separation;
    j["noise_floor"] = p.noise_floor;
    j["separation_b"] = p.separation_b;
    j["noise_floor_b"] = p.noise_floor_b;
    j["dim_b"] = p.dim_b;
    j["corruption_noise"] = p.corruption_noise;
    j["mlp_hidden_units"] = p.mlp_hidden_units;
    j["identical_classifiers"] = p.identical_classifiers;
    j["delta"] = p.delta;
    j["eta"] = p.eta;
    j["alpha"] = p.alpha;
    j["num_sims_per_seed"] = p.num_sims_per_seed;
    j["bits_per_param"] = p.bits_per_param;
    j["power_target"] = p.power_target;
    j["collapse_trials"] = p.collapse_trials;
    j["collapsed_below"] = p.collapsed_below;
    j["not_collapsed_at"] = p.not_collapsed_at;
    j["trainer_learning_rates"] = p.trainer_learning_rates;
    j["trainer_batch_sizes"] = p.trainer_batch_sizes;
    j["trainer_max_epochs"] = p.trainer_max_epochs;
    j["trainer_patience"] = p.trainer_patience;
    return j;
}

const char* verdict_name(CollapseVerdict verdict) {
    switch (verdict) {
        case CollapseVerdict::Collapsed:
            return "collapsed";
        case CollapseVerdict::NotCollapsed:
            return "not-collapsed";
        case CollapseVerdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

json summary_to_json(const CaseStudyReport& report) {
    json summary;
    summary["margin_coverage"] = report.margin_coverage;
    json min_sizes = json::object();
    for (const auto& [sigma2, size] : report.min_test_size_for_power) {
        min_sizes[fmt_short(sigma2)] = size;
    }
    summary["min_test_size_for_power"] = min_sizes;
    if (report.collapse.has_value()) {
        json c;
        c["num_trials"] = report.collapse->num_trials;
        c["num_significant"] = report.collapse->num_significant;
        c["verdict"] = verdict_name(report.collapse->verdict);
        c["collapsed_below"] = report.collapse->collapsed_below;
        c["not_collapsed_at"] = report.collapse->not_collapsed_at;
        summary["collapse"] = c;
    } else {
        summary["collapse"] = nullptr;
    }
    return summary;
}

}  // namespace

std::string case_study_summary_json(const CaseStudyReport& report) {
    json j;
    j["kind"] = case_study_kind_name(report.kind);
    j["rng_seed"] = report.rng_seed;
    j["summary"] = summary_to_json(report);
    return j.dump(2);
}

void write_case_study_artifacts(const CaseStudyReport& report, const std::string& dir,
                                bool with_plots) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail_io("cannot create output directory '" + dir + "': " + ec.message());
    }

    {
        std::ofstream out(dir + "/accuracy.csv");
        out << "config,sigma2,per_class_train,n_train,n_test,seed,test_accuracy\n";
        for (const auto& cell : report.accuracy) {
            out << cell.config << ',' << fmt_short(cell.sigma2) << ',' << cell.per_class_train
                << ',' << cell.n_train << ',' << cell.n_test << ',' << cell.seed_index << ','
                << fmt_double(cell.test_accuracy) << '\n';
        }
    }
    {
        std::ofstream out(dir + "/margins.csv");
        out << "config,sigma2,per_class_train,n_train,mean_accuracy,stdev,theoretical_margin,"
               "covered_seeds,total_seeds\n";
        for (const auto& row : report.margins) {
            out << row.config << ',' << fmt_short(row.sigma2) << ',' << row.per_class_train
                << ',' << row.n_train << ',' << fmt_double(row.mean_accuracy) << ','
                << fmt_double(row.stdev) << ',' << fmt_double(row.theoretical_margin) << ','
                << row.covered_seeds << ',' << row.total_seeds << '\n';
        }
    }
    {
        std::ofstream out(dir + "/power.csv");
        out << "sigma2,per_class_train,test_size,power,num_sims,alpha\n";
        for (const auto& row : report.power) {
            out << fmt_short(row.sigma2) << ',' << row.per_class_train << ','
                << row.estimate.subsample_size << ',' << fmt_double(row.estimate.power) << ','
                << row.estimate.num_simulations << ',' << fmt_short(row.estimate.alpha) << '\n';
        }
    }
    {
        std::ofstream out(dir + "/recommendations.csv");
        out << "sigma2,per_class_train,n_test,mean_gap,epsilon,n_train_recommended,n_total,"
               "collapsed\n";
        for (const auto& row : report.recommendations) {
            out << fmt_short(row.sigma2) << ',' << row.per_class_train << ',' << row.n_test
                << ',' << fmt_double(row.mean_gap) << ',';
            if (row.collapsed_gap) {
                out << ",,,1\n";
            } else {
                out << fmt_double(row.recommendation.epsilon) << ','
                    << row.recommendation.n_train << ',' << row.recommendation.n_total << ",0\n";
            }
        }
    }
    {
        json j;
        j["kind"] = case_study_kind_name(report.kind);
        j["rng_seed"] = report.rng_seed;
        j["params"] = params_to_json(report.params);
        j["summary"] = summary_to_json(report);
        j["files"] = {"accuracy.csv", "margins.csv", "power.csv", "recommendations.csv"};
        std::ofstream out(dir + "/report.json");
        out << j.dump(2) << '\n';
        if (!out) {
            fail_io("write to '" + dir + "/report.json' failed");
        }
    }

    if (!with_plots) {
        return;
    }
    fs::create_directories(dir + "/plots", ec);

    // Margin overlay per configuration: empirical band vs theoretical band.
    std::vector<std::string> configs;
    for (const auto& row : report.margins) {
        const std::string tag = row.config + "_s" + fmt_short(row.sigma2);
        if (std::find(configs.begin(), configs.end(), tag) == configs.end()) {
            configs.push_back(tag);
        }
    }
    for (const auto& tag : configs) {
        SvgSeries mean_series{"mean", {}};
        SvgSeries emp_hi{"mean+stdev", {}};
        SvgSeries emp_lo{"mean-stdev", {}};
        SvgSeries theo_hi{"mean+margin", {}};
        SvgSeries theo_lo{"mean-margin", {}};
        for (const auto& row : report.margins) {
            if (row.config + "_s" + fmt_short(row.sigma2) != tag) {
                continue;
            }
            const auto x = static_cast<double>(row.n_train);
            mean_series.points.emplace_back(x, row.mean_accuracy);
            emp_hi.points.emplace_back(x, row.mean_accuracy + row.stdev);
            emp_lo.points.emplace_back(x, row.mean_accuracy - row.stdev);
            theo_hi.points.emplace_back(x, row.mean_accuracy + row.theoretical_margin);
            theo_lo.points.emplace_back(x, row.mean_accuracy - row.theoretical_margin);
        }
        write_svg_line_chart(dir + "/plots/margins_" + tag + ".svg",
                             "test accuracy vs train size (" + tag + ")", "n_train", "accuracy",
                             {mean_series, emp_hi, emp_lo, theo_hi, theo_lo}, true);
    }

    if (!report.power.empty()) {
        std::vector<SvgSeries> power_series;
        for (const auto& [sigma2, unused] : report.min_test_size_for_power) {
            SvgSeries series{"sigma2=" + fmt_short(sigma2), {}};
            for (const auto& row : report.power) {
                if (row.sigma2 == sigma2) {
                    series.points.emplace_back(
                        static_cast<double>(row.estimate.subsample_size), row.estimate.power);
                }
            }
            power_series.push_back(std::move(series));
        }
        write_svg_line_chart(dir + "/plots/power.svg", "power vs test size", "n_test", "power",
                             power_series, true);
    }
}

}  // namespace probesizer
