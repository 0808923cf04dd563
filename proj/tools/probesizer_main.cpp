// probesizer CLI: plans and audits paired-classifier comparison experiments.
// Talks to the core exclusively through the C API in probesizer.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "probesizer.h"

using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCollapsed = 3;

int exit_code_for(ps_status status) {
    switch (status) {
        case PS_OK:
            return 0;
        case PS_ERROR_COLLAPSED:
            return kExitCollapsed;
        case PS_ERROR_VALIDATION:
        case PS_ERROR_IO:
            return kExitValidation;
        default:
            return 1;
    }
}

[[noreturn]] void die(ps_status status) {
    std::cerr << "error: " << ps_last_error() << "\n";
    std::exit(exit_code_for(status));
}

[[noreturn]] void die_validation(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitValidation);
}

void check(ps_status status) {
    if (status != PS_OK) {
        die(status);
    }
}

// Defaults shared by every subcommand; a --config file may override them and
// explicit flags win over both.
struct ExperimentConfig {
    double delta = 1e-8;
    double eta = 4.0;
    double alpha = 0.05;
    int64_t num_sims = 1000;
    int bits_per_param = 32;
    double collapsed_below = 0.2;
    double not_collapsed_at = 0.8;
    int64_t collapse_trials = 20;
    uint64_t rng_seed = 0;

    json to_json() const {
        return json{{"delta", delta},
                    {"eta", eta},
                    {"alpha", alpha},
                    {"num_sims", num_sims},
                    {"bits_per_param", bits_per_param},
                    {"collapsed_below", collapsed_below},
                    {"not_collapsed_at", not_collapsed_at},
                    {"collapse_trials", collapse_trials},
                    {"rng_seed", rng_seed}};
    }
};

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig cfg;
    if (path.empty()) {
        return cfg;
    }
    std::ifstream in(path);
    if (!in) {
        die_validation("cannot open config file '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        die_validation("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) {
        die_validation("config file must hold a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "delta") {
                cfg.delta = value.get<double>();
            } else if (key == "eta") {
                cfg.eta = value.get<double>();
            } else if (key == "alpha") {
                cfg.alpha = value.get<double>();
            } else if (key == "num_sims") {
                cfg.num_sims = value.get<int64_t>();
            } else if (key == "bits_per_param") {
                cfg.bits_per_param = value.get<int>();
            } else if (key == "collapsed_below") {
                cfg.collapsed_below = value.get<double>();
            } else if (key == "not_collapsed_at") {
                cfg.not_collapsed_at = value.get<double>();
            } else if (key == "collapse_trials") {
                cfg.collapse_trials = value.get<int64_t>();
            } else if (key == "rng_seed") {
                cfg.rng_seed = value.get<uint64_t>();
            } else {
                die_validation("unknown config key '" + key + "'");
            }
        } catch (const json::exception&) {
            die_validation("config key '" + key + "' has the wrong type");
        }
    }
    return cfg;
}

void emit(const json& document, const std::string& out_path) {
    const std::string text = document.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        die_validation("cannot open output file '" + out_path + "'");
    }
    out << text;
}

ps_classifier_spec make_spec(const std::string& model, int dim, int hidden, int classes) {
    ps_classifier_spec spec{};
    if (model == "logreg") {
        spec.kind = PS_CLASSIFIER_LOGREG;
        spec.hidden_units = 0;
    } else if (model == "mlp") {
        spec.kind = PS_CLASSIFIER_MLP;
        spec.hidden_units = hidden;
    } else {
        die_validation("model must be 'logreg' or 'mlp', got '" + model + "'");
    }
    spec.input_dim = dim;
    spec.num_classes = classes;
    return spec;
}

json spec_to_json(const ps_classifier_spec& spec) {
    int64_t params = 0;
    check(ps_parameter_count(&spec, &params));
    return json{{"kind", spec.kind == PS_CLASSIFIER_MLP ? "mlp" : "logreg"},
                {"input_dim", spec.input_dim},
                {"hidden_units", spec.hidden_units},
                {"num_classes", spec.num_classes},
                {"parameter_count", params}};
}

std::vector<int64_t> parse_size_list(const std::string& text) {
    std::vector<int64_t> sizes;
    std::stringstream stream(text);
    std::string cell;
    while (std::getline(stream, cell, ',')) {
        if (cell.empty()) {
            continue;
        }
        try {
            sizes.push_back(std::stoll(cell));
        } catch (const std::exception&) {
            die_validation("'" + cell + "' is not a valid size");
        }
    }
    if (sizes.empty()) {
        die_validation("size list is empty");
    }
    return sizes;
}

ps_subsample_mode parse_mode(const std::string& text) {
    if (text == "auto") {
        return PS_SUBSAMPLE_AUTO;
    }
    if (text == "without-replacement") {
        return PS_SUBSAMPLE_WITHOUT_REPLACEMENT;
    }
    if (text == "bootstrap") {
        return PS_SUBSAMPLE_BOOTSTRAP;
    }
    die_validation("mode must be auto, without-replacement, or bootstrap");
}

struct PredictionsHandle {
    ps_predictions* ptr = nullptr;
    ~PredictionsHandle() { ps_predictions_free(ptr); }
};

const char* verdict_name(ps_collapse_verdict verdict) {
    switch (verdict) {
        case PS_COLLAPSED:
            return "collapsed";
        case PS_NOT_COLLAPSED:
            return "not-collapsed";
        default:
            return "inconclusive";
    }
}

// ---------------------------------------------------------------- bound ----

struct BoundArgs {
    int64_t n = 0;
    double delta = -1.0;
    int dim = -1;
    std::string model = "logreg";
    int hidden = 20;
    int classes = 2;
    int64_t param_count = -1;
    int bits = -1;
    double metric_range = -1.0;
    std::string adapter = "plain";
    double control_delta = -1.0;
    double preq_c = -1.0;
    double preq_t1_fraction = -1.0;
    std::string out_path;
};

int run_bound(const BoundArgs& args, const ExperimentConfig& cfg, bool delta_given,
              bool bits_given) {
    ps_bound_query query{};
    query.n = args.n;
    query.delta = delta_given ? args.delta : cfg.delta;
    query.metric_range = args.metric_range;
    query.bits_per_param = bits_given ? args.bits : cfg.bits_per_param;
    ps_classifier_spec spec{};
    bool have_spec = false;
    if (args.param_count > 0) {
        query.param_count = args.param_count;
    } else if (args.dim >= 0) {
        spec = make_spec(args.model, args.dim, args.hidden, args.classes);
        have_spec = true;
        check(ps_parameter_count(&spec, &query.param_count));
    } else {
        die_validation("supply --dim (with --model) or --param-count");
    }
    if (args.adapter == "plain") {
        query.adapter = PS_BOUND_PLAIN;
    } else if (args.adapter == "control") {
        query.adapter = PS_BOUND_CONTROL_TASK;
    } else if (args.adapter == "variational") {
        query.adapter = PS_BOUND_VARIATIONAL_MDL;
    } else if (args.adapter == "prequential") {
        query.adapter = PS_BOUND_PREQUENTIAL_MDL;
    } else {
        die_validation("adapter must be plain, control, variational, or prequential");
    }
    query.control_delta = args.control_delta;
    query.prequential_c = args.preq_c;
    query.prequential_t1_fraction = args.preq_t1_fraction;

    ps_bound_result result{};
    check(ps_bound_margin(&query, &result));

    json out;
    out["margin"] = result.margin;
    out["effective_delta"] = result.effective_delta;
    out["loose"] = result.loose != 0;
    json config;
    config["n"] = query.n;
    config["delta"] = query.delta;
    config["metric_range"] = query.metric_range > 0.0 ? query.metric_range : 1.0;
    config["param_count"] = query.param_count;
    config["bits_per_param"] = query.bits_per_param;
    config["adapter"] = args.adapter;
    if (have_spec) {
        config["classifier"] = spec_to_json(spec);
    }
    if (query.adapter == PS_BOUND_CONTROL_TASK) {
        config["control_delta"] = query.control_delta > 0.0 ? query.control_delta : query.delta;
    }
    if (query.adapter == PS_BOUND_PREQUENTIAL_MDL) {
        config["prequential_c"] = query.prequential_c > 0.0 ? query.prequential_c : 1.0;
        config["prequential_t1_fraction"] =
            query.prequential_t1_fraction > 0.0 ? query.prequential_t1_fraction : 0.001;
    }
    out["config"] = config;
    emit(out, args.out_path);
    return 0;
}

// ------------------------------------------------------------ recommend ----

struct RecommendArgs {
    std::string pilot_csv;
    std::vector<double> r1;
    std::vector<double> r2;
    int dim_a = -1;
    std::string model_a = "logreg";
    int hidden_a = 20;
    int dim_b = -1;
    std::string model_b = "logreg";
    int hidden_b = 20;
    int classes = 2;
    bool gap_of_means = false;
    bool skip_collapse_check = false;
    int64_t trial_size = -1;
    std::string out_path;
};

int run_recommend(const RecommendArgs& args, const ExperimentConfig& cfg) {
    if (args.dim_a < 0) {
        die_validation("supply --dim-a (input dimension of configuration A)");
    }
    const int dim_b = args.dim_b >= 0 ? args.dim_b : args.dim_a;
    const ps_classifier_spec spec_a =
        make_spec(args.model_a, args.dim_a, args.hidden_a, args.classes);
    const ps_classifier_spec spec_b = make_spec(args.model_b, dim_b, args.hidden_b, args.classes);

    std::vector<double> r1 = args.r1;
    std::vector<double> r2 = args.r2;
    int32_t collapse_flag = -1;
    json collapse_json = nullptr;

    if (!args.pilot_csv.empty()) {
        PredictionsHandle pred;
        check(ps_predictions_read_csv(args.pilot_csv.c_str(), &pred.ptr));
        const size_t num_seeds = ps_predictions_num_seeds(pred.ptr);
        r1.assign(num_seeds, 0.0);
        r2.assign(num_seeds, 0.0);
        check(ps_predictions_accuracy_pairs(pred.ptr, r1.data(), r2.data()));

        if (!args.skip_collapse_check) {
            const auto pool = static_cast<int64_t>(ps_predictions_num_items(pred.ptr));
            const int64_t trial_size =
                args.trial_size > 0 ? args.trial_size : std::max<int64_t>(2, pool / 2);
            std::vector<uint8_t> significant(static_cast<size_t>(cfg.collapse_trials));
            check(ps_subsample_trials(pred.ptr, trial_size, cfg.collapse_trials, cfg.alpha,
                                      cfg.rng_seed, significant.data()));
            ps_collapse_report report{};
            check(ps_detect_collapse(significant.data(), significant.size(),
                                     cfg.collapsed_below, cfg.not_collapsed_at, &report));
            collapse_flag = report.verdict == PS_COLLAPSED ? 1 : 0;
            collapse_json = json{{"num_trials", report.num_trials},
                                 {"num_significant", report.num_significant},
                                 {"verdict", verdict_name(report.verdict)},
                                 {"trial_size", trial_size},
                                 {"collapsed_below", report.collapsed_below},
                                 {"not_collapsed_at", report.not_collapsed_at}};
        }
    } else if (r1.empty() || r1.size() != r2.size()) {
        die_validation("supply --pilot-csv or matching --r1/--r2 lists");
    }

    ps_recommendation rec{};
    check(ps_recommend(r1.data(), r2.data(), r1.size(), &spec_a, &spec_b, cfg.delta, cfg.eta,
                       cfg.bits_per_param, args.gap_of_means ? 1 : 0, collapse_flag, &rec));

    json out;
    out["mean_gap"] = rec.mean_gap;
    out["epsilon"] = rec.epsilon;
    out["n_train"] = rec.n_train;
    out["n_total"] = rec.n_total;
    out["eta"] = rec.eta;
    out["param_count_used"] = rec.param_count_used;
    out["collapse_warning"] = rec.collapse_warning != 0;
    out["collapse"] = collapse_json;
    json config = cfg.to_json();
    config["gap_mode"] = args.gap_of_means ? "gap-of-means" : "mean-of-gaps";
    config["classifier_a"] = spec_to_json(spec_a);
    config["classifier_b"] = spec_to_json(spec_b);
    config["pilot"] = json{{"r1", r1}, {"r2", r2}};
    out["config"] = config;
    emit(out, args.out_path);
    if (rec.collapse_warning != 0) {
        std::cerr << "warning: collapse pre-check flagged this comparison; the "
                     "recommendation is not meaningful\n";
        return kExitCollapsed;
    }
    return 0;
}

// ---------------------------------------------------------------- power ----

struct PowerArgs {
    std::string pred_csv;
    std::string sizes_text;
    std::string mode = "auto";
    std::string out_path;
};

int run_power(const PowerArgs& args, const ExperimentConfig& cfg) {
    PredictionsHandle pred;
    check(ps_predictions_read_csv(args.pred_csv.c_str(), &pred.ptr));
    const auto pool = static_cast<int64_t>(ps_predictions_num_items(pred.ptr));

    std::vector<int64_t> sizes;
    if (!args.sizes_text.empty()) {
        sizes = parse_size_list(args.sizes_text);
    } else {
        // Doubling grid up to (and including) the pool.
        for (int64_t size = 8; size < pool; size *= 2) {
            sizes.push_back(size);
        }
        if (sizes.empty() || sizes.back() != pool) {
            sizes.push_back(pool);
        }
    }

    std::vector<ps_power_estimate> estimates(sizes.size());
    check(ps_power_curve(pred.ptr, sizes.data(), sizes.size(), cfg.num_sims, cfg.alpha,
                         cfg.rng_seed, parse_mode(args.mode), estimates.data()));

    std::ostringstream csv;
    csv << "test_size,power,num_sims,alpha\n";
    for (const auto& estimate : estimates) {
        char power_text[40];
        std::snprintf(power_text, sizeof(power_text), "%.17g", estimate.power);
        char alpha_text[40];
        std::snprintf(alpha_text, sizeof(alpha_text), "%g", estimate.alpha);
        csv << estimate.subsample_size << ',' << power_text << ',' << estimate.num_simulations
            << ',' << alpha_text << '\n';
    }
    if (args.out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(args.out_path);
        if (!out) {
            die_validation("cannot open output file '" + args.out_path + "'");
        }
        out << csv.str();
    }
    return 0;
}

// ------------------------------------------------------------- collapse ----

struct CollapseArgs {
    std::string pred_csv;
    int64_t trial_size = -1;
    int folds = 0;
    std::string out_path;
};

int run_collapse(const CollapseArgs& args, const ExperimentConfig& cfg) {
    if (args.folds > 0) {
        std::vector<ps_fold_assignment> plan(static_cast<size_t>(args.folds));
        check(ps_fold_plan(args.folds, plan.data()));
        std::cout << "run,val_fold,test_fold,train_folds\n";
        for (const auto& run : plan) {
            std::cout << run.run_index << ',' << run.val_fold << ',' << run.test_fold << ',';
            bool first = true;
            for (int f = 0; f < args.folds; ++f) {
                if (f != run.val_fold && f != run.test_fold) {
                    std::cout << (first ? "" : " ") << f;
                    first = false;
                }
            }
            std::cout << '\n';
        }
        if (args.pred_csv.empty()) {
            return 0;
        }
    }
    if (args.pred_csv.empty()) {
        die_validation("supply --pred-csv (or --folds to print a rotation plan)");
    }

    PredictionsHandle pred;
    check(ps_predictions_read_csv(args.pred_csv.c_str(), &pred.ptr));
    const auto pool = static_cast<int64_t>(ps_predictions_num_items(pred.ptr));
    const int64_t trial_size =
        args.trial_size > 0 ? args.trial_size : std::max<int64_t>(2, pool / 2);

    std::vector<uint8_t> significant(static_cast<size_t>(cfg.collapse_trials));
    check(ps_subsample_trials(pred.ptr, trial_size, cfg.collapse_trials, cfg.alpha, cfg.rng_seed,
                              significant.data()));
    ps_collapse_report report{};
    check(ps_detect_collapse(significant.data(), significant.size(), cfg.collapsed_below,
                             cfg.not_collapsed_at, &report));

    json out;
    out["num_trials"] = report.num_trials;
    out["num_significant"] = report.num_significant;
    out["significant_fraction"] =
        static_cast<double>(report.num_significant) / static_cast<double>(report.num_trials);
    out["verdict"] = verdict_name(report.verdict);
    json config = cfg.to_json();
    config["trial_size"] = trial_size;
    out["config"] = config;
    emit(out, args.out_path);
    return report.verdict == PS_COLLAPSED ? kExitCollapsed : 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
    std::string kind;
    std::string out_dir;
    bool plot = false;
    std::string params_json;
};

int run_simulate(const SimulateArgs& args, const ExperimentConfig& cfg, bool sims_given,
                 const json& overrides) {
    json params = json::object();
    if (!args.params_json.empty()) {
        try {
            params = json::parse(args.params_json);
        } catch (const json::exception& e) {
            die_validation("--params-json is not valid JSON: " + std::string(e.what()));
        }
    }
    params["delta"] = params.value("delta", cfg.delta);
    params["eta"] = params.value("eta", cfg.eta);
    params["alpha"] = params.value("alpha", cfg.alpha);
    params["bits_per_param"] = params.value("bits_per_param", cfg.bits_per_param);
    params["collapsed_below"] = params.value("collapsed_below", cfg.collapsed_below);
    params["not_collapsed_at"] = params.value("not_collapsed_at", cfg.not_collapsed_at);
    params["collapse_trials"] = params.value("collapse_trials", cfg.collapse_trials);
    if (sims_given || !params.contains("num_sims_per_seed")) {
        params["num_sims_per_seed"] = cfg.num_sims;
    }
    for (const auto& [key, value] : overrides.items()) {
        params[key] = value;
    }

    char* summary = nullptr;
    const ps_status status =
        ps_run_case_study(args.kind.c_str(), params.dump().c_str(), args.out_dir.c_str(),
                          cfg.rng_seed, args.plot ? 1 : 0, &summary);
    if (status != PS_OK) {
        die(status);
    }
    std::cout << summary << "\n";
    ps_string_free(summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probesizer: size and audit paired probing-classifier comparisons"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file with shared defaults")
        ->expected(1);

    // bound
    BoundArgs bound_args;
    auto* bound = app.add_subcommand("bound", "evaluate the generalization bound");
    bound->add_option("--n", bound_args.n, "training set size")->required();
    auto* bound_delta = bound->add_option("--delta", bound_args.delta, "confidence delta");
    bound->add_option("--dim", bound_args.dim, "representation dimension D");
    bound->add_option("--model", bound_args.model, "classifier: logreg or mlp");
    bound->add_option("--hidden", bound_args.hidden, "MLP hidden units");
    bound->add_option("--classes", bound_args.classes, "number of classes");
    bound->add_option("--param-count", bound_args.param_count,
                      "parameter count (overrides --dim/--model)");
    auto* bound_bits = bound->add_option("--bits", bound_args.bits, "bits per parameter");
    bound->add_option("--metric-range", bound_args.metric_range,
                      "metric range B (required for MDL adapters)");
    bound->add_option("--adapter", bound_args.adapter,
                      "plain | control | variational | prequential");
    bound->add_option("--control-delta", bound_args.control_delta,
                      "control-task delta (defaults to --delta)");
    bound->add_option("--preq-c", bound_args.preq_c, "prequential constant C");
    bound->add_option("--preq-t1-fraction", bound_args.preq_t1_fraction,
                      "prequential first-portion fraction");
    bound->add_option("--out", bound_args.out_path, "write the JSON report here");

    // recommend
    RecommendArgs rec_args;
    auto* rec = app.add_subcommand("recommend", "invert the bound into a train-size estimate");
    rec->add_option("--pilot-csv", rec_args.pilot_csv, "paired pilot predictions CSV");
    rec->add_option("--r1", rec_args.r1, "per-run performances of configuration A");
    rec->add_option("--r2", rec_args.r2, "per-run performances of configuration B");
    rec->add_option("--dim-a", rec_args.dim_a, "input dimension of configuration A");
    rec->add_option("--model-a", rec_args.model_a, "classifier A: logreg or mlp");
    rec->add_option("--hidden-a", rec_args.hidden_a, "MLP hidden units of A");
    rec->add_option("--dim-b", rec_args.dim_b, "input dimension of B (defaults to A's)");
    rec->add_option("--model-b", rec_args.model_b, "classifier B: logreg or mlp");
    rec->add_option("--hidden-b", rec_args.hidden_b, "MLP hidden units of B");
    rec->add_option("--classes", rec_args.classes, "number of classes");
    rec->add_flag("--gap-of-means", rec_args.gap_of_means,
                  "use |mean(R1)-mean(R2)| instead of mean |R1-R2|");
    rec->add_flag("--skip-collapse-check", rec_args.skip_collapse_check,
                  "skip the collapse pre-check on pilot predictions");
    rec->add_option("--trial-size", rec_args.trial_size, "collapse pre-check subsample size");
    rec->add_option("--out", rec_args.out_path, "write the JSON report here");

    // power
    PowerArgs power_args;
    auto* power = app.add_subcommand("power", "estimate power over test sizes");
    power->add_option("--pred-csv", power_args.pred_csv, "paired predictions CSV")->required();
    power->add_option("--sizes", power_args.sizes_text,
                      "comma-separated test sizes (default: doubling grid up to the pool)");
    power->add_option("--mode", power_args.mode, "auto | without-replacement | bootstrap");
    power->add_option("--out", power_args.out_path, "write the CSV here (default stdout)");

    // collapse
    CollapseArgs collapse_args;
    auto* collapse = app.add_subcommand("collapse", "detect collapsed comparisons");
    collapse->add_option("--pred-csv", collapse_args.pred_csv, "paired predictions CSV");
    collapse->add_option("--trial-size", collapse_args.trial_size,
                         "items per trial (default half the pool)");
    collapse->add_option("--folds", collapse_args.folds,
                         "print the rotation plan for this many folds");
    collapse->add_option("--out", collapse_args.out_path, "write the JSON report here");

    // simulate
    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "run a synthetic case study");
    sim->add_option("kind", sim_args.kind,
                    "bound-check | gaussian-noise | corrupted-encoder | encoder-comparison | "
                    "classifier-comparison")
        ->required();
    sim->add_option("--out", sim_args.out_dir, "artifact output directory")->required();
    sim->add_flag("--plot", sim_args.plot, "also write SVG charts");
    sim->add_option("--params-json", sim_args.params_json, "raw case-study parameter JSON");
    int sim_seeds = 0;
    std::string sim_grid;
    std::string sim_noise_grid;
    int sim_dim = 0;
    double sim_separation = 0.0;
    double sim_noise_floor = 0.0;
    double sim_separation_b = 0.0;
    int sim_dim_b = 0;
    double sim_corruption = -1.0;
    bool sim_identical = false;
    int sim_hidden = 0;
    auto* o_seeds = sim->add_option("--seeds", sim_seeds, "classifier seeds per cell");
    auto* o_grid = sim->add_option("--grid", sim_grid, "per-class train sizes, comma-separated");
    auto* o_noise = sim->add_option("--noise-grid", sim_noise_grid, "noise variances");
    auto* o_dim = sim->add_option("--dim", sim_dim, "representation dimension");
    auto* o_sep = sim->add_option("--separation", sim_separation, "class separation");
    auto* o_nf = sim->add_option("--noise-floor", sim_noise_floor, "within-class stdev");
    auto* o_sep_b = sim->add_option("--separation-b", sim_separation_b, "encoder B separation");
    auto* o_dim_b = sim->add_option("--dim-b", sim_dim_b, "encoder B dimension");
    auto* o_corr = sim->add_option("--corruption-noise", sim_corruption,
                                   "extra variance for the corrupted encoder");
    sim->add_flag("--identical", sim_identical, "compare two identical classifier specs");
    auto* o_hidden = sim->add_option("--hidden", sim_hidden, "MLP hidden units");

    // shared numeric options, present on all subcommands
    std::vector<CLI::App*> subs{bound, rec, power, collapse, sim};
    double opt_delta = 0.0;
    double opt_eta = 0.0;
    double opt_alpha = 0.0;
    int64_t opt_sims = 0;
    int opt_bits = 0;
    double opt_low = 0.0;
    double opt_high = 0.0;
    int64_t opt_trials = 0;
    uint64_t opt_seed = 0;
    std::vector<CLI::Option*> delta_opts;
    std::vector<CLI::Option*> eta_opts;
    std::vector<CLI::Option*> alpha_opts;
    std::vector<CLI::Option*> sims_opts;
    std::vector<CLI::Option*> bits_opts;
    std::vector<CLI::Option*> low_opts;
    std::vector<CLI::Option*> high_opts;
    std::vector<CLI::Option*> trials_opts;
    std::vector<CLI::Option*> seed_opts;
    for (CLI::App* s : subs) {
        if (s != bound) {
            delta_opts.push_back(s->add_option("--delta", opt_delta, "confidence delta"));
            bits_opts.push_back(s->add_option("--bits", opt_bits, "bits per parameter"));
        }
        eta_opts.push_back(s->add_option("--eta", opt_eta, "train:val:test = eta:1:1"));
        alpha_opts.push_back(s->add_option("--alpha", opt_alpha, "significance level"));
        sims_opts.push_back(s->add_option("--sims", opt_sims, "simulations per seed"));
        low_opts.push_back(
            s->add_option("--collapsed-below", opt_low, "collapsed verdict threshold"));
        high_opts.push_back(
            s->add_option("--not-collapsed-at", opt_high, "not-collapsed verdict threshold"));
        trials_opts.push_back(s->add_option("--trials", opt_trials, "collapse trials"));
        seed_opts.push_back(s->add_option("--seed", opt_seed, "RNG seed"));
    }

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg = load_config(config_path);
    const auto given = [](const std::vector<CLI::Option*>& opts) {
        for (const CLI::Option* o : opts) {
            if (o->count() > 0) {
                return true;
            }
        }
        return false;
    };
    if (given(delta_opts)) {
        cfg.delta = opt_delta;
    }
    if (given(eta_opts)) {
        cfg.eta = opt_eta;
    }
    if (given(alpha_opts)) {
        cfg.alpha = opt_alpha;
    }
    if (given(sims_opts)) {
        cfg.num_sims = opt_sims;
    }
    if (given(bits_opts)) {
        cfg.bits_per_param = opt_bits;
    }
    if (given(low_opts)) {
        cfg.collapsed_below = opt_low;
    }
    if (given(high_opts)) {
        cfg.not_collapsed_at = opt_high;
    }
    if (given(trials_opts)) {
        cfg.collapse_trials = opt_trials;
    }
    if (given(seed_opts)) {
        cfg.rng_seed = opt_seed;
    }

    if (bound->parsed()) {
        return run_bound(bound_args, cfg, bound_delta->count() > 0, bound_bits->count() > 0);
    }
    if (rec->parsed()) {
        return run_recommend(rec_args, cfg);
    }
    if (power->parsed()) {
        return run_power(power_args, cfg);
    }
    if (collapse->parsed()) {
        return run_collapse(collapse_args, cfg);
    }
    if (sim->parsed()) {
        json overrides = json::object();
        if (o_seeds->count()) {
            overrides["num_seeds"] = sim_seeds;
        }
        if (o_grid->count()) {
            overrides["per_class_train_grid"] = parse_size_list(sim_grid);
        }
        if (o_noise->count()) {
            json grid = json::array();
            std::stringstream stream(sim_noise_grid);
            std::string cell;
            while (std::getline(stream, cell, ',')) {
                if (!cell.empty()) {
                    grid.push_back(std::stod(cell));
                }
            }
            overrides["noise_grid"] = grid;
        }
        if (o_dim->count()) {
            overrides["dim"] = sim_dim;
        }
        if (o_sep->count()) {
            overrides["class_separation"] = sim_separation;
        }
        if (o_nf->count()) {
            overrides["noise_floor"] = sim_noise_floor;
        }
        if (o_sep_b->count()) {
            overrides["separation_b"] = sim_separation_b;
        }
        if (o_dim_b->count()) {
            overrides["dim_b"] = sim_dim_b;
        }
        if (o_corr->count()) {
            overrides["corruption_noise"] = sim_corruption;
        }
        if (sim_identical) {
            overrides["identical_classifiers"] = true;
        }
        if (o_hidden->count()) {
            overrides["mlp_hidden_units"] = sim_hidden;
        }
        return run_simulate(sim_args, cfg, given(sims_opts), overrides);
    }
    return 0;
}
