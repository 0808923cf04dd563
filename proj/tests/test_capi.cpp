#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Exercises the shared-library surface the way an external client would:
// status codes, last-error messages, opaque handles.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "probesizer.h"

namespace {

struct Handle {
    ps_predictions* ptr = nullptr;
    ~Handle() { ps_predictions_free(ptr); }
};

void make_disagreement(Handle& out, size_t items) {
    std::vector<std::string> id_storage;
    std::vector<const char*> ids;
    for (size_t i = 0; i < items; ++i) {
        id_storage.push_back("i" + std::to_string(i));
    }
    for (const auto& id : id_storage) {
        ids.push_back(id.c_str());
    }
    const int64_t seeds[] = {0};
    std::vector<uint8_t> a(items, 1);
    std::vector<uint8_t> b(items, 0);
    REQUIRE(ps_predictions_create(ids.data(), items, seeds, 1, a.data(), b.data(), &out.ptr) ==
            PS_OK);
}

}  // namespace

TEST_CASE("version and parameter counts") {
    CHECK(ps_version() != nullptr);
    ps_classifier_spec logreg{PS_CLASSIFIER_LOGREG, 768, 0, 2};
    int64_t count = 0;
    CHECK(ps_parameter_count(&logreg, &count) == PS_OK);
    CHECK(count == 769);
    ps_classifier_spec mlp{PS_CLASSIFIER_MLP, 768, 20, 2};
    CHECK(ps_parameter_count(&mlp, &count) == PS_OK);
    CHECK(count == 15401);

    ps_classifier_spec bad{PS_CLASSIFIER_MLP, 768, 0, 2};
    CHECK(ps_parameter_count(&bad, &count) == PS_ERROR_VALIDATION);
    CHECK(std::strlen(ps_last_error()) > 0);
}

TEST_CASE("bound margins and validation through the C surface") {
    ps_bound_query query{};
    query.n = 65536;
    query.delta = 1e-8;
    query.param_count = 4097;
    query.bits_per_param = 32;
    query.adapter = PS_BOUND_PLAIN;
    ps_bound_result result{};
    REQUIRE(ps_bound_margin(&query, &result) == PS_OK);
    CHECK(result.margin == doctest::Approx(0.0389108572118281).epsilon(1e-12));
    CHECK(result.loose == 0);

    query.adapter = PS_BOUND_CONTROL_TASK;
    ps_bound_result control{};
    REQUIRE(ps_bound_margin(&query, &control) == PS_OK);
    CHECK(control.margin == doctest::Approx(2.0 * result.margin));

    query.adapter = PS_BOUND_PREQUENTIAL_MDL;
    CHECK(ps_bound_margin(&query, &control) == PS_ERROR_VALIDATION);  // needs a range cap
    query.metric_range = 2.0;
    REQUIRE(ps_bound_margin(&query, &control) == PS_OK);
    CHECK(control.loose == 1);

    query.delta = 2.0;
    CHECK(ps_bound_margin(&query, &control) == PS_ERROR_VALIDATION);
    CHECK(std::string(ps_last_error()).find("delta") != std::string::npos);
}

TEST_CASE("required size, totals, and recommendations") {
    int64_t n = 0;
    REQUIRE(ps_required_train_size(0.05, 1e-8, 1.0, 4097, 32, &n) == PS_OK);
    CHECK(n == 39691);
    CHECK(ps_required_train_size(-0.1, 1e-8, 1.0, 4097, 32, &n) == PS_ERROR_VALIDATION);

    int64_t total = 0;
    REQUIRE(ps_total_size(22263, 4.0, &total) == PS_OK);
    CHECK(total == 33395);

    const double r1[] = {0.9};
    const double r2[] = {0.9 - 0.1281};
    ps_classifier_spec spec{PS_CLASSIFIER_LOGREG, 768, 0, 2};
    ps_recommendation rec{};
    REQUIRE(ps_recommend(r1, r2, 1, &spec, &spec, 1e-8, 4.0, 32, 0, -1, &rec) == PS_OK);
    CHECK(rec.n_train == 23372);
    CHECK(rec.epsilon == doctest::Approx(0.06405));
    CHECK(rec.collapse_warning == 0);

    const double same[] = {0.5};
    CHECK(ps_recommend(same, same, 1, &spec, &spec, 1e-8, 4.0, 32, 0, -1, &rec) ==
          PS_ERROR_COLLAPSED);

    REQUIRE(ps_recommend(r1, r2, 1, &spec, &spec, 1e-8, 4.0, 32, 0, 1, &rec) == PS_OK);
    CHECK(rec.collapse_warning == 1);
}

TEST_CASE("prediction handles: create, accessors, round trip") {
    Handle pred;
    const char* ids[] = {"a", "b", "c", "d"};
    const int64_t seeds[] = {3, 9};
    const uint8_t ca[] = {1, 1, 0, 1, 1, 0, 0, 1};
    const uint8_t cb[] = {0, 1, 0, 0, 1, 1, 0, 0};
    REQUIRE(ps_predictions_create(ids, 4, seeds, 2, ca, cb, &pred.ptr) == PS_OK);
    CHECK(ps_predictions_num_items(pred.ptr) == 4);
    CHECK(ps_predictions_num_seeds(pred.ptr) == 2);

    int64_t seed_ids[2] = {0, 0};
    REQUIRE(ps_predictions_seed_ids(pred.ptr, seed_ids) == PS_OK);
    CHECK(seed_ids[0] == 3);
    CHECK(seed_ids[1] == 9);

    double r1[2];
    double r2[2];
    REQUIRE(ps_predictions_accuracy_pairs(pred.ptr, r1, r2) == PS_OK);
    CHECK(r1[0] == doctest::Approx(0.75));
    CHECK(r2[0] == doctest::Approx(0.25));

    ps_contingency_table table{};
    REQUIRE(ps_contingency(pred.ptr, 3, &table) == PS_OK);
    CHECK(table.n10 == 2);
    CHECK(ps_contingency(pred.ptr, 4, &table) == PS_ERROR_VALIDATION);

    const auto path =
        (std::filesystem::temp_directory_path() / "probesizer_capi_pred.csv").string();
    REQUIRE(ps_predictions_write_csv(pred.ptr, path.c_str()) == PS_OK);
    Handle loaded;
    REQUIRE(ps_predictions_read_csv(path.c_str(), &loaded.ptr) == PS_OK);
    CHECK(ps_predictions_num_items(loaded.ptr) == 4);
    CHECK(ps_predictions_num_seeds(loaded.ptr) == 2);
    double l1[2];
    double l2[2];
    REQUIRE(ps_predictions_accuracy_pairs(loaded.ptr, l1, l2) == PS_OK);
    CHECK(l1[0] == r1[0]);
    CHECK(l2[1] == r2[1]);
    std::filesystem::remove(path);

    Handle missing;
    CHECK(ps_predictions_read_csv("/nonexistent/nope.csv", &missing.ptr) == PS_ERROR_IO);
}

TEST_CASE("mcnemar, critical values, significance") {
    ps_contingency_table table{0, 15, 5, 0};
    double chi2 = 0.0;
    REQUIRE(ps_mcnemar_chi2(&table, &chi2) == PS_OK);
    CHECK(chi2 == doctest::Approx(5.0));

    double critical = 0.0;
    REQUIRE(ps_chi2_critical_1df(0.05, &critical) == PS_OK);
    CHECK(critical == doctest::Approx(3.841458820694124).epsilon(1e-9));

    int32_t significant = 0;
    REQUIRE(ps_is_significant(5.0, 0.05, &significant) == PS_OK);
    CHECK(significant == 1);
    REQUIRE(ps_is_significant(critical, 0.05, &significant) == PS_OK);
    CHECK(significant == 0);
}

TEST_CASE("power estimation and curves through the C surface") {
    Handle pred;
    make_disagreement(pred, 64);
    ps_power_estimate estimate{};
    REQUIRE(ps_estimate_power(pred.ptr, 32, 200, 0.05, 7, PS_SUBSAMPLE_AUTO, &estimate) ==
            PS_OK);
    CHECK(estimate.power == 1.0);
    CHECK(estimate.num_simulations == 200);

    const int64_t sizes[] = {8, 16, 64};
    ps_power_estimate curve[3];
    REQUIRE(ps_power_curve(pred.ptr, sizes, 3, 100, 0.05, 7, PS_SUBSAMPLE_AUTO, curve) == PS_OK);
    CHECK(curve[0].subsample_size == 8);
    CHECK(curve[2].power == 1.0);

    CHECK(ps_estimate_power(pred.ptr, 100, 200, 0.05, 7, PS_SUBSAMPLE_AUTO, &estimate) ==
          PS_ERROR_VALIDATION);
}

TEST_CASE("suboptimality, collapse trials, fold plans") {
    const double observed[] = {0.9, 0.88, 0.91};
    double best = 0.0;
    double gaps[3];
    REQUIRE(ps_suboptimality_gap(observed, 3, &best, gaps) == PS_OK);
    CHECK(best == doctest::Approx(0.91));
    CHECK(gaps[1] == doctest::Approx(0.03));

    Handle pred;
    make_disagreement(pred, 40);
    uint8_t significant[12];
    REQUIRE(ps_subsample_trials(pred.ptr, 20, 12, 0.05, 3, significant) == PS_OK);
    ps_collapse_report report{};
    REQUIRE(ps_detect_collapse(significant, 12, 0.2, 0.8, &report) == PS_OK);
    CHECK(report.verdict == PS_NOT_COLLAPSED);
    CHECK(report.num_significant == 12);

    ps_fold_assignment plan[6];
    REQUIRE(ps_fold_plan(6, plan) == PS_OK);
    CHECK(plan[5].val_fold == 5);
    CHECK(plan[5].test_fold == 0);
    CHECK(ps_fold_plan(2, plan) == PS_ERROR_VALIDATION);
}

TEST_CASE("case study through the C surface") {
    const auto dir =
        (std::filesystem::temp_directory_path() / "probesizer_capi_study").string();
    std::filesystem::remove_all(dir);
    const char* params = R"({"num_seeds": 2, "per_class_train_grid": [32],
                             "noise_grid": [3.0], "dim": 4, "num_sims_per_seed": 100,
                             "trainer_max_epochs": 10, "collapse_trials": 4})";
    char* summary = nullptr;
    REQUIRE(ps_run_case_study("gaussian-noise", params, dir.c_str(), 5, 0, &summary) == PS_OK);
    REQUIRE(summary != nullptr);
    CHECK(std::string(summary).find("gaussian-noise") != std::string::npos);
    ps_string_free(summary);
    CHECK(std::filesystem::exists(dir + "/report.json"));
    std::filesystem::remove_all(dir);

    CHECK(ps_run_case_study("bogus-kind", "", dir.c_str(), 5, 0, nullptr) ==
          PS_ERROR_VALIDATION);
    CHECK(ps_run_case_study("bound-check", R"({"zzz": 1})", dir.c_str(), 5, 0, nullptr) ==
          PS_ERROR_VALIDATION);
}
