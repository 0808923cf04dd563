#include "probesizer/bounds.hpp"

#include <cmath>

namespace probesizer {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_delta(double delta, const char* name) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        fail_validation(std::string(name) + " must lie in (0,1)");
    }
}

void check_common(int64_t n, double metric_range) {
    if (n < 1) {
        fail_validation("n must be >= 1");
    }
    if (!(metric_range > 0.0) || !std::isfinite(metric_range)) {
        fail_validation("metric range must be positive and finite");
    }
}

}  // namespace

void FunctionClassSpec::validate() const {
    if (param_count < 1) {
        fail_validation("function class param_count must be >= 1");
    }
    if (bits_per_param < 1) {
        fail_validation("bits_per_param must be >= 1");
    }
}

double FunctionClassSpec::log_cardinality() const {
    validate();
    return static_cast<double>(bits_per_param) * kLn2 +
           std::log(static_cast<double>(param_count));
}

FunctionClassSpec FunctionClassSpec::from_classifier(const ClassifierSpec& spec,
                                                     int bits_per_param) {
    FunctionClassSpec out{parameter_count(spec), bits_per_param};
    out.validate();
    return out;
}

double two_log_term(double delta, const FunctionClassSpec& spec) {
    check_delta(delta, "delta");
    return 2.0 * (kLn2 + spec.log_cardinality() - std::log(delta));
}

double finite_class_margin(int64_t n, double delta, double metric_range,
                           const FunctionClassSpec& spec) {
    check_common(n, metric_range);
    // sqrt(t)/sqrt(n) rather than sqrt(t/n): keeps the 1/sqrt(n) scaling exact
    // (margin(n) = 2 * margin(4n) to the last bit).
    return metric_range * std::sqrt(two_log_term(delta, spec)) /
           std::sqrt(static_cast<double>(n));
}

BoundResult control_task_margin(int64_t n, double delta_original, double delta_control,
                                double metric_range, const FunctionClassSpec& spec) {
    check_delta(delta_original, "delta_original");
    check_delta(delta_control, "delta_control");
    BoundResult result;
    result.margin = finite_class_margin(n, delta_original, metric_range, spec) +
                    finite_class_margin(n, delta_control, metric_range, spec);
    result.effective_delta =
        delta_original + delta_control - delta_original * delta_control;
    return result;
}

double variational_mdl_margin(int64_t n, double delta, double metric_range,
                              const FunctionClassSpec& spec) {
    return finite_class_margin(n, delta, metric_range, spec);
}

double prequential_mdl_margin(int64_t n, double delta, double metric_range,
                              const FunctionClassSpec& spec, double c_constant,
                              double t1_fraction) {
    check_common(n, metric_range);
    if (!(c_constant > 0.0)) {
        fail_validation("prequential constant C must be positive");
    }
    if (!(t1_fraction > 0.0) || !(t1_fraction < 1.0)) {
        fail_validation("t1_fraction must lie in (0,1)");
    }
    const auto t1 = static_cast<int64_t>(std::llround(t1_fraction * static_cast<double>(n)));
    if (t1 < 1) {
        fail_validation("first portion t1 = round(t1_fraction * n) must be >= 1");
    }
    const double inflation =
        c_constant * static_cast<double>(n) / static_cast<double>(t1);
    return inflation * finite_class_margin(n, delta, metric_range, spec);
}

BoundResult evaluate_bound(const BoundQuery& query) {
    const bool mdl_adapter = query.adapter == BoundAdapter::VariationalMdl ||
                             query.adapter == BoundAdapter::PrequentialMdl;
    if (mdl_adapter && !query.metric_range.has_value()) {
        fail_validation(
            "MDL codelengths are unbounded: supply an explicit metric range cap");
    }
    const double range = query.metric_range.value_or(kAccuracyMetricRange);

    BoundResult result;
    switch (query.adapter) {
        case BoundAdapter::Plain:
            result.margin = finite_class_margin(query.n, query.delta, range, query.class_spec);
            result.effective_delta = query.delta;
            break;
        case BoundAdapter::ControlTask: {
            const double delta_control =
                query.control_delta > 0.0 ? query.control_delta : query.delta;
            result = control_task_margin(query.n, query.delta, delta_control, range,
                                         query.class_spec);
            break;
        }
        case BoundAdapter::VariationalMdl:
            result.margin = variational_mdl_margin(query.n, query.delta, range, query.class_spec);
            result.effective_delta = query.delta;
            break;
        case BoundAdapter::PrequentialMdl:
            result.margin = prequential_mdl_margin(query.n, query.delta, range, query.class_spec,
                                                   query.prequential_c,
                                                   query.prequential_t1_fraction);
            result.effective_delta = query.delta;
            result.loose = true;
            break;
    }
    return result;
}

}  // namespace probesizer
