#pragma once

#include <cstdint>
#include <optional>

#include "probesizer/core.hpp"

namespace probesizer {

// Finite hypothesis space |F| = 2^bits * P, held in log space so that huge
// parameter counts never overflow.
struct FunctionClassSpec {
    int64_t param_count = 1;
    int bits_per_param = 32;

    void validate() const;

    // ln|F| = bits * ln 2 + ln P
    double log_cardinality() const;

    static FunctionClassSpec from_classifier(const ClassifierSpec& spec, int bits_per_param = 32);
};

// 2 * ln(2|F| / delta), the quantity under the square root of the bound.
double two_log_term(double delta, const FunctionClassSpec& spec);

// B * sqrt(2 * ln(2|F|/delta) / n), evaluated without materializing |F|.
double finite_class_margin(int64_t n, double delta, double metric_range,
                           const FunctionClassSpec& spec);

enum class BoundAdapter { Plain, ControlTask, VariationalMdl, PrequentialMdl };

struct BoundResult {
    double margin = 0.0;
    double effective_delta = 0.0;
    // Wide-margin advisory for the prequential adapter (union bound over the
    // transmission schedule makes it looser than the others).
    bool loose = false;
};

// Control-task difference: margins add, confidences multiply.
BoundResult control_task_margin(int64_t n, double delta_original, double delta_control,
                                double metric_range, const FunctionClassSpec& spec);

// Identity adapter, kept distinct so reports can name the metric.
double variational_mdl_margin(int64_t n, double delta, double metric_range,
                              const FunctionClassSpec& spec);

// Online-coding adapter: the plain margin inflated by C*n/t1 where
// t1 = round(t1_fraction * n) >= 1.
double prequential_mdl_margin(int64_t n, double delta, double metric_range,
                              const FunctionClassSpec& spec, double c_constant,
                              double t1_fraction);

constexpr double kDefaultDelta = 1e-8;
constexpr double kDefaultPrequentialC = 1.0;
constexpr double kDefaultPrequentialT1Fraction = 0.001;

// One bound evaluation request. metric_range stays unset for accuracy-family
// metrics (defaults to 1); the MDL adapters refuse a defaulted range because
// codelength losses are unbounded.
struct BoundQuery {
    int64_t n = 1;
    double delta = kDefaultDelta;
    std::optional<double> metric_range;
    FunctionClassSpec class_spec;
    BoundAdapter adapter = BoundAdapter::Plain;
    double control_delta = 0.0;  // <= 0: reuse delta
    double prequential_c = kDefaultPrequentialC;
    double prequential_t1_fraction = kDefaultPrequentialT1Fraction;
};

BoundResult evaluate_bound(const BoundQuery& query);

}  // namespace probesizer
