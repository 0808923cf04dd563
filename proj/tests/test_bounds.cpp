#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "probesizer/bounds.hpp"
#include "probesizer/rng.hpp"

using namespace probesizer;

// Frozen reference values from tests/oracles/bound_values.py (mpmath, 60
// digits). They pin 2*ln(2 * 2^bits * P / delta) and the margins built on it.
namespace {
constexpr double kTwoLog769 = 95.8792573438724;
constexpr double kTwoLog4097 = 99.2250959599549;
constexpr double kMargin65536P4097 = 0.0389108572118281;
constexpr double kMargin10000P769 = 0.0979179540962087;
constexpr double kPreq2x1000P769 = 619.287517535667;
constexpr double kMargin100P1e9B64 = 1.29767879937445;

const FunctionClassSpec kSpec769{769, 32};
const FunctionClassSpec kSpec4097{4097, 32};
}  // namespace

TEST_CASE("two_log_term matches the high-precision oracle") {
    CHECK(two_log_term(1e-8, kSpec769) == doctest::Approx(kTwoLog769).epsilon(1e-12));
    CHECK(two_log_term(1e-8, kSpec4097) == doctest::Approx(kTwoLog4097).epsilon(1e-12));
}

TEST_CASE("finite class margin reproduces the reference points") {
    const double m = finite_class_margin(65536, 1e-8, 1.0, kSpec4097);
    CHECK(m == doctest::Approx(kMargin65536P4097).epsilon(1e-12));
    // rounds to 0.039
    CHECK(std::round(m * 1000.0) / 1000.0 == doctest::Approx(0.039));

    const double m2 = finite_class_margin(10000, 1e-8, 1.0, kSpec769);
    CHECK(m2 == doctest::Approx(kMargin10000P769).epsilon(1e-12));
    CHECK(std::fabs(m2 - 0.09792) < 1e-4);
}

TEST_CASE("quadrupling n halves the margin exactly") {
    Rng rng(3);
    for (int round = 0; round < 100; ++round) {
        const int64_t n = 1 + static_cast<int64_t>(rng.below(1000000));
        const FunctionClassSpec spec{1 + static_cast<int64_t>(rng.below(100000)), 32};
        const double ratio = finite_class_margin(n, 1e-8, 1.0, spec) /
                             finite_class_margin(4 * n, 1e-8, 1.0, spec);
        CHECK(ratio == 2.0);
    }
}

TEST_CASE("margin monotonicity in n, P, and delta") {
    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        const int64_t n = 1 + static_cast<int64_t>(rng.below(1000000));
        const int64_t k = 1 + static_cast<int64_t>(rng.below(1000));
        const int64_t p = 1 + static_cast<int64_t>(rng.below(1000000));
        const double delta = std::pow(10.0, -1.0 - 12.0 * rng.uniform01());
        const FunctionClassSpec spec{p, 32};
        CHECK(finite_class_margin(n, delta, 1.0, spec) >
              finite_class_margin(n + k, delta, 1.0, spec));
        CHECK(finite_class_margin(n, delta, 1.0, FunctionClassSpec{p + k, 32}) >
              finite_class_margin(n, delta, 1.0, spec));
        CHECK(finite_class_margin(n, delta, 1.0, spec) >
              finite_class_margin(n, std::min(0.99, 2.0 * delta), 1.0, spec));
    }
}

TEST_CASE("log-space evaluation stays finite and accurate for huge classes") {
    const FunctionClassSpec spec{1000000000, 64};
    const double m = finite_class_margin(100, 1e-8, 1.0, spec);
    CHECK(std::isfinite(m));
    CHECK(m == doctest::Approx(kMargin100P1e9B64).epsilon(1e-12));

    // extended-precision route
    const long double t = 2.0L * (logl(2.0L) + 64.0L * logl(2.0L) + logl(1e9L) - logl(1e-8L));
    const long double reference = sqrtl(t / 100.0L);
    CHECK(std::fabs(m - static_cast<double>(reference)) / static_cast<double>(reference) <
          1e-9);
}

TEST_CASE("control task margin doubles the plain margin at equal deltas") {
    const BoundResult result = control_task_margin(4096, 1e-8, 1e-8, 1.0, kSpec769);
    const double plain = finite_class_margin(4096, 1e-8, 1.0, kSpec769);
    CHECK(result.margin == 2.0 * plain);
    CHECK(result.effective_delta == 1e-8 + 1e-8 - 1e-8 * 1e-8);
    CHECK(result.effective_delta == doctest::Approx(2e-8 - 1e-16).epsilon(1e-14));
    CHECK(result.effective_delta >= 1e-8);

    const BoundResult uneven = control_task_margin(4096, 1e-8, 1e-6, 1.0, kSpec769);
    CHECK(uneven.margin == finite_class_margin(4096, 1e-8, 1.0, kSpec769) +
                               finite_class_margin(4096, 1e-6, 1.0, kSpec769));
}

TEST_CASE("variational adapter is the identity on the plain margin") {
    Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        const int64_t n = 1 + static_cast<int64_t>(rng.below(100000));
        const FunctionClassSpec spec{1 + static_cast<int64_t>(rng.below(100000)), 32};
        const double delta = std::pow(10.0, -1.0 - 10.0 * rng.uniform01());
        CHECK(variational_mdl_margin(n, delta, 1.0, spec) ==
              finite_class_margin(n, delta, 1.0, spec));
    }
}

TEST_CASE("prequential adapter inflates by C*n/t1 exactly") {
    // t1 = round(0.001 * 10000) = 10 -> inflation 1000
    const double plain = finite_class_margin(10000, 1e-8, 1.0, kSpec769);
    CHECK(prequential_mdl_margin(10000, 1e-8, 1.0, kSpec769, 1.0, 0.001) ==
          1.0 * 10000.0 / 10.0 * plain);

    // C=2, n=1000, t1=1
    const double preq = prequential_mdl_margin(1000, 1e-8, 1.0, kSpec769, 2.0, 0.001);
    CHECK(preq == 2.0 * 1000.0 / 1.0 * finite_class_margin(1000, 1e-8, 1.0, kSpec769));
    CHECK(preq == doctest::Approx(kPreq2x1000P769).epsilon(1e-12));
    CHECK(std::fabs(preq - 619.4) < 0.5);
}

TEST_CASE("prequential preconditions") {
    CHECK_THROWS_AS(prequential_mdl_margin(1000, 1e-8, 1.0, kSpec769, 1.0, 1.0), Error);
    CHECK_THROWS_AS(prequential_mdl_margin(1000, 1e-8, 1.0, kSpec769, 1.0, 0.0), Error);
    // round(1e-6 * 100) = 0 -> first portion would be empty
    CHECK_THROWS_AS(prequential_mdl_margin(100, 1e-8, 1.0, kSpec769, 1.0, 1e-6), Error);
    CHECK_THROWS_AS(prequential_mdl_margin(1000, 1e-8, 1.0, kSpec769, 0.0, 0.001), Error);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(finite_class_margin(4096, 0.0, 1.0, kSpec769), Error);
    CHECK_THROWS_AS(finite_class_margin(4096, 1.0, 1.0, kSpec769), Error);
    CHECK_THROWS_AS(finite_class_margin(4096, 2.0, 1.0, kSpec769), Error);
    CHECK_THROWS_AS(finite_class_margin(0, 1e-8, 1.0, kSpec769), Error);
    CHECK_THROWS_AS(finite_class_margin(4096, 1e-8, 0.0, kSpec769), Error);
    CHECK_THROWS_AS(finite_class_margin(4096, 1e-8, 1.0, FunctionClassSpec{0, 32}), Error);
    CHECK_THROWS_AS(finite_class_margin(4096, 1e-8, 1.0, FunctionClassSpec{769, 0}), Error);
}

TEST_CASE("bound query dispatch and the MDL range requirement") {
    BoundQuery query;
    query.n = 65536;
    query.class_spec = kSpec4097;

    const BoundResult plain = evaluate_bound(query);
    CHECK(plain.margin == doctest::Approx(kMargin65536P4097).epsilon(1e-12));
    CHECK(plain.effective_delta == query.delta);
    CHECK_FALSE(plain.loose);

    query.adapter = BoundAdapter::ControlTask;
    CHECK(evaluate_bound(query).margin == 2.0 * plain.margin);

    // codelength metrics refuse a defaulted range
    query.adapter = BoundAdapter::VariationalMdl;
    CHECK_THROWS_AS(evaluate_bound(query), Error);
    query.metric_range = 3.0;
    CHECK(evaluate_bound(query).margin == doctest::Approx(3.0 * plain.margin));

    query.adapter = BoundAdapter::PrequentialMdl;
    query.n = 10000;
    const BoundResult preq = evaluate_bound(query);
    CHECK(preq.loose);
    CHECK(preq.margin ==
          doctest::Approx(1000.0 * finite_class_margin(10000, query.delta, 3.0, kSpec4097)));
}

TEST_CASE("function class spec log cardinality") {
    // ln|F| = bits*ln2 + ln P
    const FunctionClassSpec spec{769, 32};
    CHECK(spec.log_cardinality() ==
          doctest::Approx(32.0 * 0.6931471805599453 + std::log(769.0)).epsilon(1e-15));
}
