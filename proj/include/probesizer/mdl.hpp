#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "probesizer/dataset.hpp"
#include "probesizer/trainer.hpp"

namespace probesizer {

enum class MdlKind { Variational, Prequential };

struct MdlScore {
    MdlKind kind = MdlKind::Prequential;
    double codelength_bits = 0.0;

    // Variational components.
    double data_cost_bits = 0.0;
    double model_cost_bits = 0.0;

    // Prequential details.
    int64_t t1 = 0;
    int num_classes = 0;
    std::vector<int64_t> portion_boundaries;  // cumulative counts, last == N
    std::vector<double> portion_cost_bits;    // cost of portion i+1 under model i
    double uniform_baseline_bits = 0.0;       // N * log2(K)
    // Early-stage losses can exceed the uniform code; the raw total keeps
    // them, this one caps each portion at its uniform cost.
    double clipped_codelength_bits = 0.0;
};

// Sum of transmitted-data and transmitted-model costs.
MdlScore variational_mdl(double data_cost_bits, double model_cost_bits);

// Codelength of one portion: rows to transmit, given models may only see the
// first `visible` training rows. Returns total bits for those rows.
using StageCoder = std::function<double(const std::vector<size_t>& visible_rows,
                                        const std::vector<size_t>& portion_rows)>;

// Online-code schedule and aggregation with an injectable per-stage coder;
// the first portion is sent with the uniform code.
MdlScore prequential_codelength(int64_t num_train, int num_classes, double t1_fraction,
                                const std::vector<size_t>& ordered_train_rows,
                                const StageCoder& coder);

// Prequential MDL with real probes: geometric doubling schedule from
// t1 = max(1, round(t1_fraction * N)); each stage trains on the seen prefix
// and pays the base-2 cross entropy of the next portion.
MdlScore prequential_mdl(const RepresentationDataset& ds, const TrainerConfig& cfg,
                         double t1_fraction, uint64_t rng_seed);

}  // namespace probesizer
