#include "probesizer/mdl.hpp"

#include <algorithm>
#include <cmath>

namespace probesizer {

MdlScore variational_mdl(double data_cost_bits, double model_cost_bits) {
    if (data_cost_bits < 0.0 || model_cost_bits < 0.0) {
        fail_validation("MDL cost components must be non-negative");
    }
    MdlScore score;
    score.kind = MdlKind::Variational;
    score.data_cost_bits = data_cost_bits;
    score.model_cost_bits = model_cost_bits;
    score.codelength_bits = data_cost_bits + model_cost_bits;
    score.clipped_codelength_bits = score.codelength_bits;
    return score;
}

MdlScore prequential_codelength(int64_t num_train, int num_classes, double t1_fraction,
                                const std::vector<size_t>& ordered_train_rows,
                                const StageCoder& coder) {
    if (num_train < 1) {
        fail_validation("prequential coding needs at least one training row");
    }
    if (num_classes < 2) {
        fail_validation("prequential coding needs num_classes >= 2");
    }
    if (!(t1_fraction > 0.0) || !(t1_fraction < 1.0)) {
        fail_validation("t1_fraction must lie in (0,1)");
    }
    if (static_cast<int64_t>(ordered_train_rows.size()) != num_train) {
        fail_validation("ordered training rows must cover all training rows");
    }

    const double log2_k = std::log2(static_cast<double>(num_classes));
    MdlScore score;
    score.kind = MdlKind::Prequential;
    score.num_classes = num_classes;
    score.t1 = std::max<int64_t>(
        1, std::llround(t1_fraction * static_cast<double>(num_train)));
    score.uniform_baseline_bits = static_cast<double>(num_train) * log2_k;

    // Geometric doubling from t1 up to N.
    score.portion_boundaries.push_back(std::min(score.t1, num_train));
    while (score.portion_boundaries.back() < num_train) {
        score.portion_boundaries.push_back(
            std::min(num_train, score.portion_boundaries.back() * 2));
    }

    const double first_portion_bits = static_cast<double>(score.portion_boundaries[0]) * log2_k;
    score.codelength_bits = first_portion_bits;
    score.clipped_codelength_bits = first_portion_bits;

    for (size_t stage = 0; stage + 1 < score.portion_boundaries.size(); ++stage) {
        const int64_t seen = score.portion_boundaries[stage];
        const int64_t next = score.portion_boundaries[stage + 1];
        const std::vector<size_t> visible(ordered_train_rows.begin(),
                                          ordered_train_rows.begin() + seen);
        const std::vector<size_t> portion(ordered_train_rows.begin() + seen,
                                          ordered_train_rows.begin() + next);
        const double cost = coder(visible, portion);
        if (cost < 0.0 || !std::isfinite(cost)) {
            fail_validation("stage codelength must be finite and non-negative");
        }
        score.portion_cost_bits.push_back(cost);
        score.codelength_bits += cost;
        score.clipped_codelength_bits +=
            std::min(cost, static_cast<double>(next - seen) * log2_k);
    }
    return score;
}

MdlScore prequential_mdl(const RepresentationDataset& ds, const TrainerConfig& cfg,
                         double t1_fraction, uint64_t rng_seed) {
    ds.validate();
    cfg.validate();
    auto train_rows = ds.rows_in_split(Split::Train);
    if (train_rows.empty()) {
        fail_validation("prequential coding needs a train split");
    }
    Rng order_rng = Rng::stream(rng_seed, {0});
    order_rng.shuffle(train_rows);

    const ProbeModel model(cfg.model);
    uint64_t stage_counter = 0;
    const StageCoder coder = [&](const std::vector<size_t>& visible,
                                 const std::vector<size_t>& portion) {
        // Train on the visible prefix only; validation for early stopping
        // reuses the dataset's val split.
        RepresentationDataset stage_ds = ds;
        for (size_t r = 0; r < stage_ds.splits.size(); ++r) {
            if (stage_ds.splits[r] == Split::Train) {
                stage_ds.splits[r] = Split::Test;  // hidden from the stage trainer
            }
        }
        for (size_t r : visible) {
            stage_ds.splits[r] = Split::Train;
        }
        const TrainedProbe probe =
            train_probe(stage_ds, cfg, Rng::derive(rng_seed, {1, stage_counter++}));
        return model.total_log2_loss(probe.weights, ds, portion);
    };

    return prequential_codelength(static_cast<int64_t>(train_rows.size()), ds.num_classes,
                                  t1_fraction, train_rows, coder);
}

}  // namespace probesizer
