#pragma once

#include <cstdint>
#include <vector>

#include "probesizer/core.hpp"
#include "probesizer/dataset.hpp"
#include "probesizer/rng.hpp"

namespace probesizer {

// Hyperparameter grid searched by validation accuracy.
struct TrainerConfig {
    std::vector<double> learning_rates = {1e-4, 5e-4, 1e-3, 5e-3, 1e-2};
    std::vector<int> batch_sizes = {8, 16, 32, 64};
    int max_epochs = 50;
    int patience = 5;  // epochs of validation-loss plateau before stopping
    ClassifierSpec model;

    void validate() const;

    // Trimmed grid for desk-scale synthetic runs.
    static TrainerConfig desk_scale(const ClassifierSpec& model);
};

struct EpochStats {
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
};

struct TrainedProbe {
    ClassifierSpec spec;
    std::vector<double> weights;  // at the selected epoch
    std::vector<EpochStats> history;
    int selected_epoch = 0;  // argmax validation accuracy
    double learning_rate = 0.0;
    int batch_size = 0;
    double val_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::vector<int> test_predictions;      // per test row, in dataset order
    std::vector<uint8_t> test_correct;      // per test row
    std::vector<uint64_t> test_item_ids;    // aligned with test_predictions
    bool degenerate = false;  // constant prediction over the validation split
};

// Softmax probe (linear, or one ReLU hidden layer) over flat weight vectors.
// Kept separate from the training loop so gradients can be checked directly.
class ProbeModel {
public:
    ProbeModel(const ClassifierSpec& spec);

    size_t num_weights() const noexcept { return num_weights_; }
    const ClassifierSpec& spec() const noexcept { return spec_; }

    void init_weights(std::vector<double>& weights, Rng& rng) const;

    // Mean cross-entropy (natural log) over the rows named by batch, and its
    // gradient. grad is resized and overwritten.
    double loss_and_grad(const std::vector<double>& weights, const RepresentationDataset& ds,
                         const std::vector<size_t>& batch, std::vector<double>& grad) const;

    double mean_loss(const std::vector<double>& weights, const RepresentationDataset& ds,
                     const std::vector<size_t>& rows) const;

    int predict(const std::vector<double>& weights, const double* x) const;

    // Per-item codelength -log2 p(y|x), summed over rows.
    double total_log2_loss(const std::vector<double>& weights, const RepresentationDataset& ds,
                           const std::vector<size_t>& rows) const;

private:
    void forward(const std::vector<double>& weights, const double* x, double* hidden,
                 double* logits) const;

    ClassifierSpec spec_;
    size_t num_weights_ = 0;
};

// Grid search + Adam + early stopping; selects the epoch with the highest
// validation accuracy and reports predictions on the test split.
TrainedProbe train_probe(const RepresentationDataset& ds, const TrainerConfig& cfg,
                         uint64_t rng_seed);

}  // namespace probesizer
