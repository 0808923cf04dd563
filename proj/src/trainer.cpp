#include "probesizer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "probesizer/parallel.hpp"

namespace probesizer {

void TrainerConfig::validate() const {
    if (learning_rates.empty() || batch_sizes.empty()) {
        fail_validation("hyperparameter grids must be non-empty");
    }
    for (double lr : learning_rates) {
        if (!(lr > 0.0)) {
            fail_validation("learning rates must be positive");
        }
    }
    for (int bs : batch_sizes) {
        if (bs < 1) {
            fail_validation("batch sizes must be >= 1");
        }
    }
    if (max_epochs < 1) {
        fail_validation("max_epochs must be >= 1");
    }
    if (patience < 1 || patience >= max_epochs) {
        fail_validation("patience must lie in [1, max_epochs)");
    }
    model.validate();
}

TrainerConfig TrainerConfig::desk_scale(const ClassifierSpec& model) {
    TrainerConfig cfg;
    cfg.learning_rates = {5e-3, 1e-2};
    cfg.batch_sizes = {32};
    cfg.max_epochs = 40;
    cfg.patience = 5;
    cfg.model = model;
    return cfg;
}

ProbeModel::ProbeModel(const ClassifierSpec& spec) : spec_(spec) {
    spec_.validate();
    const size_t d = static_cast<size_t>(spec_.input_dim);
    const size_t k = static_cast<size_t>(spec_.num_classes);
    if (spec_.kind == ClassifierKind::LogisticRegression) {
        num_weights_ = k * d + k;
    } else {
        const size_t h = static_cast<size_t>(spec_.hidden_units);
        num_weights_ = h * d + h + k * h + k;
    }
}

void ProbeModel::init_weights(std::vector<double>& weights, Rng& rng) const {
    weights.resize(num_weights_);
    const size_t d = static_cast<size_t>(spec_.input_dim);
    const size_t h = static_cast<size_t>(spec_.hidden_units);
    const double fan_in_1 = std::max<size_t>(1, d);
    const double bound_1 = 1.0 / std::sqrt(fan_in_1);
    size_t idx = 0;
    if (spec_.kind == ClassifierKind::LogisticRegression) {
        for (; idx < num_weights_; ++idx) {
            weights[idx] = bound_1 * (2.0 * rng.uniform01() - 1.0);
        }
        return;
    }
    const size_t layer1 = h * d + h;
    for (; idx < layer1; ++idx) {
        weights[idx] = bound_1 * (2.0 * rng.uniform01() - 1.0);
    }
    const double bound_2 = 1.0 / std::sqrt(static_cast<double>(h));
    for (; idx < num_weights_; ++idx) {
        weights[idx] = bound_2 * (2.0 * rng.uniform01() - 1.0);
    }
}

void ProbeModel::forward(const std::vector<double>& weights, const double* x, double* hidden,
                         double* logits) const {
    const size_t d = static_cast<size_t>(spec_.input_dim);
    const size_t k = static_cast<size_t>(spec_.num_classes);
    if (spec_.kind == ClassifierKind::LogisticRegression) {
        const double* w = weights.data();           // k x d
        const double* b = weights.data() + k * d;   // k
        for (size_t c = 0; c < k; ++c) {
            double acc = b[c];
            const double* wc = w + c * d;
            for (size_t j = 0; j < d; ++j) {
                acc += wc[j] * x[j];
            }
            logits[c] = acc;
        }
        return;
    }
    const size_t h = static_cast<size_t>(spec_.hidden_units);
    const double* w1 = weights.data();                        // h x d
    const double* b1 = weights.data() + h * d;                // h
    const double* w2 = weights.data() + h * d + h;            // k x h
    const double* b2 = weights.data() + h * d + h + k * h;    // k
    for (size_t u = 0; u < h; ++u) {
        double acc = b1[u];
        const double* wu = w1 + u * d;
        for (size_t j = 0; j < d; ++j) {
            acc += wu[j] * x[j];
        }
        hidden[u] = acc > 0.0 ? acc : 0.0;  // ReLU
    }
    for (size_t c = 0; c < k; ++c) {
        double acc = b2[c];
        const double* wc = w2 + c * h;
        for (size_t u = 0; u < h; ++u) {
            acc += wc[u] * hidden[u];
        }
        logits[c] = acc;
    }
}

namespace {

// Stable softmax in place; returns log(sum exp) shifted by the max.
void softmax_inplace(double* logits, size_t k) {
    double max_logit = logits[0];
    for (size_t c = 1; c < k; ++c) {
        max_logit = std::max(max_logit, logits[c]);
    }
    double sum = 0.0;
    for (size_t c = 0; c < k; ++c) {
        logits[c] = std::exp(logits[c] - max_logit);
        sum += logits[c];
    }
    for (size_t c = 0; c < k; ++c) {
        logits[c] /= sum;
    }
}

constexpr double kProbFloor = 1e-300;

}  // namespace

double ProbeModel::loss_and_grad(const std::vector<double>& weights,
                                 const RepresentationDataset& ds,
                                 const std::vector<size_t>& batch,
                                 std::vector<double>& grad) const {
    const size_t d = static_cast<size_t>(spec_.input_dim);
    const size_t k = static_cast<size_t>(spec_.num_classes);
    const size_t h = static_cast<size_t>(spec_.hidden_units);
    grad.assign(num_weights_, 0.0);
    std::vector<double> hidden(h);
    std::vector<double> pre_hidden(h);
    std::vector<double> logits(k);
    std::vector<double> dlogits(k);
    std::vector<double> dhidden(h);
    double loss = 0.0;

    for (size_t row : batch) {
        const double* x = ds.row(row);
        const int y = ds.labels[row];
        if (spec_.kind == ClassifierKind::Mlp) {
            const double* w1 = weights.data();
            const double* b1 = weights.data() + h * d;
            for (size_t u = 0; u < h; ++u) {
                double acc = b1[u];
                const double* wu = w1 + u * d;
                for (size_t j = 0; j < d; ++j) {
                    acc += wu[j] * x[j];
                }
                pre_hidden[u] = acc;
                hidden[u] = acc > 0.0 ? acc : 0.0;
            }
            const double* w2 = weights.data() + h * d + h;
            const double* b2 = weights.data() + h * d + h + k * h;
            for (size_t c = 0; c < k; ++c) {
                double acc = b2[c];
                const double* wc = w2 + c * h;
                for (size_t u = 0; u < h; ++u) {
                    acc += wc[u] * hidden[u];
                }
                logits[c] = acc;
            }
        } else {
            forward(weights, x, nullptr, logits.data());
        }
        softmax_inplace(logits.data(), k);
        loss -= std::log(std::max(logits[static_cast<size_t>(y)], kProbFloor));

        for (size_t c = 0; c < k; ++c) {
            dlogits[c] = logits[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
        }

        if (spec_.kind == ClassifierKind::LogisticRegression) {
            double* gw = grad.data();
            double* gb = grad.data() + k * d;
            for (size_t c = 0; c < k; ++c) {
                const double dc = dlogits[c];
                double* gwc = gw + c * d;
                for (size_t j = 0; j < d; ++j) {
                    gwc[j] += dc * x[j];
                }
                gb[c] += dc;
            }
        } else {
            const double* w2 = weights.data() + h * d + h;
            double* gw1 = grad.data();
            double* gb1 = grad.data() + h * d;
            double* gw2 = grad.data() + h * d + h;
            double* gb2 = grad.data() + h * d + h + k * h;
            std::fill(dhidden.begin(), dhidden.end(), 0.0);
            for (size_t c = 0; c < k; ++c) {
                const double dc = dlogits[c];
                double* gwc = gw2 + c * h;
                const double* wc = w2 + c * h;
                for (size_t u = 0; u < h; ++u) {
                    gwc[u] += dc * hidden[u];
                    dhidden[u] += dc * wc[u];
                }
                gb2[c] += dc;
            }
            for (size_t u = 0; u < h; ++u) {
                if (pre_hidden[u] <= 0.0) {
                    continue;
                }
                const double du = dhidden[u];
                double* gwu = gw1 + u * d;
                for (size_t j = 0; j < d; ++j) {
                    gwu[j] += du * x[j];
                }
                gb1[u] += du;
            }
        }
    }

    const double inv = 1.0 / static_cast<double>(batch.size());
    for (double& g : grad) {
        g *= inv;
    }
    return loss * inv;
}

double ProbeModel::mean_loss(const std::vector<double>& weights, const RepresentationDataset& ds,
                             const std::vector<size_t>& rows) const {
    const size_t k = static_cast<size_t>(spec_.num_classes);
    std::vector<double> hidden(static_cast<size_t>(spec_.hidden_units));
    std::vector<double> logits(k);
    double loss = 0.0;
    for (size_t row : rows) {
        forward(weights, ds.row(row), hidden.data(), logits.data());
        softmax_inplace(logits.data(), k);
        loss -= std::log(std::max(logits[static_cast<size_t>(ds.labels[row])], kProbFloor));
    }
    return loss / static_cast<double>(rows.size());
}

int ProbeModel::predict(const std::vector<double>& weights, const double* x) const {
    const size_t k = static_cast<size_t>(spec_.num_classes);
    std::vector<double> hidden(static_cast<size_t>(spec_.hidden_units));
    std::vector<double> logits(k);
    forward(weights, x, hidden.data(), logits.data());
    int best = 0;
    for (size_t c = 1; c < k; ++c) {
        if (logits[c] > logits[static_cast<size_t>(best)]) {
            best = static_cast<int>(c);
        }
    }
    return best;
}

double ProbeModel::total_log2_loss(const std::vector<double>& weights,
                                   const RepresentationDataset& ds,
                                   const std::vector<size_t>& rows) const {
    constexpr double kLog2E = 1.4426950408889634;  // 1/ln(2)
    const size_t k = static_cast<size_t>(spec_.num_classes);
    std::vector<double> hidden(static_cast<size_t>(spec_.hidden_units));
    std::vector<double> logits(k);
    double bits = 0.0;
    for (size_t row : rows) {
        forward(weights, ds.row(row), hidden.data(), logits.data());
        softmax_inplace(logits.data(), k);
        bits -= std::log(std::max(logits[static_cast<size_t>(ds.labels[row])], kProbFloor)) *
                kLog2E;
    }
    return bits;
}

namespace {

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    int64_t t = 0;
};

void adam_step(std::vector<double>& weights, const std::vector<double>& grad, AdamState& state,
               double lr) {
    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    if (state.m.empty()) {
        state.m.assign(weights.size(), 0.0);
        state.v.assign(weights.size(), 0.0);
    }
    ++state.t;
    const double correction1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.t));
    const double correction2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.t));
    for (size_t i = 0; i < weights.size(); ++i) {
        state.m[i] = kBeta1 * state.m[i] + (1.0 - kBeta1) * grad[i];
        state.v[i] = kBeta2 * state.v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / correction1;
        const double v_hat = state.v[i] / correction2;
        weights[i] -= lr * m_hat / (std::sqrt(v_hat) + kEps);
    }
}

struct CandidateResult {
    std::vector<double> best_weights;
    std::vector<EpochStats> history;
    int selected_epoch = 0;
    double best_val_accuracy = -1.0;
    double learning_rate = 0.0;
    int batch_size = 0;
};

CandidateResult train_candidate(const ProbeModel& model, const RepresentationDataset& ds,
                                const std::vector<size_t>& train_rows,
                                const std::vector<size_t>& val_rows, double lr, int batch_size,
                                int max_epochs, int patience, uint64_t stream_seed) {
    CandidateResult result;
    result.learning_rate = lr;
    result.batch_size = batch_size;

    Rng rng(stream_seed);
    std::vector<double> weights;
    model.init_weights(weights, rng);
    AdamState adam;

    std::vector<size_t> order = train_rows;
    std::vector<size_t> batch;
    std::vector<double> grad;

    double best_val_loss = std::numeric_limits<double>::infinity();
    int epochs_since_improvement = 0;

    for (int epoch = 0; epoch < max_epochs; ++epoch) {
        rng.shuffle(order);
        double train_loss_sum = 0.0;
        size_t num_batches = 0;
        for (size_t start = 0; start < order.size(); start += static_cast<size_t>(batch_size)) {
            const size_t stop = std::min(order.size(), start + static_cast<size_t>(batch_size));
            batch.assign(order.begin() + static_cast<ptrdiff_t>(start),
                         order.begin() + static_cast<ptrdiff_t>(stop));
            train_loss_sum += model.loss_and_grad(weights, ds, batch, grad);
            adam_step(weights, grad, adam, lr);
            ++num_batches;
        }

        EpochStats stats;
        stats.train_loss = train_loss_sum / static_cast<double>(num_batches);
        stats.val_loss = model.mean_loss(weights, ds, val_rows);
        size_t val_correct = 0;
        for (size_t row : val_rows) {
            val_correct += model.predict(weights, ds.row(row)) == ds.labels[row] ? 1 : 0;
        }
        stats.val_accuracy =
            static_cast<double>(val_correct) / static_cast<double>(val_rows.size());
        result.history.push_back(stats);

        if (stats.val_accuracy > result.best_val_accuracy) {
            result.best_val_accuracy = stats.val_accuracy;
            result.selected_epoch = epoch;
            result.best_weights = weights;
        }

        if (stats.val_loss < best_val_loss) {
            best_val_loss = stats.val_loss;
            epochs_since_improvement = 0;
        } else {
            ++epochs_since_improvement;
            if (epochs_since_improvement >= patience) {
                break;
            }
        }
    }
    return result;
}

}  // namespace

TrainedProbe train_probe(const RepresentationDataset& ds, const TrainerConfig& cfg,
                         uint64_t rng_seed) {
    cfg.validate();
    ds.validate();
    if (cfg.model.input_dim != ds.dim) {
        fail_validation("classifier input_dim must match the dataset dim");
    }
    if (cfg.model.num_classes != ds.num_classes) {
        fail_validation("classifier num_classes must match the dataset");
    }
    const auto train_rows = ds.rows_in_split(Split::Train);
    const auto val_rows = ds.rows_in_split(Split::Val);
    const auto test_rows = ds.rows_in_split(Split::Test);
    if (train_rows.empty() || val_rows.empty() || test_rows.empty()) {
        fail_validation("training needs non-empty train, val, and test splits");
    }

    const ProbeModel model(cfg.model);
    const size_t num_candidates = cfg.learning_rates.size() * cfg.batch_sizes.size();
    std::vector<CandidateResult> candidates(num_candidates);

    parallel_for(num_candidates, [&](size_t begin, size_t end) {
        for (size_t c = begin; c < end; ++c) {
            const double lr = cfg.learning_rates[c / cfg.batch_sizes.size()];
            const int bs = cfg.batch_sizes[c % cfg.batch_sizes.size()];
            candidates[c] =
                train_candidate(model, ds, train_rows, val_rows, lr, bs, cfg.max_epochs,
                                cfg.patience, Rng::derive(rng_seed, {c}));
        }
    });

    size_t winner = 0;
    for (size_t c = 1; c < num_candidates; ++c) {
        if (candidates[c].best_val_accuracy > candidates[winner].best_val_accuracy) {
            winner = c;
        }
    }
    CandidateResult& best = candidates[winner];

    TrainedProbe probe;
    probe.spec = cfg.model;
    probe.weights = std::move(best.best_weights);
    probe.history = std::move(best.history);
    probe.selected_epoch = best.selected_epoch;
    probe.learning_rate = best.learning_rate;
    probe.batch_size = best.batch_size;
    probe.val_accuracy = best.best_val_accuracy;

    int first_val_prediction = -1;
    bool constant_val = true;
    for (size_t row : val_rows) {
        const int prediction = model.predict(probe.weights, ds.row(row));
        if (first_val_prediction < 0) {
            first_val_prediction = prediction;
        } else if (prediction != first_val_prediction) {
            constant_val = false;
            break;
        }
    }
    probe.degenerate = constant_val;

    probe.test_predictions.reserve(test_rows.size());
    probe.test_correct.reserve(test_rows.size());
    probe.test_item_ids.reserve(test_rows.size());
    size_t correct = 0;
    for (size_t row : test_rows) {
        const int prediction = model.predict(probe.weights, ds.row(row));
        probe.test_predictions.push_back(prediction);
        const bool hit = prediction == ds.labels[row];
        probe.test_correct.push_back(hit ? 1 : 0);
        probe.test_item_ids.push_back(ds.item_ids[row]);
        correct += hit ? 1 : 0;
    }
    probe.test_accuracy = static_cast<double>(correct) / static_cast<double>(test_rows.size());
    return probe;
}

}  // namespace probesizer
