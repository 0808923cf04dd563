#pragma once

#include <string>

#include "probesizer/core.hpp"

namespace probesizer {

// Paired-predictions carrier format. Header item_id,seed,correct_a,correct_b;
// correctness cells are 0/1. Every seed must cover the same item set and
// (item_id, seed) pairs must be unique.
PairedPredictions read_predictions_csv(const std::string& path);
void write_predictions_csv(const PairedPredictions& pred, const std::string& path);

}  // namespace probesizer
