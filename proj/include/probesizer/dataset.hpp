#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probesizer/error.hpp"

namespace probesizer {

enum class Split : uint8_t { Train = 0, Val = 1, Test = 2 };

const char* split_name(Split split);
Split split_from_name(const std::string& name);

// Synthetic stand-in for encoder representations: equidistant class means
// with isotropic within-class noise. class_separation is the pairwise
// distance between means; noise_floor the within-class standard deviation.
struct SyntheticDatasetSpec {
    int num_classes = 2;
    int dim = 16;
    int samples_per_class = 1000;
    double class_separation = 1.0;
    double noise_floor = 1.0;
    uint64_t rng_seed = 0;

    void validate() const;
};

struct RepresentationDataset {
    int dim = 0;
    int num_classes = 0;
    std::vector<double> vectors;  // row-major, num_rows x dim
    std::vector<int> labels;
    std::vector<Split> splits;
    std::vector<uint64_t> item_ids;  // stable across paired datasets

    size_t num_rows() const noexcept { return labels.size(); }
    const double* row(size_t r) const { return vectors.data() + static_cast<size_t>(dim) * r; }

    std::vector<size_t> rows_in_split(Split split) const;
    size_t count_in_split(Split split) const;
    void validate() const;
};

// Deterministic sample pool (all rows tagged Train until subsampled). For
// two classes the means sit at +-separation/2 on the first axis; for K >= 3
// they are scaled basis vectors, which requires dim >= num_classes.
RepresentationDataset generate_dataset(const SyntheticDatasetSpec& spec);

// Adds i.i.d. N(0, sigma2) noise per coordinate; labels and splits unchanged.
RepresentationDataset add_gaussian_noise(const RepresentationDataset& ds, double sigma2,
                                         uint64_t rng_seed);

// Stratified subsample with exact per-class counts: per class,
// per_class_train train rows plus round(per_class_train/eta) validation and
// test rows each (at least 1). Row selection depends only on the labels and
// the seed, so paired datasets subsample the same items.
RepresentationDataset stratified_subsample(const RepresentationDataset& source,
                                           int per_class_train, double eta,
                                           uint64_t rng_seed);

// CSV round trip (header d0..d{D-1},label,split; full-precision doubles).
void write_dataset_csv(const RepresentationDataset& ds, const std::string& path);
RepresentationDataset read_dataset_csv(const std::string& path);

}  // namespace probesizer
