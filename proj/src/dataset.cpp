#include "probesizer/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "probesizer/rng.hpp"

namespace probesizer {

const char* split_name(Split split) {
    switch (split) {
        case Split::Train:
            return "train";
        case Split::Val:
            return "val";
        case Split::Test:
            return "test";
    }
    return "train";
}

Split split_from_name(const std::string& name) {
    if (name == "train") {
        return Split::Train;
    }
    if (name == "val") {
        return Split::Val;
    }
    if (name == "test") {
        return Split::Test;
    }
    fail_validation("unknown split tag '" + name + "'");
}

void SyntheticDatasetSpec::validate() const {
    if (num_classes < 2) {
        fail_validation("synthetic dataset needs num_classes >= 2");
    }
    if (dim < 1) {
        fail_validation("synthetic dataset needs dim >= 1");
    }
    if (samples_per_class < 1) {
        fail_validation("synthetic dataset needs samples_per_class >= 1");
    }
    if (class_separation < 0.0 || !std::isfinite(class_separation)) {
        fail_validation("class_separation must be non-negative");
    }
    if (!(noise_floor > 0.0) || !std::isfinite(noise_floor)) {
        fail_validation("noise_floor must be positive");
    }
    if (num_classes > 2 && dim < num_classes) {
        fail_validation("equidistant means for K >= 3 classes need dim >= num_classes");
    }
}

std::vector<size_t> RepresentationDataset::rows_in_split(Split split) const {
    std::vector<size_t> rows;
    for (size_t r = 0; r < splits.size(); ++r) {
        if (splits[r] == split) {
            rows.push_back(r);
        }
    }
    return rows;
}

size_t RepresentationDataset::count_in_split(Split split) const {
    size_t count = 0;
    for (Split s : splits) {
        count += s == split ? 1 : 0;
    }
    return count;
}

void RepresentationDataset::validate() const {
    if (dim < 1) {
        fail_validation("dataset dim must be >= 1");
    }
    if (num_classes < 2) {
        fail_validation("dataset num_classes must be >= 2");
    }
    const size_t n = labels.size();
    if (n == 0) {
        fail_validation("dataset must not be empty");
    }
    if (vectors.size() != n * static_cast<size_t>(dim) || splits.size() != n ||
        item_ids.size() != n) {
        fail_validation("dataset columns have inconsistent row counts");
    }
    for (int label : labels) {
        if (label < 0 || label >= num_classes) {
            fail_validation("dataset label out of range");
        }
    }
}

RepresentationDataset generate_dataset(const SyntheticDatasetSpec& spec) {
    spec.validate();
    const int k = spec.num_classes;
    const int d = spec.dim;

    // Pairwise-equidistant class means.
    std::vector<double> means(static_cast<size_t>(k) * d, 0.0);
    if (k == 2) {
        means[0] = -spec.class_separation / 2.0;
        means[static_cast<size_t>(d)] = spec.class_separation / 2.0;
    } else {
        const double scale = spec.class_separation / std::sqrt(2.0);
        for (int c = 0; c < k; ++c) {
            means[static_cast<size_t>(c) * d + c] = scale;
        }
    }

    RepresentationDataset ds;
    ds.dim = d;
    ds.num_classes = k;
    const size_t total = static_cast<size_t>(k) * spec.samples_per_class;
    ds.vectors.resize(total * d);
    ds.labels.resize(total);
    ds.splits.assign(total, Split::Train);
    ds.item_ids.resize(total);

    Rng rng(spec.rng_seed);
    size_t row = 0;
    for (int c = 0; c < k; ++c) {
        const double* mean = means.data() + static_cast<size_t>(c) * d;
        for (int s = 0; s < spec.samples_per_class; ++s, ++row) {
            double* out = ds.vectors.data() + row * d;
            for (int j = 0; j < d; ++j) {
                out[j] = mean[j] + spec.noise_floor * rng.normal();
            }
            ds.labels[row] = c;
            ds.item_ids[row] = row;
        }
    }
    return ds;
}

RepresentationDataset add_gaussian_noise(const RepresentationDataset& ds, double sigma2,
                                         uint64_t rng_seed) {
    ds.validate();
    if (sigma2 < 0.0 || !std::isfinite(sigma2)) {
        fail_validation("noise variance sigma2 must be non-negative");
    }
    RepresentationDataset out = ds;
    if (sigma2 == 0.0) {
        return out;
    }
    const double sigma = std::sqrt(sigma2);
    Rng rng(rng_seed);
    for (double& value : out.vectors) {
        value += sigma * rng.normal();
    }
    return out;
}

RepresentationDataset stratified_subsample(const RepresentationDataset& source,
                                           int per_class_train, double eta,
                                           uint64_t rng_seed) {
    source.validate();
    if (per_class_train < 1) {
        fail_validation("per_class_train must be >= 1");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        fail_validation("eta must be positive");
    }
    const auto per_class_eval = std::max<int64_t>(
        1, std::llround(static_cast<double>(per_class_train) / eta));
    const int64_t per_class_needed = per_class_train + 2 * per_class_eval;

    std::vector<std::vector<size_t>> by_class(static_cast<size_t>(source.num_classes));
    for (size_t r = 0; r < source.num_rows(); ++r) {
        by_class[static_cast<size_t>(source.labels[r])].push_back(r);
    }

    std::vector<std::vector<size_t>> chosen_train(by_class.size());
    std::vector<std::vector<size_t>> chosen_val(by_class.size());
    std::vector<std::vector<size_t>> chosen_test(by_class.size());
    for (size_t c = 0; c < by_class.size(); ++c) {
        auto& rows = by_class[c];
        if (static_cast<int64_t>(rows.size()) < per_class_needed) {
            fail_validation("class " + std::to_string(c) + " has " +
                            std::to_string(rows.size()) + " samples but the subsample needs " +
                            std::to_string(per_class_needed));
        }
        Rng rng = Rng::stream(rng_seed, {c});
        rng.shuffle(rows);
        auto it = rows.begin();
        chosen_train[c].assign(it, it + per_class_train);
        it += per_class_train;
        chosen_val[c].assign(it, it + per_class_eval);
        it += per_class_eval;
        chosen_test[c].assign(it, it + per_class_eval);
    }

    RepresentationDataset out;
    out.dim = source.dim;
    out.num_classes = source.num_classes;
    const auto append = [&](const std::vector<size_t>& rows, Split split) {
        for (size_t r : rows) {
            const double* src = source.row(r);
            out.vectors.insert(out.vectors.end(), src, src + source.dim);
            out.labels.push_back(source.labels[r]);
            out.splits.push_back(split);
            out.item_ids.push_back(source.item_ids[r]);
        }
    };
    for (size_t c = 0; c < by_class.size(); ++c) {
        append(chosen_train[c], Split::Train);
    }
    for (size_t c = 0; c < by_class.size(); ++c) {
        append(chosen_val[c], Split::Val);
    }
    for (size_t c = 0; c < by_class.size(); ++c) {
        append(chosen_test[c], Split::Test);
    }
    return out;
}

void write_dataset_csv(const RepresentationDataset& ds, const std::string& path) {
    ds.validate();
    std::ofstream out(path);
    if (!out) {
        fail_io("cannot open '" + path + "' for writing");
    }
    for (int j = 0; j < ds.dim; ++j) {
        out << 'd' << j << ',';
    }
    out << "label,split\n";
    char buffer[64];
    for (size_t r = 0; r < ds.num_rows(); ++r) {
        const double* row = ds.row(r);
        for (int j = 0; j < ds.dim; ++j) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", row[j]);
            out << buffer << ',';
        }
        out << ds.labels[r] << ',' << split_name(ds.splits[r]) << '\n';
    }
    if (!out) {
        fail_io("write to '" + path + "' failed");
    }
}

RepresentationDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail_io("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        fail_io("dataset file '" + path + "' is empty");
    }
    int dim = 0;
    {
        std::stringstream header(line);
        std::string column;
        std::vector<std::string> columns;
        while (std::getline(header, column, ',')) {
            columns.push_back(column);
        }
        if (columns.size() < 3 || columns[columns.size() - 2] != "label" ||
            columns.back() != "split") {
            fail_validation("dataset header must end with ...,label,split");
        }
        dim = static_cast<int>(columns.size()) - 2;
    }

    RepresentationDataset ds;
    ds.dim = dim;
    int max_label = 0;
    size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string cell;
        for (int j = 0; j < dim; ++j) {
            if (!std::getline(row, cell, ',')) {
                fail_validation("dataset row " + std::to_string(line_number) +
                                " has too few columns");
            }
            ds.vectors.push_back(std::strtod(cell.c_str(), nullptr));
        }
        if (!std::getline(row, cell, ',')) {
            fail_validation("dataset row " + std::to_string(line_number) + " misses label");
        }
        const int label = std::atoi(cell.c_str());
        max_label = std::max(max_label, label);
        ds.labels.push_back(label);
        if (!std::getline(row, cell, ',')) {
            fail_validation("dataset row " + std::to_string(line_number) + " misses split");
        }
        ds.splits.push_back(split_from_name(cell));
        ds.item_ids.push_back(ds.labels.size() - 1);
    }
    ds.num_classes = std::max(2, max_label + 1);
    ds.validate();
    return ds;
}

}  // namespace probesizer
