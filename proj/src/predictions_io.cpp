#include "probesizer/predictions_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace probesizer {

namespace {

uint8_t parse_correct(const std::string& cell, size_t line_number) {
    if (cell == "0") {
        return 0;
    }
    if (cell == "1") {
        return 1;
    }
    fail_validation("row " + std::to_string(line_number) +
                    ": correctness cells must be 0 or 1, got '" + cell + "'");
}

}  // namespace

PairedPredictions read_predictions_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail_io("cannot open predictions file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        fail_validation("predictions file '" + path + "' is empty");
    }
    if (line != "item_id,seed,correct_a,correct_b") {
        fail_validation("row 1: header must be item_id,seed,correct_a,correct_b");
    }

    struct Cell {
        uint8_t a;
        uint8_t b;
    };
    // seed -> item -> cell; ordered maps keep the layout reproducible.
    std::map<int64_t, std::map<std::string, Cell>> by_seed;
    std::vector<std::string> item_order;
    size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string item_id;
        std::string seed_text;
        std::string a_text;
        std::string b_text;
        if (!std::getline(row, item_id, ',') || !std::getline(row, seed_text, ',') ||
            !std::getline(row, a_text, ',') || !std::getline(row, b_text, ',')) {
            fail_validation("row " + std::to_string(line_number) +
                            ": expected item_id,seed,correct_a,correct_b");
        }
        if (item_id.empty()) {
            fail_validation("row " + std::to_string(line_number) + ": empty item_id");
        }
        int64_t seed = 0;
        try {
            seed = std::stoll(seed_text);
        } catch (const std::exception&) {
            fail_validation("row " + std::to_string(line_number) + ": seed '" + seed_text +
                            "' is not an integer");
        }
        const Cell cell{parse_correct(a_text, line_number), parse_correct(b_text, line_number)};
        auto& items = by_seed[seed];
        if (!items.emplace(item_id, cell).second) {
            fail_validation("row " + std::to_string(line_number) + ": duplicate (item '" +
                            item_id + "', seed " + seed_text + ")");
        }
    }
    if (by_seed.empty()) {
        fail_validation("predictions file '" + path + "' has no data rows");
    }

    const size_t num_items = by_seed.begin()->second.size();
    for (const auto& [seed, items] : by_seed) {
        if (items.size() != num_items) {
            fail_validation("seed " + std::to_string(seed) + " covers " +
                            std::to_string(items.size()) + " items but the first seed covers " +
                            std::to_string(num_items));
        }
    }

    // Canonical layout: items sorted by id, seeds ascending.
    for (const auto& [item, cell] : by_seed.begin()->second) {
        item_order.push_back(item);
    }
    std::vector<int64_t> seeds;
    seeds.reserve(by_seed.size());
    for (const auto& [seed, items] : by_seed) {
        seeds.push_back(seed);
    }
    std::vector<uint8_t> correct_a(num_items * seeds.size());
    std::vector<uint8_t> correct_b(num_items * seeds.size());
    for (size_t s = 0; s < seeds.size(); ++s) {
        const auto& items = by_seed[seeds[s]];
        for (size_t i = 0; i < item_order.size(); ++i) {
            const auto it = items.find(item_order[i]);
            if (it == items.end()) {
                fail_validation("seed " + std::to_string(seeds[s]) + " misses item '" +
                                item_order[i] + "'");
            }
            correct_a[s * num_items + i] = it->second.a;
            correct_b[s * num_items + i] = it->second.b;
        }
    }
    return PairedPredictions(std::move(item_order), std::move(seeds), std::move(correct_a),
                             std::move(correct_b));
}

void write_predictions_csv(const PairedPredictions& pred, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        fail_io("cannot open '" + path + "' for writing");
    }
    out << "item_id,seed,correct_a,correct_b\n";
    for (size_t s = 0; s < pred.num_seeds(); ++s) {
        for (size_t i = 0; i < pred.num_items(); ++i) {
            out << pred.item_ids()[i] << ',' << pred.seeds()[s] << ','
                << (pred.correct_a(s, i) ? 1 : 0) << ',' << (pred.correct_b(s, i) ? 1 : 0)
                << '\n';
        }
    }
    if (!out) {
        fail_io("write to '" + path + "' failed");
    }
}

}  // namespace probesizer
