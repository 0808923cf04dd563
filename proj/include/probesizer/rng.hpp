#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace probesizer {

// Self-contained PRNG (xoshiro256** seeded through splitmix64). Simulations
// must be bit-reproducible across platforms and thread schedules, so we do
// not use std::uniform_*_distribution (its output is implementation-defined).
//
// Streams: every independent unit of work (a Monte-Carlo draw, a training
// candidate, a dataset row block) derives its own stream from a master seed
// plus a path of integer ids. Results therefore depend only on (seed, path),
// never on execution order.

inline uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) {
            word = splitmix64_next(sm);
        }
        // xoshiro must not start from the all-zero state
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 0x9e3779b97f4a7c15ULL;
        }
    }

    // Deterministic derivation of a sub-seed from a master seed and an id path.
    static uint64_t derive(uint64_t master, std::initializer_list<uint64_t> path) {
        uint64_t h = master;
        for (uint64_t id : path) {
            uint64_t state = h ^ (id + 0x9e3779b97f4a7c15ULL);
            h = splitmix64_next(state);
        }
        return h;
    }

    static Rng stream(uint64_t master, std::initializer_list<uint64_t> path) {
        return Rng(derive(master, path));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    // Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) {
            u1 = uniform01();
        }
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (size_t i = values.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<uint64_t, 4> state_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace probesizer
