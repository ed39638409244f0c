#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sidsp {

// mt19937_64 with hand-rolled draw helpers so that sequences are identical on
// every platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = (uint64_t)(hi - lo) + 1;
        return lo + (int64_t)(next_u64() % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = (size_t)uniform_int(0, (int64_t)i - 1);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derive an independent child stream; used to give parallel runs their own
    // deterministic sequence.
    Rng spawn() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ull); }

private:
    std::mt19937_64 gen_;
};

}  // namespace sidsp
