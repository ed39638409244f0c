#pragma once

#include "sidsp/instances.hpp"

namespace sidsp::test {

// Small fluent builder for hand-crafted instances.
struct TinyBuilder {
    Instance inst;

    TinyBuilder() {
        inst.st = 0;
        inst.et = 86400;
        inst.sigma = 60;
    }
    TinyBuilder& sat(const std::string& id, double d0) {
        Satellite s;
        s.id = id;
        s.d0 = d0;
        inst.satellites.push_back(std::move(s));
        return *this;
    }
    TinyBuilder& station(const std::string& id) {
        GroundStation g;
        g.id = id;
        inst.stations.push_back(std::move(g));
        return *this;
    }
    TinyBuilder& window(const std::string& id, const std::string& station,
                        const std::string& sat, Seconds b, Seconds e) {
        inst.windows.push_back({id, station, sat, b, e});
        return *this;
    }
    TinyBuilder& datum(const std::string& id, const std::string& sat, int priority, Seconds dur,
                       Seconds release) {
        ImageData d;
        d.id = id;
        d.satellite = sat;
        d.priority = priority;
        d.duration = dur;
        d.release = release;
        d.due_hours = due_time(priority);
        inst.data.push_back(std::move(d));
        return *this;
    }
    Instance build() {
        inst.build_index();
        inst.check();
        return inst;
    }
};

// Randomized tiny instance for oracle comparisons: all satellites share d0 so
// a single grid covers every datum, and durations are multiples of d0.
inline Instance random_tiny(Rng& rng, int n_data, int n_windows, Seconds d0 = 30) {
    TinyBuilder b;
    int n_sats = (int)rng.uniform_int(1, 2);
    int n_stations = (int)rng.uniform_int(1, 2);
    for (int s = 0; s < n_sats; ++s) b.sat("sat" + std::to_string(s), d0);
    for (int g = 0; g < n_stations; ++g) b.station("gs" + std::to_string(g));
    for (int w = 0; w < n_windows; ++w) {
        Seconds len = d0 * (double)rng.uniform_int(2, 8);
        Seconds begin = grid_round(rng.uniform(0, 5000));
        b.window("w" + std::to_string(w), "gs" + std::to_string(rng.uniform_int(0, n_stations - 1)),
                 "sat" + std::to_string(rng.uniform_int(0, n_sats - 1)), begin, begin + len);
    }
    for (int d = 0; d < n_data; ++d) {
        Seconds dur = d0 * (double)rng.uniform_int(1, 3);
        Seconds release = rng.bernoulli(0.5) ? 0.0 : grid_round(rng.uniform(0, 3000));
        b.datum("d" + std::to_string(d), "sat" + std::to_string(rng.uniform_int(0, n_sats - 1)),
                (int)rng.uniform_int(1, 10), dur, release);
    }
    return b.build();
}

inline std::vector<int> identity_order(const Instance& inst) {
    std::vector<int> order(inst.data.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    return order;
}

}  // namespace sidsp::test
