#pragma once

#include "sidsp/adaptive.hpp"
#include "sidsp/encoding.hpp"
#include "sidsp/neighborhood.hpp"

namespace sidsp {

struct Individual {
    Schedule schedule;
    Chromosome chromosome;
    ObjectivePoint objectives;
    int rank = 0;
    double crowding = 0;
};

struct RunParams {
    int ns = 100;        // preserved population
    int na = 100;        // archive capacity
    int max_iter = 200;
    double lambda = 0.5;
    ScoreValues scores;
    NeighborhoodParams taboo;  // TR interval, or a static rate
    uint64_t seed = 1;
};

// Fronts of mutually nondominated indices, best first; every index appears once.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<ObjectivePoint>& points);

// Crowding distances for one mutually nondominated front (same order as input).
std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& front);

struct TraceRow {
    int iteration = 0;
    double hv = 0;  // raw archive hypervolume, in [0, 1]
    int archive_size = 0;
    std::vector<double> destroy_weights;
    std::vector<double> repair_weights;
};

struct RunResult {
    std::vector<ObjectivePoint> front;     // archive nondominated points, sorted by f1
    std::vector<Schedule> front_schedules; // aligned with front
    std::vector<TraceRow> trace;           // one row per iteration
    int max_archive_size = 0;
    bool archive_truncated = false;
};

// ALNS + NSGA-II main loop.
RunResult run(const Instance& inst, const SolveMode& mode, const RunParams& params);

// Control algorithm: same loop with random elitism (random environmental
// selection and random archive truncation).
RunResult run_crem(const Instance& inst, const SolveMode& mode, const RunParams& params);

}  // namespace sidsp
