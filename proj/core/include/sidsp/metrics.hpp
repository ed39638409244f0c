#pragma once

#include "sidsp/model.hpp"
#include "sidsp/rng.hpp"

namespace sidsp {

// Nondominated subset (minimization, duplicates collapsed), sorted by f1 then f2.
std::vector<ObjectivePoint> pareto_filter(std::vector<ObjectivePoint> points);

// Exact dominated hypervolume of a bi-objective front against `ref`, computed
// by slicing along f1. Points must lie in the unit box; points at or beyond
// the reference contribute nothing.
double hypervolume_hso(const std::vector<ObjectivePoint>& front,
                       ObjectivePoint ref = {1.0, 1.0});

struct HvEstimate {
    double value = 0;
    double std_error = 0;
    long samples = 0;
};

// Monte-Carlo hypervolume over the [0, ref] box; oracle for the exact routine.
HvEstimate hypervolume_mc(const std::vector<ObjectivePoint>& front, ObjectivePoint ref,
                          long samples, Rng& rng);

// (mean f1, mean f2) over a non-empty front.
std::pair<double, double> front_stats(const std::vector<ObjectivePoint>& front);

}  // namespace sidsp
