#pragma once

#include "sidsp/model.hpp"

namespace sidsp {

// Exhaustive nondominated front for tiny instances: every subset of data,
// every grid-discretized segmentation, every window assignment, every packing
// order. Segment durations are multiples of `grid` except that the final
// piece of a datum may carry the remainder; unsegment enumeration is exact.
// Limits: at most 6 data and 4 windows.
std::vector<ObjectivePoint> exact_front(const Instance& inst, const SolveMode& mode,
                                        Seconds grid);

}  // namespace sidsp
