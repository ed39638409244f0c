#pragma once

#include "sidsp/model.hpp"

namespace sidsp {

// Hybrid solution encoding: binary x per datum, sparse fractional y per
// (datum, window), fractional z per window steering the task begin moment.
struct Chromosome {
    std::vector<uint8_t> x;                                 // one gene per datum
    std::vector<std::vector<std::pair<int, double>>> y;     // per datum: (window, fraction)
    std::vector<double> z;                                  // one gene per window

    static Chromosome zeros(const Instance& inst);
    double y_sum(int datum) const;
};

// Task begin moment for a z gene, clamped so the task stays inside the window.
// Throws when the duration does not fit the window at all.
Seconds begin_from_gene(double z, const TransmissionWindow& window, Seconds task_duration);

struct DecodeResult {
    Schedule schedule;
    std::vector<Violation> violations;  // decode validates, it never repairs
};

DecodeResult decode(const Chromosome& chrom, const Instance& inst, const SolveMode& mode);

// Inverse of decode for feasible schedules; decode(encode(s)) reproduces the
// tasks up to id relabeling. Throws std::invalid_argument on infeasible input.
Chromosome encode(const Schedule& sched, const Instance& inst);

}  // namespace sidsp
