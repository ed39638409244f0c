#pragma once

#include "sidsp/construct.hpp"

namespace sidsp {

enum class DestroyOp { RD, PD, DD, CD, RT, PT, WT, CT };
enum class RepairOp { R, P, S, C };

inline constexpr int kNumDestroyOps = 8;
inline constexpr int kNumRepairOps = 4;

const char* destroy_name(DestroyOp op);
const char* repair_name(RepairOp op);

// Data removed by a destroy pass; barred from the following repair.
struct TabooBank {
    std::set<int> members;
    int capacity = 0;
};

// Dimensionless processing value 1 / exp(1 - x_i / max_j x_j). An all-zero
// list is treated as the limit value 1 for every index.
double nod(const std::vector<double>& values, int index);

// Conflict between two data over shared transmission resources:
// 0 disjoint admissible windows, 0.5 reconcilable, 1 either-or.
double conflict_distance(int datum_a, int datum_b, const Instance& inst);

// Workpiece congestion GI_CD: sum of nod over priority-weighted conflict
// distances to every other datum.
double congestion(int datum, const Instance& inst);
std::vector<double> congestion_all(const Instance& inst);

// Windows of the datum's satellite that could host a minimal legal segment.
int admissible_window_count(const Instance& inst, int datum);

enum class TaskGuidance { PT, CT };
double task_guidance(TaskGuidance kind, const DownlinkTask& task, const Instance& inst);

struct NeighborhoodParams {
    double tr_lo = 0.0, tr_hi = 0.2;   // adaptive taboo-rate interval
    std::optional<double> tr_static;   // fixed taboo rate when set
};

// Remove whole originals from the solution until the taboo bank reaches its
// drawn capacity; removal order depends on the operator kind.
TabooBank destroy(DestroyOp kind, WindowState& solution, Rng& rng,
                  const std::vector<double>& congestion_cache,
                  const NeighborhoodParams& params = {});

// Reinsert unscheduled data (minus the bank) using the greedy insertion loop;
// candidate order depends on the operator kind.
void repair(RepairOp kind, WindowState& solution, const SolveMode& mode, const TabooBank& bank,
            Rng& rng, const std::vector<double>& congestion_cache);

}  // namespace sidsp
