#include "sidsp/neighborhood.hpp"

#include <algorithm>
#include <cmath>

namespace sidsp {

const char* destroy_name(DestroyOp op) {
    switch (op) {
        case DestroyOp::RD: return "RD";
        case DestroyOp::PD: return "PD";
        case DestroyOp::DD: return "DD";
        case DestroyOp::CD: return "CD";
        case DestroyOp::RT: return "RT";
        case DestroyOp::PT: return "PT";
        case DestroyOp::WT: return "WT";
        case DestroyOp::CT: return "CT";
    }
    return "?";
}

const char* repair_name(RepairOp op) {
    switch (op) {
        case RepairOp::R: return "R";
        case RepairOp::P: return "P";
        case RepairOp::S: return "S";
        case RepairOp::C: return "C";
    }
    return "?";
}

double nod(const std::vector<double>& values, int index) {
    double mx = 0;
    for (double v : values) mx = std::max(mx, v);
    if (mx <= 0) return 1.0;  // all-zero convention
    return 1.0 / std::exp(1.0 - values[index] / mx);
}

namespace {

// Windows of the datum's satellite able to host a minimal legal segment, and
// how much time each offers from the earliest admissible begin.
std::vector<std::pair<int, Seconds>> admissible_windows(const Instance& inst, int datum) {
    const auto& d = inst.data[datum];
    const int sat = inst.sat_index.at(d.satellite);
    const Seconds d0 = inst.satellites[sat].d0;
    std::vector<std::pair<int, Seconds>> out;
    for (int w : inst.windows_of_sat[sat]) {
        const auto& win = inst.windows[w];
        Seconds lb = std::max(win.begin, d.release);
        if (lb > d.expiry() - kGrid + kEps) continue;
        if (lb + d0 > win.end + kEps) continue;
        out.push_back({w, win.end - lb});
    }
    return out;
}

}  // namespace

int admissible_window_count(const Instance& inst, int datum) {
    return (int)admissible_windows(inst, datum).size();
}

double conflict_distance(int datum_a, int datum_b, const Instance& inst) {
    if (datum_a == datum_b) throw std::invalid_argument("conflict distance needs two data");
    auto wa = admissible_windows(inst, datum_a);
    auto wb = admissible_windows(inst, datum_b);
    std::map<int, Seconds> usable;
    for (const auto& [w, u] : wa) usable[w] = u;
    bool intersect = false;
    for (const auto& [w, u] : wb) {
        auto it = usable.find(w);
        if (it != usable.end()) {
            intersect = true;
            it->second = std::max(it->second, u);
        } else {
            usable[w] = u;
        }
    }
    if (!intersect) return 0.0;
    Seconds capacity = 0;
    for (const auto& [w, u] : usable) capacity += u;
    Seconds demand = inst.data[datum_a].duration + inst.data[datum_b].duration;
    return capacity + kEps < demand ? 1.0 : 0.5;
}

double congestion(int datum, const Instance& inst) {
    std::vector<double> weighted;
    for (int j = 0; j < (int)inst.data.size(); ++j) {
        if (j == datum) continue;
        weighted.push_back(inst.data[j].priority * conflict_distance(datum, j, inst));
    }
    double gi = 0;
    for (int k = 0; k < (int)weighted.size(); ++k) gi += nod(weighted, k);
    return gi;
}

std::vector<double> congestion_all(const Instance& inst) {
    std::vector<double> out(inst.data.size());
    for (int d = 0; d < (int)inst.data.size(); ++d) out[d] = congestion(d, inst);
    return out;
}

double task_guidance(TaskGuidance kind, const DownlinkTask& task, const Instance& inst) {
    double sum = 0;
    for (const auto& p : task.dset) {
        int d = inst.data_index.at(p.datum);
        sum += kind == TaskGuidance::PT ? (double)inst.data[d].priority : congestion(d, inst);
    }
    return sum;
}

namespace {

int bank_capacity(double tr, int scheduled) {
    return (int)std::ceil(tr * scheduled - 1e-9);
}

// Stable datum orderings used by the data-directed destroy kinds.
std::vector<int> order_data(const Instance& inst, std::vector<int> data, DestroyOp kind,
                            const std::vector<double>& congestion_cache, Rng& rng) {
    auto by_id = [&](int a, int b) { return inst.data[a].id < inst.data[b].id; };
    switch (kind) {
        case DestroyOp::RD:
            rng.shuffle(data);
            break;
        case DestroyOp::PD:
            std::sort(data.begin(), data.end(), [&](int a, int b) {
                if (inst.data[a].priority != inst.data[b].priority)
                    return inst.data[a].priority < inst.data[b].priority;
                return by_id(a, b);
            });
            break;
        case DestroyOp::DD:
            std::sort(data.begin(), data.end(), [&](int a, int b) {
                if (inst.data[a].duration != inst.data[b].duration)
                    return inst.data[a].duration > inst.data[b].duration;
                return by_id(a, b);
            });
            break;
        case DestroyOp::CD:
            std::sort(data.begin(), data.end(), [&](int a, int b) {
                if (congestion_cache[a] != congestion_cache[b])
                    return congestion_cache[a] < congestion_cache[b];
                return by_id(a, b);
            });
            break;
        default:
            break;
    }
    return data;
}

}  // namespace

TabooBank destroy(DestroyOp kind, WindowState& solution, Rng& rng,
                  const std::vector<double>& congestion_cache, const NeighborhoodParams& params) {
    const Instance& inst = solution.instance();
    TabooBank bank;
    std::vector<int> scheduled = solution.scheduled_data();
    if (scheduled.empty()) return bank;

    double tr = params.tr_static ? *params.tr_static : rng.uniform(params.tr_lo, params.tr_hi);
    bank.capacity = bank_capacity(tr, (int)scheduled.size());
    if (bank.capacity == 0) return bank;

    auto remove_one = [&](int d) {
        solution.remove_datum(d);
        bank.members.insert(d);
    };

    const bool data_directed = kind == DestroyOp::RD || kind == DestroyOp::PD ||
                               kind == DestroyOp::DD || kind == DestroyOp::CD;
    if (data_directed) {
        for (int d : order_data(inst, std::move(scheduled), kind, congestion_cache, rng)) {
            if ((int)bank.members.size() >= bank.capacity) break;
            remove_one(d);
        }
        return bank;
    }

    // Task-directed kinds rank the current tasks once, then strip their data.
    struct TaskRef {
        int window;
        double key;
    };
    std::vector<TaskRef> tasks;
    for (int w : solution.used_windows()) {
        const auto& slot = solution.slot(w);
        double key = 0;
        switch (kind) {
            case DestroyOp::RT: key = rng.uniform01(); break;
            case DestroyOp::PT:
                for (const auto& p : slot.pieces) key += inst.data[p.datum].priority;
                key = -key;  // descending
                break;
            case DestroyOp::WT:
                key = -slot.duration;  // descending processing time
                break;
            case DestroyOp::CT:
                for (const auto& p : slot.pieces) key += congestion_cache[p.datum];
                break;
            default: break;
        }
        tasks.push_back({w, key});
    }
    std::sort(tasks.begin(), tasks.end(), [](const TaskRef& a, const TaskRef& b) {
        return std::tie(a.key, a.window) < std::tie(b.key, b.window);
    });

    for (const auto& tref : tasks) {
        if ((int)bank.members.size() >= bank.capacity) break;
        const auto& slot = solution.slot(tref.window);
        if (!slot.used) continue;  // already consumed by earlier removals
        std::vector<int> members;
        for (const auto& p : slot.pieces) members.push_back(p.datum);
        switch (kind) {
            case DestroyOp::RT:
                rng.shuffle(members);
                break;
            case DestroyOp::PT:
                std::sort(members.begin(), members.end(), [&](int a, int b) {
                    if (inst.data[a].priority != inst.data[b].priority)
                        return inst.data[a].priority > inst.data[b].priority;
                    return inst.data[a].id < inst.data[b].id;
                });
                break;
            case DestroyOp::WT:
                std::sort(members.begin(), members.end(), [&](int a, int b) {
                    if (inst.data[a].duration != inst.data[b].duration)
                        return inst.data[a].duration > inst.data[b].duration;
                    return inst.data[a].id < inst.data[b].id;
                });
                break;
            case DestroyOp::CT:
                break;  // keep transmission order
            default: break;
        }
        for (int d : members) {
            if ((int)bank.members.size() >= bank.capacity) break;
            if (bank.members.count(d)) continue;
            remove_one(d);
        }
    }
    return bank;
}

void repair(RepairOp kind, WindowState& solution, const SolveMode& mode, const TabooBank& bank,
            Rng& rng, const std::vector<double>& congestion_cache) {
    const Instance& inst = solution.instance();
    std::vector<int> candidates;
    for (int d : solution.unscheduled_data())
        if (!bank.members.count(d)) candidates.push_back(d);

    auto by_id = [&](int a, int b) { return inst.data[a].id < inst.data[b].id; };
    switch (kind) {
        case RepairOp::R:
            rng.shuffle(candidates);
            break;
        case RepairOp::P:
            std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                if (inst.data[a].priority != inst.data[b].priority)
                    return inst.data[a].priority > inst.data[b].priority;
                return by_id(a, b);
            });
            break;
        case RepairOp::S:
            std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                int na = admissible_window_count(inst, a), nb = admissible_window_count(inst, b);
                if (na != nb) return na < nb;
                return by_id(a, b);
            });
            break;
        case RepairOp::C:
            std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                if (congestion_cache[a] != congestion_cache[b])
                    return congestion_cache[a] < congestion_cache[b];
                return by_id(a, b);
            });
            break;
    }
    for (int d : candidates) try_insert(solution, d, mode);
}

}  // namespace sidsp
