#include "sidsp/oracle.hpp"

#include "sidsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

namespace sidsp {

namespace {

using PlanOption = std::vector<std::pair<int, Seconds>>;  // (window, duration), window-sorted

struct Draft {
    Seconds load = 0;
    std::vector<std::pair<int, Seconds>> pieces;  // (datum, duration)
};

std::vector<int> admissible(const Instance& inst, int datum) {
    const auto& d = inst.data[datum];
    const int sat = inst.sat_index.at(d.satellite);
    const Seconds d0 = inst.satellites[sat].d0;
    std::vector<int> out;
    for (int w : inst.windows_of_sat[sat]) {
        const auto& win = inst.windows[w];
        Seconds lb = std::max(win.begin, d.release);
        if (lb > d.expiry() - kGrid + kEps) continue;
        if (lb + d0 > win.end + kEps) continue;
        out.push_back(w);
    }
    return out;
}

void gen_segmentations(const Instance& inst, int datum, const std::vector<int>& windows,
                       size_t pos, Seconds remaining, Seconds d0, Seconds grid,
                       PlanOption& current, std::set<PlanOption>& out) {
    if (remaining <= kEps) {
        out.insert(current);
        return;
    }
    for (size_t i = pos; i < windows.size(); ++i) {
        const auto& win = inst.windows[windows[i]];
        const auto& d = inst.data[datum];
        Seconds cap = win.end - std::max(win.begin, d.release);
        Seconds most = std::min(remaining, cap);
        if (most + kEps < d0) continue;

        std::vector<Seconds> sizes;
        long k_lo = (long)std::ceil(d0 / grid - 1e-9);
        long k_hi = (long)std::floor(most / grid + 1e-9);
        for (long k = k_lo; k <= k_hi; ++k) sizes.push_back(k * grid);
        if (remaining <= most + kEps) sizes.push_back(remaining);  // residual piece

        for (Seconds s : sizes) {
            Seconds rest = remaining - s;
            if (rest > kEps && rest + kEps < d0) continue;  // unfinishable residue
            current.push_back({windows[i], s});
            gen_segmentations(inst, datum, windows, i + 1, rest < kEps ? 0 : rest, d0, grid,
                              current, out);
            current.pop_back();
        }
    }
}

std::vector<PlanOption> plan_options(const Instance& inst, int datum, const SolveMode& mode,
                                     Seconds grid) {
    const auto& d = inst.data[datum];
    const int sat = inst.sat_index.at(d.satellite);
    const Seconds d0 = inst.satellites[sat].d0;
    auto windows = admissible(inst, datum);

    std::set<PlanOption> out;
    if (mode.segmentation == SolveMode::Seg::unsegment) {
        for (int w : windows) {
            const auto& win = inst.windows[w];
            Seconds lb = std::max(win.begin, d.release);
            if (lb + d.duration > win.end + kEps) continue;
            out.insert({{w, d.duration}});
        }
    } else {
        PlanOption current;
        gen_segmentations(inst, datum, windows, 0, d.duration, d0, grid, current, out);
    }
    return {out.begin(), out.end()};
}

// Earliest feasible begin for a task given the already-packed ones; returns
// a negative value when nothing fits.
Seconds pack_one(const Instance& inst, const SolveMode& mode, const std::vector<Draft>& drafts,
                 const std::vector<std::tuple<int, Seconds, Seconds>>& placed,  // (win, b, e)
                 int window, Seconds dur) {
    const auto& win = inst.windows[window];
    const int sat = inst.sat_index.at(win.satellite);
    const Draft& draft = drafts[window];

    Seconds lb = win.begin;
    Seconds ub_begin = std::numeric_limits<double>::infinity();
    for (const auto& [d, pd] : draft.pieces) {
        lb = std::max(lb, inst.data[d].release);
        ub_begin = std::min(ub_begin, inst.data[d].expiry() - kGrid);
    }

    struct Span {
        Seconds lo, hi;
    };
    std::vector<Span> blocked;
    for (const auto& [pw, pb, pe] : placed) {
        const auto& ow = inst.windows[pw];
        bool same_sat = inst.sat_index.at(ow.satellite) == sat;
        if (ow.station == win.station) {
            Seconds pad = same_sat ? 0.0 : inst.sigma;
            blocked.push_back({pb - pad, pe + pad});
        } else if (same_sat) {
            blocked.push_back({pb, pe});
        }
        if (mode.ordering == SolveMode::Ord::fofd && same_sat) {
            // Task-level release ordering against already-placed siblings.
            for (const auto& [od, odur] : drafts[pw].pieces)
                for (const auto& [md, mdur] : draft.pieces) {
                    if (inst.data[od].release < inst.data[md].release - kEps)
                        lb = std::max(lb, pe);  // our data come later: start after them
                    if (inst.data[od].release > inst.data[md].release + kEps)
                        ub_begin = std::min(ub_begin, pb - dur);  // finish before them
                }
        }
    }
    std::sort(blocked.begin(), blocked.end(),
              [](const Span& a, const Span& b) { return a.lo < b.lo; });

    Seconds b = grid_ceil(lb);
    for (const auto& s : blocked) {
        if (b + dur <= s.lo + kEps) break;  // fits before this blocker
        if (s.hi > b - kEps) b = std::max(b, grid_ceil(s.hi));
    }
    if (b > ub_begin + kEps) return -1;
    if (b + dur > win.end + kEps) return -1;
    return b;
}

}  // namespace

std::vector<ObjectivePoint> exact_front(const Instance& inst, const SolveMode& mode,
                                        Seconds grid) {
    const int n = (int)inst.data.size();
    if (n > 6 || inst.windows.size() > 4)
        throw std::invalid_argument("exact_front limits: at most 6 data and 4 windows");
    if (mode.segmentation == SolveMode::Seg::segment && !(grid > 0))
        throw std::invalid_argument("exact_front needs a positive grid");

    std::vector<std::vector<PlanOption>> options(n);
    for (int d = 0; d < n; ++d) options[d] = plan_options(inst, d, mode, grid);

    std::vector<ObjectivePoint> collected;
    std::set<std::pair<long long, long long>> seen;
    auto key_of = [](const ObjectivePoint& p) {
        return std::make_pair((long long)std::llround(p.f1 * 1e9),
                              (long long)std::llround(p.f2 * 1e9));
    };

    auto try_leaf = [&](const std::vector<int>& chosen_data,
                        const std::vector<Draft>& drafts) {
        std::vector<int> used;
        for (int w = 0; w < (int)drafts.size(); ++w)
            if (!drafts[w].pieces.empty()) used.push_back(w);

        // Build the schedule skeleton once; begins are filled per permutation.
        Schedule sched;
        for (int d : chosen_data) sched.scheduled.insert(inst.data[d].id);
        for (int d : chosen_data) {
            SegmentationPlan plan;
            plan.datum = inst.data[d].id;
            for (int w : used)
                for (const auto& [pd, dur] : drafts[w].pieces)
                    if (pd == d) plan.pieces.push_back({inst.windows[w].id, dur});
            sched.plans[plan.datum] = std::move(plan);
        }

        ObjectivePoint probe;
        {
            Schedule shape = sched;  // objectives depend only on loads and the subset
            for (int w : used) {
                DownlinkTask t;
                t.id = "dt-" + inst.windows[w].id;
                t.window = inst.windows[w].id;
                t.begin = inst.windows[w].begin;
                t.duration = drafts[w].load;
                t.end = t.begin + t.duration;
                shape.tasks.push_back(std::move(t));
            }
            probe = evaluate(inst, shape);
        }
        if (seen.count(key_of(probe))) return;

        std::vector<int> perm = used;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<std::tuple<int, Seconds, Seconds>> placed;
            bool ok = true;
            std::vector<Seconds> begins(drafts.size(), 0);
            for (int w : perm) {
                Seconds b = pack_one(inst, mode, drafts, placed, w, drafts[w].load);
                if (b < 0) {
                    ok = false;
                    break;
                }
                begins[w] = b;
                placed.push_back({w, b, b + drafts[w].load});
            }
            if (!ok) continue;

            Schedule candidate = sched;
            for (int w : used) {
                DownlinkTask t;
                t.id = "dt-" + inst.windows[w].id;
                t.window = inst.windows[w].id;
                t.begin = begins[w];
                t.duration = drafts[w].load;
                t.end = t.begin + t.duration;
                auto pieces = drafts[w].pieces;
                std::sort(pieces.begin(), pieces.end(), [&](const auto& a, const auto& b2) {
                    return std::tie(inst.data[a.first].release, inst.data[a.first].id) <
                           std::tie(inst.data[b2.first].release, inst.data[b2.first].id);
                });
                for (const auto& [pd, dur] : pieces)
                    t.dset.push_back({inst.data[pd].id, dur});
                candidate.tasks.push_back(std::move(t));
            }
            if (validate_schedule(inst, candidate, mode).empty()) {
                ObjectivePoint p = evaluate(inst, candidate);
                seen.insert(key_of(p));
                collected.push_back(p);
                return;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    };

    std::vector<Draft> drafts(inst.windows.size());
    std::vector<int> chosen;
    // Depth-first over data: skip a datum or take one of its plan options.
    auto walk = [&](auto&& self, int d) -> void {
        if (d == n) {
            try_leaf(chosen, drafts);
            return;
        }
        self(self, d + 1);  // datum left unscheduled
        for (const auto& opt : options[d]) {
            bool fits = true;
            for (const auto& [w, dur] : opt)
                if (drafts[w].load + dur > inst.windows[w].length() + kEps) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            for (const auto& [w, dur] : opt) {
                drafts[w].load += dur;
                drafts[w].pieces.push_back({d, dur});
            }
            chosen.push_back(d);
            self(self, d + 1);
            chosen.pop_back();
            for (const auto& [w, dur] : opt) {
                drafts[w].load -= dur;
                drafts[w].pieces.pop_back();
            }
        }
    };
    walk(walk, 0);

    return pareto_filter(std::move(collected));
}

}  // namespace sidsp
