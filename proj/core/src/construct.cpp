#include "sidsp/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidsp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

WindowState::WindowState(const Instance& inst) : inst_(&inst) {
    slots_.resize(inst.windows.size());
    scheduled_.assign(inst.data.size(), 0);
}

WindowState WindowState::from_schedule(const Instance& inst, const Schedule& sched) {
    WindowState st(inst);
    for (const auto& t : sched.tasks) {
        auto wit = inst.window_index.find(t.window);
        if (wit == inst.window_index.end())
            throw structural_error("schedule references unknown window " + t.window);
        Slot& s = st.slots_[wit->second];
        if (s.used) throw structural_error("two tasks on window " + t.window);
        s.used = true;
        s.begin = t.begin;
        s.duration = 0;
        for (const auto& p : t.dset) {
            auto dit = inst.data_index.find(p.datum);
            if (dit == inst.data_index.end())
                throw structural_error("schedule references unknown datum " + p.datum);
            st.insert_sorted(s, dit->second, p.duration);
            s.duration += p.duration;
        }
    }
    for (const auto& id : sched.scheduled) {
        auto dit = inst.data_index.find(id);
        if (dit == inst.data_index.end())
            throw structural_error("scheduled set references unknown datum " + id);
        st.scheduled_[dit->second] = 1;
    }
    return st;
}

Schedule WindowState::to_schedule() const {
    Schedule out;
    for (int w = 0; w < (int)slots_.size(); ++w) {
        const Slot& s = slots_[w];
        if (!s.used) continue;
        DownlinkTask t;
        t.id = "dt-" + inst_->windows[w].id;
        t.window = inst_->windows[w].id;
        t.begin = s.begin;
        t.duration = s.duration;
        t.end = s.begin + s.duration;
        for (const auto& p : s.pieces) t.dset.push_back({inst_->data[p.datum].id, p.duration});
        out.tasks.push_back(std::move(t));
    }
    for (int d = 0; d < (int)scheduled_.size(); ++d) {
        if (!scheduled_[d]) continue;
        SegmentationPlan plan;
        plan.datum = inst_->data[d].id;
        for (int w = 0; w < (int)slots_.size(); ++w)
            for (const auto& p : slots_[w].pieces)
                if (p.datum == d) plan.pieces.push_back({inst_->windows[w].id, p.duration});
        out.scheduled.insert(plan.datum);
        out.plans[plan.datum] = std::move(plan);
    }
    return out;
}

std::vector<int> WindowState::scheduled_data() const {
    std::vector<int> out;
    for (int d = 0; d < (int)scheduled_.size(); ++d)
        if (scheduled_[d]) out.push_back(d);
    return out;
}

std::vector<int> WindowState::unscheduled_data() const {
    std::vector<int> out;
    for (int d = 0; d < (int)scheduled_.size(); ++d)
        if (!scheduled_[d]) out.push_back(d);
    return out;
}

int WindowState::scheduled_count() const {
    int n = 0;
    for (char c : scheduled_) n += c != 0;
    return n;
}

std::vector<int> WindowState::used_windows() const {
    std::vector<int> out;
    for (int w = 0; w < (int)slots_.size(); ++w)
        if (slots_[w].used) out.push_back(w);
    return out;
}

WindowState::FofdBounds WindowState::fofd_bounds(int datum) const {
    return fofd_bounds_excluding(datum, -1);
}

WindowState::FofdBounds WindowState::fofd_bounds_excluding(int datum, int exclude_window) const {
    const Seconds release = inst_->data[datum].release;
    const int sat = inst_->sat_index.at(inst_->data[datum].satellite);
    FofdBounds b{kNegInf, std::numeric_limits<double>::infinity()};
    for (int w : inst_->windows_of_sat[sat]) {
        if (w == exclude_window) continue;
        const Slot& s = slots_[w];
        if (!s.used) continue;
        Seconds cursor = s.begin;  // pieces transmit sequentially in dset order
        for (const auto& p : s.pieces) {
            Seconds r = inst_->data[p.datum].release;
            if (r < release - kEps) b.lower = std::max(b.lower, cursor + p.duration);
            if (r > release + kEps) b.upper = std::min(b.upper, cursor);
            cursor += p.duration;
        }
    }
    return b;
}

Seconds WindowState::slot_earliest_begin(int window, const std::vector<SolverPiece>& pieces,
                                         const SolveMode& mode) const {
    const auto& win = inst_->windows[window];
    const bool fofd = mode.ordering == SolveMode::Ord::fofd;

    Seconds total = 0;
    Seconds lb = win.begin;
    Seconds ub = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) {
        const auto& d = inst_->data[p.datum];
        total += p.duration;
        lb = std::max(lb, d.release);            // the task begin binds every datum
        ub = std::min(ub, d.expiry() - kGrid);   // and must precede every expiry
    }
    if (fofd) {
        // Each piece's transmission interval must sit inside its release-order
        // envelope, built from pieces outside this window.
        Seconds offset = 0;
        for (const auto& p : pieces) {
            FofdBounds fb = fofd_bounds_excluding(p.datum, window);
            if (fb.lower > kNegInf) lb = std::max(lb, fb.lower - offset);
            if (fb.upper < std::numeric_limits<double>::infinity())
                ub = std::min(ub, fb.upper - offset - p.duration);
            offset += p.duration;
        }
    }
    if (lb > ub + kEps) return -1;
    for (const auto& g : free_gaps(window, lb)) {
        Seconds b = grid_ceil(std::max(g.lo, lb));
        if (b > ub + kEps) break;
        if (b + total <= g.hi + kEps) return b;
    }
    return -1;
}

void WindowState::insert_sorted(Slot& slot, int datum, Seconds dur) const {
    auto key = [&](int d) {
        return std::make_pair(inst_->data[d].release, std::cref(inst_->data[d].id));
    };
    auto it = std::upper_bound(slot.pieces.begin(), slot.pieces.end(), datum,
                               [&](int d, const SolverPiece& p) { return key(d) < key(p.datum); });
    slot.pieces.insert(it, SolverPiece{datum, dur});
}

// Spans a new task in `window` may not intersect: padded station neighbors and
// tasks of the same satellite anywhere.
std::vector<WindowState::Gap> WindowState::free_gaps(int window, Seconds from) const {
    const auto& win = inst_->windows[window];
    const int sat = inst_->sat_index.at(win.satellite);
    struct Span {
        Seconds lo, hi;
    };
    std::vector<Span> blocked;
    for (int w = 0; w < (int)slots_.size(); ++w) {
        const Slot& s = slots_[w];
        if (!s.used || w == window) continue;
        const auto& ow = inst_->windows[w];
        if (ow.station == win.station) {
            Seconds pad = inst_->sat_index.at(ow.satellite) != sat ? inst_->sigma : 0.0;
            blocked.push_back({s.begin - pad, s.end() + pad});
        } else if (inst_->sat_index.at(ow.satellite) == sat) {
            blocked.push_back({s.begin, s.end()});
        }
    }
    std::sort(blocked.begin(), blocked.end(),
              [](const Span& a, const Span& b) { return a.lo < b.lo; });

    std::vector<Gap> gaps;
    Seconds cursor = std::max(from, win.begin);
    for (const auto& b : blocked) {
        if (b.hi <= cursor + kEps) continue;
        if (b.lo > cursor + kEps) {
            Seconds hi = std::min(b.lo, win.end);
            if (hi > cursor + kEps) gaps.push_back({cursor, hi});
        }
        cursor = std::max(cursor, b.hi);
        if (cursor >= win.end - kEps) break;
    }
    if (cursor < win.end - kEps) gaps.push_back({cursor, win.end});
    return gaps;
}

Seconds WindowState::piece_capacity(int window, int datum, const SolveMode& mode) const {
    const auto& win = inst_->windows[window];
    const auto& d = inst_->data[datum];
    if (d.satellite != win.satellite) return 0;
    const bool fofd = mode.ordering == SolveMode::Ord::fofd;

    const Slot& s = slots_[window];
    if (s.used) {
        // The enlarged task may shift within the window, so the largest
        // addable piece is located by bisection on the millisecond grid.
        Slot merged = s;
        insert_sorted(merged, datum, 0.0);
        size_t pos = 0;
        while (merged.pieces[pos].datum != datum) ++pos;
        auto feasible = [&](Seconds dur) {
            merged.pieces[pos].duration = dur;
            return slot_earliest_begin(window, merged.pieces, mode) >= 0;
        };
        long hi_steps = (long)std::llround(grid_floor(win.length() - s.duration) / kGrid);
        if (hi_steps < 1 || !feasible(kGrid)) return 0;
        long lo = 1, hi = hi_steps;
        while (lo < hi) {
            long mid = lo + (hi - lo + 1) / 2;
            if (feasible(mid * kGrid))
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo * kGrid;
    }

    const FofdBounds fb = fofd ? fofd_bounds(datum)
                               : FofdBounds{kNegInf, std::numeric_limits<double>::infinity()};
    Seconds lb0 = std::max({win.begin, d.release, fofd ? fb.lower : kNegInf});
    Seconds latest_begin = d.expiry() - kGrid;  // begin strictly before expiry
    if (lb0 > latest_begin + kEps) return 0;
    Seconds cap = 0;
    for (const auto& g : free_gaps(window, lb0)) {
        Seconds b = grid_ceil(std::max(g.lo, lb0));
        if (b > latest_begin + kEps) break;  // later gaps only start later
        Seconds hi = std::min(g.hi, fb.upper);
        if (b > hi - kEps) continue;
        cap = std::max(cap, hi - b);
    }
    return std::max(0.0, grid_floor(cap));
}

bool WindowState::place_piece(int window, int datum, Seconds dur, const SolveMode& mode) {
    const auto& win = inst_->windows[window];
    const auto& d = inst_->data[datum];
    if (d.satellite != win.satellite) return false;

    Slot& s = slots_[window];
    std::vector<SolverPiece> pieces;
    if (s.used) {
        Slot merged = s;
        insert_sorted(merged, datum, dur);
        pieces = std::move(merged.pieces);
    } else {
        pieces.push_back({datum, dur});
    }
    Seconds b = slot_earliest_begin(window, pieces, mode);
    if (b < 0) return false;
    s.used = true;
    s.begin = b;
    s.duration += dur;
    s.pieces = std::move(pieces);
    return true;
}

void WindowState::remove_datum(int datum) {
    std::vector<int> affected;
    for (int w = 0; w < (int)slots_.size(); ++w) {
        Slot& s = slots_[w];
        if (!s.used) continue;
        size_t before = s.pieces.size();
        std::erase_if(s.pieces, [&](const SolverPiece& p) { return p.datum == datum; });
        if (s.pieces.size() == before) continue;
        s.duration = 0;
        for (const auto& p : s.pieces) s.duration += p.duration;
        if (s.pieces.empty())
            s = Slot{};
        else
            affected.push_back(w);
    }
    scheduled_[datum] = 0;

    // Slide shortened tasks left within their gap, leftmost first.
    std::sort(affected.begin(), affected.end(), [&](int a, int b) {
        return std::tie(slots_[a].begin, a) < std::tie(slots_[b].begin, b);
    });
    for (int w : affected) {
        Slot& s = slots_[w];
        const auto& win = inst_->windows[w];
        const int sat = inst_->sat_index.at(win.satellite);
        Seconds lb = win.begin;
        for (const auto& p : s.pieces) lb = std::max(lb, inst_->data[p.datum].release);
        for (int o = 0; o < (int)slots_.size(); ++o) {
            const Slot& t = slots_[o];
            if (!t.used || o == w) continue;
            if (t.begin >= s.begin - kEps) continue;  // only predecessors bound the slide
            const auto& ow = inst_->windows[o];
            if (ow.station == win.station) {
                Seconds pad = inst_->sat_index.at(ow.satellite) != sat ? inst_->sigma : 0.0;
                lb = std::max(lb, t.end() + pad);
            } else if (inst_->sat_index.at(ow.satellite) == sat) {
                lb = std::max(lb, t.end());
            }
        }
        Seconds nb = grid_ceil(lb);
        if (nb < s.begin) s.begin = nb;
    }
}

std::optional<InsertPlan> odcs(int datum, const WindowState& state, const SolveMode& mode) {
    const Instance& inst = state.instance();
    const auto& d = inst.data[datum];
    const int sat = inst.sat_index.at(d.satellite);
    const Seconds d0 = inst.satellites[sat].d0;

    struct Cand {
        int window;
        Seconds cap;
        Seconds length;
        Seconds begin;
    };
    std::vector<Cand> cands;
    Seconds total = 0;
    for (int w : inst.windows_of_sat[sat]) {
        Seconds cap = state.piece_capacity(w, datum, mode);
        if (cap + kEps < d0) continue;  // cannot host a legal segment
        cands.push_back({w, cap, inst.windows[w].length(), inst.windows[w].begin});
        total += cap;
    }
    if (total + kEps < d.duration) return std::nullopt;

    InsertPlan plan;
    plan.datum = datum;

    if (mode.segmentation == SolveMode::Seg::unsegment) {
        // Single window; best fit by window length keeps utilization tight.
        const Cand* best = nullptr;
        for (const auto& c : cands) {
            if (c.cap + kEps < d.duration) continue;
            if (!best || std::tie(c.length, c.begin, c.window) <
                             std::tie(best->length, best->begin, best->window))
                best = &c;
        }
        if (!best) return std::nullopt;
        plan.pieces.push_back({best->window, d.duration});
        return plan;
    }

    // Shortest windows first: each transmitted second raises utilization most
    // where the window is small.
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(a.length, a.begin, a.window) < std::tie(b.length, b.begin, b.window);
    });
    Seconds need = d.duration;
    for (const auto& c : cands) {
        if (need < kEps) break;
        Seconds p = std::min(need, c.cap);
        if (p + kEps < d0) continue;
        Seconds rest = need - p;
        if (rest > kEps && rest + kEps < d0) {
            // Shrink this piece so the final one still meets the minimum size.
            p = need - d0;
            if (p + kEps < d0 || p > c.cap + kEps) continue;
        }
        plan.pieces.push_back({c.window, grid_round(p)});
        need -= p;
    }
    if (need > kEps) return std::nullopt;
    return plan;
}

bool srs(const InsertPlan& plan, WindowState& state, const SolveMode& mode) {
    WindowState scratch = state;
    for (const auto& [w, dur] : plan.pieces)
        if (!scratch.place_piece(w, plan.datum, dur, mode)) return false;
    scratch.mark_scheduled(plan.datum);
    state = std::move(scratch);
    return true;
}

bool try_insert(WindowState& state, int datum, const SolveMode& mode) {
    if (state.is_scheduled(datum)) return false;
    auto plan = odcs(datum, state, mode);
    if (!plan) return false;
    return srs(*plan, state, mode);
}

std::pair<Schedule, ObjectivePoint> rhga(const Instance& inst, const SolveMode& mode,
                                         const std::vector<int>& order) {
    WindowState state(inst);
    for (int d : order) try_insert(state, d, mode);
    Schedule sched = state.to_schedule();
    ObjectivePoint obj = evaluate(inst, sched);
    return {std::move(sched), obj};
}

}  // namespace sidsp
