#include "sidsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sidsp {

Seconds grid_ceil(Seconds t) { return std::ceil(t / kGrid - 1e-7) * kGrid; }
Seconds grid_floor(Seconds t) { return std::floor(t / kGrid + 1e-7) * kGrid; }
Seconds grid_round(Seconds t) { return std::round(t / kGrid) * kGrid; }

SolveMode parse_mode(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("mode must look like segment:rearrange, got '" + text + "'");
    std::string seg = text.substr(0, colon), ord = text.substr(colon + 1);
    SolveMode m;
    if (seg == "segment")
        m.segmentation = SolveMode::Seg::segment;
    else if (seg == "unsegment")
        m.segmentation = SolveMode::Seg::unsegment;
    else
        throw std::invalid_argument("unknown segmentation axis '" + seg + "'");
    if (ord == "rearrange")
        m.ordering = SolveMode::Ord::rearrange;
    else if (ord == "fofd")
        m.ordering = SolveMode::Ord::fofd;
    else
        throw std::invalid_argument("unknown ordering axis '" + ord + "'");
    return m;
}

std::string mode_name(const SolveMode& mode) {
    std::string s = mode.segmentation == SolveMode::Seg::segment ? "segment" : "unsegment";
    s += ':';
    s += mode.ordering == SolveMode::Ord::rearrange ? "rearrange" : "fofd";
    return s;
}

void Instance::build_index() {
    sat_index.clear();
    station_index.clear();
    window_index.clear();
    data_index.clear();
    for (int i = 0; i < (int)satellites.size(); ++i) sat_index[satellites[i].id] = i;
    for (int i = 0; i < (int)stations.size(); ++i) station_index[stations[i].id] = i;
    for (int i = 0; i < (int)windows.size(); ++i) window_index[windows[i].id] = i;
    for (int i = 0; i < (int)data.size(); ++i) data_index[data[i].id] = i;
    windows_of_sat.assign(satellites.size(), {});
    for (int w = 0; w < (int)windows.size(); ++w) {
        auto it = sat_index.find(windows[w].satellite);
        if (it != sat_index.end()) windows_of_sat[it->second].push_back(w);
    }
}

void Instance::check() const {
    if (!(st < et)) throw structural_error("horizon must satisfy St < Et");
    auto dup = [](const auto& m, size_t n, const char* what) {
        if (m.size() != n) throw structural_error(std::string("duplicate ") + what + " id");
    };
    dup(sat_index, satellites.size(), "satellite");
    dup(station_index, stations.size(), "station");
    dup(window_index, windows.size(), "window");
    dup(data_index, data.size(), "image-data");

    for (const auto& s : satellites)
        if (!(s.d0 > 0)) throw structural_error("satellite " + s.id + " has non-positive d0");
    for (const auto& g : stations) {
        if (g.lat < -90 || g.lat > 90) throw structural_error("station " + g.id + " latitude out of range");
        if (g.lon < -180 || g.lon > 180) throw structural_error("station " + g.id + " longitude out of range");
    }
    for (const auto& w : windows) {
        if (!(w.begin < w.end)) throw structural_error("window " + w.id + " has begin >= end");
        if (w.begin < st - kEps || w.end > et + kEps)
            throw structural_error("window " + w.id + " outside the horizon");
        if (!sat_index.count(w.satellite))
            throw structural_error("window " + w.id + " references unknown satellite " + w.satellite);
        if (!station_index.count(w.station))
            throw structural_error("window " + w.id + " references unknown station " + w.station);
    }
    for (const auto& d : data) {
        if (!sat_index.count(d.satellite))
            throw structural_error("datum " + d.id + " references unknown satellite " + d.satellite);
        if (d.priority < 1 || d.priority > 10)
            throw structural_error("datum " + d.id + " priority out of 1..10");
        if (d.duration + kEps < satellites[sat_index.at(d.satellite)].d0)
            throw structural_error("datum " + d.id + " shorter than its satellite's d0");
        if (std::abs(d.due_hours - due_time(d.priority)) > 1e-12)
            throw structural_error("datum " + d.id + " due time inconsistent with its priority");
    }
}

double due_time(int priority) {
    if (priority < 1 || priority > 10) throw std::invalid_argument("priority must lie in 1..10");
    if (priority <= 3) return 24;
    if (priority <= 6) return 12;
    if (priority <= 9) return 6;
    return 3;
}

const char* violation_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::VisibleTime: return "visible-time";
        case ViolationKind::WorkTime: return "work-time";
        case ViolationKind::LogicalTime: return "logical-time";
        case ViolationKind::SetupGap: return "setup-gap";
        case ViolationKind::CompletedTransmission: return "completed-transmission";
        case ViolationKind::SegmentMinimum: return "segment-minimum";
        case ViolationKind::MultipleTransmission: return "multiple-transmission";
        case ViolationKind::StationOverlap: return "station-overlap";
        case ViolationKind::SatelliteOverlap: return "satellite-overlap";
        case ViolationKind::ReleaseOrder: return "release-order";
        case ViolationKind::UnsegmentSplit: return "unsegment-split";
        case ViolationKind::WindowReuse: return "window-reuse";
        case ViolationKind::TaskConsistency: return "task-consistency";
    }
    return "?";
}

namespace {

std::string fmt_seconds(Seconds t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

}  // namespace

std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched,
                                         const SolveMode& mode) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind k, const std::string& task, const std::string& datum,
                   std::string detail) {
        out.push_back({k, task, datum, std::move(detail)});
    };

    // Resolve everything first; unknown ids are structural, not violations.
    for (const auto& t : sched.tasks) {
        if (!inst.window_index.count(t.window))
            throw structural_error("task " + t.id + " references unknown window " + t.window);
        for (const auto& p : t.dset)
            if (!inst.data_index.count(p.datum))
                throw structural_error("task " + t.id + " references unknown datum " + p.datum);
    }
    for (const auto& [id, plan] : sched.plans) {
        if (!inst.data_index.count(id))
            throw structural_error("plan references unknown datum " + id);
        for (const auto& [wid, dur] : plan.pieces)
            if (!inst.window_index.count(wid))
                throw structural_error("plan for " + id + " references unknown window " + wid);
    }
    for (const auto& id : sched.scheduled)
        if (!inst.data_index.count(id))
            throw structural_error("scheduled set references unknown datum " + id);

    // Per-task structure and time constraints.
    std::map<std::string, int> tasks_per_window;
    for (const auto& t : sched.tasks) {
        const auto& w = inst.windows[inst.window_index.at(t.window)];
        const auto& wsat = inst.satellites[inst.sat_index.at(w.satellite)];
        tasks_per_window[t.window]++;

        Seconds piece_sum = 0;
        for (const auto& p : t.dset) piece_sum += p.duration;
        if (t.dset.empty())
            add(ViolationKind::TaskConsistency, t.id, "", "task carries no image data");
        if (std::abs(piece_sum - t.duration) > kEps)
            add(ViolationKind::TaskConsistency, t.id, "",
                "duration " + fmt_seconds(t.duration) + " != piece sum " + fmt_seconds(piece_sum));
        if (std::abs(t.end - (t.begin + t.duration)) > kEps)
            add(ViolationKind::TaskConsistency, t.id, "", "end != begin + duration");

        if (t.begin < w.begin - kEps || t.end > w.end + kEps)
            add(ViolationKind::VisibleTime, t.id, "",
                "task span [" + fmt_seconds(t.begin) + ", " + fmt_seconds(t.end) +
                    "] outside window [" + fmt_seconds(w.begin) + ", " + fmt_seconds(w.end) + "]");
        if (t.duration + kEps < wsat.d0)
            add(ViolationKind::WorkTime, t.id, "",
                "duration " + fmt_seconds(t.duration) + " below d0 " + fmt_seconds(wsat.d0));
        if (t.duration > w.length() + kEps)
            add(ViolationKind::WorkTime, t.id, "", "duration exceeds window length");

        std::set<std::string> seen;
        for (const auto& p : t.dset) {
            const auto& d = inst.data[inst.data_index.at(p.datum)];
            if (d.satellite != w.satellite)
                add(ViolationKind::TaskConsistency, t.id, p.datum,
                    "datum belongs to " + d.satellite + ", window to " + w.satellite);
            if (d.release > t.begin + kEps)
                add(ViolationKind::LogicalTime, t.id, p.datum, "task begins before release");
            if (t.begin >= d.expiry() - kEps)
                add(ViolationKind::LogicalTime, t.id, p.datum, "task begins at or after expiry");
            if (!seen.insert(p.datum).second)
                add(ViolationKind::MultipleTransmission, t.id, p.datum,
                    "datum appears twice in one task");
        }
    }
    for (const auto& [wid, n] : tasks_per_window)
        if (n > 1)
            add(ViolationKind::WindowReuse, "", "",
                "window " + wid + " hosts " + std::to_string(n) + " tasks");

    // Station-level ordering: non-overlap, sigma gap between adjacent tasks of
    // different satellites (adjacent pairs only).
    std::map<std::string, std::vector<const DownlinkTask*>> by_station;
    std::map<std::string, std::vector<const DownlinkTask*>> by_sat;
    for (const auto& t : sched.tasks) {
        const auto& w = inst.windows[inst.window_index.at(t.window)];
        by_station[w.station].push_back(&t);
        by_sat[w.satellite].push_back(&t);
    }
    for (auto& [g, ts] : by_station) {
        std::sort(ts.begin(), ts.end(), [](const DownlinkTask* a, const DownlinkTask* b) {
            return std::tie(a->begin, a->id) < std::tie(b->begin, b->id);
        });
        for (size_t i = 1; i < ts.size(); ++i) {
            const auto& prev = *ts[i - 1];
            const auto& cur = *ts[i];
            const std::string sat_prev = inst.windows[inst.window_index.at(prev.window)].satellite;
            const std::string sat_cur = inst.windows[inst.window_index.at(cur.window)].satellite;
            if (cur.begin < prev.end - kEps)
                add(ViolationKind::StationOverlap, cur.id, "",
                    "overlaps task " + prev.id + " at station " + g);
            else if (sat_prev != sat_cur && cur.begin - prev.end < inst.sigma - kEps)
                add(ViolationKind::SetupGap, cur.id, "",
                    "gap to task " + prev.id + " is " + fmt_seconds(cur.begin - prev.end) +
                        " < sigma " + fmt_seconds(inst.sigma));
        }
    }
    for (auto& [s, ts] : by_sat) {
        std::sort(ts.begin(), ts.end(), [](const DownlinkTask* a, const DownlinkTask* b) {
            return std::tie(a->begin, a->id) < std::tie(b->begin, b->id);
        });
        for (size_t i = 1; i < ts.size(); ++i)
            if (ts[i]->begin < ts[i - 1]->end - kEps)
                add(ViolationKind::SatelliteOverlap, ts[i]->id, "",
                    "overlaps task " + ts[i - 1]->id + " of satellite " + s);
    }

    // Datum-level accounting: completed transmission, plan consistency,
    // segment minimums, at-most-once placement.
    struct Placed {
        Seconds total = 0;
        std::map<std::string, int> per_window;
        Seconds min_piece_begin = 0, max_piece_end = 0;
        bool any = false;
    };
    std::map<std::string, Placed> placed;
    for (const auto& t : sched.tasks) {
        Seconds cursor = t.begin;  // dset transmits sequentially in stored order
        for (const auto& p : t.dset) {
            auto& acc = placed[p.datum];
            acc.total += p.duration;
            acc.per_window[t.window]++;
            if (!acc.any) {
                acc.min_piece_begin = cursor;
                acc.max_piece_end = cursor + p.duration;
                acc.any = true;
            } else {
                acc.min_piece_begin = std::min(acc.min_piece_begin, cursor);
                acc.max_piece_end = std::max(acc.max_piece_end, cursor + p.duration);
            }
            const auto& d = inst.data[inst.data_index.at(p.datum)];
            const auto& dsat = inst.satellites[inst.sat_index.at(d.satellite)];
            if (p.duration + kEps < dsat.d0)
                add(ViolationKind::SegmentMinimum, t.id, p.datum,
                    "segment of " + fmt_seconds(p.duration) + " below d0 " + fmt_seconds(dsat.d0));
            cursor += p.duration;
        }
    }
    for (const auto& [id, acc] : placed)
        for (const auto& [wid, n] : acc.per_window)
            if (n > 1)
                add(ViolationKind::MultipleTransmission, "", id,
                    "datum placed " + std::to_string(n) + " times in window " + wid);

    for (const auto& id : sched.scheduled) {
        const auto& d = inst.data[inst.data_index.at(id)];
        auto it = placed.find(id);
        Seconds got = it == placed.end() ? 0 : it->second.total;
        if (std::abs(got - d.duration) > kEps)
            add(ViolationKind::CompletedTransmission, "", id,
                "transmitted " + fmt_seconds(got) + " of " + fmt_seconds(d.duration));
        if (mode.segmentation == SolveMode::Seg::unsegment && it != placed.end()) {
            int pieces = 0;
            for (const auto& [w, n] : it->second.per_window) pieces += n;
            if (pieces > 1)
                add(ViolationKind::UnsegmentSplit, "", id,
                    "datum split into " + std::to_string(pieces) + " segments");
        }
    }
    for (const auto& [id, acc] : placed) {
        if (!sched.scheduled.count(id))
            add(ViolationKind::CompletedTransmission, "", id,
                "datum transmitted but not marked scheduled");
        auto pit = sched.plans.find(id);
        if (pit == sched.plans.end()) {
            add(ViolationKind::TaskConsistency, "", id, "datum placed without a segmentation plan");
        } else {
            Seconds plan_sum = 0;
            for (const auto& [w, dur] : pit->second.pieces) plan_sum += dur;
            if (std::abs(plan_sum - acc.total) > kEps)
                add(ViolationKind::TaskConsistency, "", id, "plan does not match placed segments");
        }
    }

    // FOFD: within each satellite, transmission respects release order.
    if (mode.ordering == SolveMode::Ord::fofd) {
        std::map<std::string, std::vector<std::pair<const ImageData*, const Placed*>>> per_sat;
        for (const auto& [id, acc] : placed) {
            const auto& d = inst.data[inst.data_index.at(id)];
            per_sat[d.satellite].push_back({&d, &acc});
        }
        for (auto& [s, items] : per_sat) {
            std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
                return std::tie(a.first->release, a.first->id) <
                       std::tie(b.first->release, b.first->id);
            });
            for (size_t i = 0; i < items.size(); ++i)
                for (size_t j = i + 1; j < items.size(); ++j) {
                    if (items[i].first->release >= items[j].first->release - kEps) continue;
                    if (items[j].second->min_piece_begin < items[i].second->max_piece_end - kEps)
                        add(ViolationKind::ReleaseOrder, "", items[j].first->id,
                            "transmitted before earlier-released " + items[i].first->id);
                }
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double failure_rate(const Instance& inst, const Schedule& sched) {
    double total = 0, got = 0;
    for (const auto& d : inst.data) {
        total += d.priority;
        if (sched.scheduled.count(d.id)) got += d.priority;
    }
    if (total == 0) return 0.0;  // no demand means no failure
    return 1.0 - got / total;
}

double service_balance(const Instance& inst, const Schedule& sched) {
    std::unordered_map<std::string, Seconds> dur_in_window;
    for (const auto& t : sched.tasks) dur_in_window[t.window] += t.duration;

    double sum = 0;
    int sats_with_windows = 0;
    for (size_t s = 0; s < inst.satellites.size(); ++s) {
        const auto& wins = inst.windows_of_sat[s];
        if (wins.empty()) continue;  // undefined utilization, excluded from the mean
        double ur = 0;
        for (int w : wins) {
            auto it = dur_in_window.find(inst.windows[w].id);
            Seconds used = it == dur_in_window.end() ? 0 : it->second;
            ur += used / inst.windows[w].length();
        }
        ur /= (double)wins.size();
        sum += 1.0 - ur;
        ++sats_with_windows;
    }
    if (sats_with_windows == 0) return 1.0;
    return sum / sats_with_windows;
}

ObjectivePoint evaluate(const Instance& inst, const Schedule& sched) {
    return {failure_rate(inst, sched), service_balance(inst, sched)};
}

}  // namespace sidsp
