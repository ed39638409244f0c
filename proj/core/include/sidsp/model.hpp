#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace sidsp {

using Seconds = double;

// Feasibility tolerance used in every time/duration comparison.
inline constexpr double kEps = 1e-6;
// All durations and begin moments live on a millisecond grid.
inline constexpr double kGrid = 1e-3;

// Smallest grid point >= t (t assumed close to the grid already or arbitrary).
Seconds grid_ceil(Seconds t);
// Largest grid point <= t.
Seconds grid_floor(Seconds t);
// Nearest grid point.
Seconds grid_round(Seconds t);

/// Thrown when a schedule or file references ids that do not resolve.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Satellite {
    std::string id;
    std::array<double, 6> elements{};  // opaque orbital metadata, never interpreted
    Seconds d0 = 0;                    // minimum segment transmission duration
};

struct GroundStation {
    std::string id;
    double lat = 0, lon = 0, alt = 0;
    double gamma = 90, pi_angle = 90;  // antenna roll/pitch limits, metadata only
};

struct TransmissionWindow {
    std::string id;
    std::string station;
    std::string satellite;
    Seconds begin = 0, end = 0;

    Seconds length() const { return end - begin; }
};

struct ImageData {
    std::string id;
    std::optional<std::string> parent;  // set only on segment records
    std::string satellite;
    int priority = 1;          // 1..10
    Seconds duration = 0;
    Seconds release = 0;       // seconds since horizon epoch, may be negative
    double due_hours = 24;     // derived from priority

    Seconds due_seconds() const { return due_hours * 3600.0; }
    Seconds expiry() const { return release + due_seconds(); }
};

struct Piece {
    std::string datum;
    Seconds duration = 0;
};

struct DownlinkTask {
    std::string id;
    Seconds begin = 0, end = 0, duration = 0;
    std::string window;
    std::vector<Piece> dset;  // ordered by datum release ascending, ties by id
};

struct SolveMode {
    enum class Seg { segment, unsegment };
    enum class Ord { rearrange, fofd };
    Seg segmentation = Seg::segment;
    Ord ordering = Ord::rearrange;

    bool operator==(const SolveMode&) const = default;
};

// "<segment|unsegment>:<rearrange|fofd>"; throws std::invalid_argument on bad input.
SolveMode parse_mode(const std::string& text);
std::string mode_name(const SolveMode& mode);

struct SegmentationPlan {
    std::string datum;
    std::vector<std::pair<std::string, Seconds>> pieces;  // (window id, duration)
};

struct Schedule {
    std::vector<DownlinkTask> tasks;
    std::map<std::string, SegmentationPlan> plans;  // keyed by original datum id
    std::set<std::string> scheduled;                // original data with x_i = 1
};

struct ObjectivePoint {
    double f1 = 0, f2 = 0;

    bool operator==(const ObjectivePoint&) const = default;
};

// Strict Pareto dominance, minimization in both coordinates.
inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

struct Instance {
    Seconds st = 0, et = 0;
    std::vector<Satellite> satellites;
    std::vector<GroundStation> stations;
    std::vector<TransmissionWindow> windows;
    std::vector<ImageData> data;
    Seconds sigma = 60.0;  // antenna set-up time

    // Lookup tables; populated by build_index(), required before solving.
    std::unordered_map<std::string, int> sat_index;
    std::unordered_map<std::string, int> station_index;
    std::unordered_map<std::string, int> window_index;
    std::unordered_map<std::string, int> data_index;
    std::vector<std::vector<int>> windows_of_sat;  // window indices per satellite

    void build_index();
    // Checks type invariants and cross references; throws structural_error.
    void check() const;

    const Satellite& sat_of_window(int w) const {
        return satellites[sat_index.at(windows[w].satellite)];
    }
    const Satellite& sat_of_datum(int d) const {
        return satellites[sat_index.at(data[d].satellite)];
    }
};

// Due time in hours as a function of priority; rejects priorities outside 1..10.
double due_time(int priority);

enum class ViolationKind {
    VisibleTime,            // task outside its window
    WorkTime,               // task shorter than d0 or longer than the window
    LogicalTime,            // task begins before release or at/after expiry
    SetupGap,               // missing sigma between adjacent cross-satellite tasks
    CompletedTransmission,  // scheduled datum not transmitted completely
    SegmentMinimum,         // piece shorter than d0
    MultipleTransmission,   // datum placed twice in one window / duplicate plan
    StationOverlap,         // two tasks of one station overlap
    SatelliteOverlap,       // two tasks of one satellite overlap
    ReleaseOrder,           // fofd: transmission violates release order
    UnsegmentSplit,         // unsegment mode: datum split across pieces
    WindowReuse,            // more than one task on a window
    TaskConsistency,        // duration/end/dset bookkeeping broken
};

const char* violation_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string task;   // may be empty
    std::string datum;  // may be empty
    std::string detail;

    bool operator<(const Violation& o) const {
        return std::tie(kind, task, datum, detail) < std::tie(o.kind, o.task, o.datum, o.detail);
    }
    bool operator==(const Violation&) const = default;
};

// Full constraint check; empty result means feasible. Unresolved ids throw
// structural_error instead of being reported as violations.
std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched,
                                         const SolveMode& mode);

// f1: priority-weighted share of original data left untransmitted.
double failure_rate(const Instance& inst, const Schedule& sched);

// f2: mean over satellites (with windows) of one minus their window utilization.
double service_balance(const Instance& inst, const Schedule& sched);

ObjectivePoint evaluate(const Instance& inst, const Schedule& sched);

}  // namespace sidsp
