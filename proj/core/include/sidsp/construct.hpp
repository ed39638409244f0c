#pragma once

#include "sidsp/model.hpp"
#include "sidsp/rng.hpp"

namespace sidsp {

struct SolverPiece {
    int datum = -1;
    Seconds duration = 0;

    bool operator==(const SolverPiece&) const = default;
};

// Mutable working form of a schedule: per-window occupancy plus the scheduled
// set. Every window hosts at most one contiguous downlink task.
class WindowState {
public:
    explicit WindowState(const Instance& inst);
    static WindowState from_schedule(const Instance& inst, const Schedule& sched);
    Schedule to_schedule() const;

    const Instance& instance() const { return *inst_; }

    struct Slot {
        bool used = false;
        Seconds begin = 0;
        Seconds duration = 0;
        std::vector<SolverPiece> pieces;  // transmission order: release asc, ties by id

        Seconds end() const { return begin + duration; }
        bool operator==(const Slot&) const = default;
    };

    const Slot& slot(int window) const { return slots_[window]; }
    bool is_scheduled(int datum) const { return scheduled_[datum] != 0; }
    std::vector<int> scheduled_data() const;
    std::vector<int> unscheduled_data() const;
    int scheduled_count() const;
    std::vector<int> used_windows() const;

    // Release-order envelope for placing `datum` under fofd: its pieces must
    // begin at or after `lower` (completion of earlier-released siblings) and
    // end by `upper` (first transmission moment of later-released siblings).
    struct FofdBounds {
        Seconds lower;
        Seconds upper;
    };
    FofdBounds fofd_bounds(int datum) const;

    // Longest additional piece of `datum` this window can take right now,
    // honoring window bounds, release/due, sigma gaps, antenna exclusivity and
    // (under fofd) the release-order envelope. Grid-aligned, >= 0.
    Seconds piece_capacity(int window, int datum, const SolveMode& mode) const;

    // Place one piece left-earliest (or append to the window's task). Returns
    // false and leaves the state untouched when the piece does not fit.
    bool place_piece(int window, int datum, Seconds dur, const SolveMode& mode);

    void mark_scheduled(int datum) { scheduled_[datum] = 1; }

    // Remove every piece of `datum` and slide the shortened tasks left within
    // their gaps. The datum becomes unscheduled.
    void remove_datum(int datum);

    bool operator==(const WindowState&) const = default;

private:
    struct Gap {
        Seconds lo, hi;
    };
    std::vector<Gap> free_gaps(int window, Seconds from) const;
    void insert_sorted(Slot& slot, int datum, Seconds dur) const;
    FofdBounds fofd_bounds_excluding(int datum, int exclude_window) const;
    // Earliest feasible begin for `window` hosting exactly `pieces`; negative
    // when no begin works.
    Seconds slot_earliest_begin(int window, const std::vector<SolverPiece>& pieces,
                                const SolveMode& mode) const;

    const Instance* inst_ = nullptr;
    std::vector<Slot> slots_;
    std::vector<char> scheduled_;
};

// Cut-and-stock plan for one datum: pieces to place, in placement order.
struct InsertPlan {
    int datum = -1;
    std::vector<std::pair<int, Seconds>> pieces;  // (window index, duration)
};

// Segmentation scheme for `datum` against the current window state. Returns
// nothing when the datum cannot be covered (capacity test first, then greedy
// fill; single window only in unsegment mode).
std::optional<InsertPlan> odcs(int datum, const WindowState& state, const SolveMode& mode);

// Place a full plan atomically: on failure the state is bit-identical to the
// input. Marks the datum scheduled on success.
bool srs(const InsertPlan& plan, WindowState& state, const SolveMode& mode);

// odcs + srs with the fofd admission rule; the one-shot insertion used by both
// construction and repair.
bool try_insert(WindowState& state, int datum, const SolveMode& mode);

// Random heuristic greedy construction: visits data in the given order (a
// permutation of data indices) and keeps every placement it finds.
std::pair<Schedule, ObjectivePoint> rhga(const Instance& inst, const SolveMode& mode,
                                         const std::vector<int>& order);

}  // namespace sidsp
