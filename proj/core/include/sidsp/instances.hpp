#pragma once

#include "sidsp/evolve.hpp"

#include <filesystem>

namespace sidsp {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct malformed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { ND, PD, MD };

Family parse_family(const std::string& name);
const char* family_name(Family family);

// Per-satellite downlink-time budget the window synthesizer aims for.
double default_window_target(Family family);

// Synthetic transmission windows: uniform 300-700 s spans scattered over the
// horizon, round-robined over the stations, non-overlapping per satellite,
// generated until each satellite's total reaches the target.
std::vector<TransmissionWindow> synth_windows(const std::vector<Satellite>& satellites,
                                              const std::vector<GroundStation>& stations,
                                              Seconds st, Seconds et,
                                              double target_seconds_per_sat, Rng& rng);

struct GenerateOptions {
    std::optional<double> window_target;  // overrides the family default
};

// Benchmark instance: family stations, the ten reference satellites, uniform
// priorities, series-dependent durations, releases over a two-day span
// filtered to the 24 h horizon.
Instance generate(Family family, int n_data, uint64_t seed, const GenerateOptions& opts = {});

bool instance_equal(const Instance& a, const Instance& b);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

struct ScheduleSet {
    std::string mode;
    std::vector<ObjectivePoint> objectives;
    std::vector<Schedule> schedules;
};

void save_schedules(const ScheduleSet& set, const std::filesystem::path& path);
ScheduleSet load_schedules(const std::filesystem::path& path);

// Deterministic number formatting shared by every CSV the suite writes.
std::string fmt_num(double v);

void write_text_atomic(const std::filesystem::path& path, const std::string& content);

void write_front_csv(const std::vector<ObjectivePoint>& front, const std::filesystem::path& path);
std::vector<ObjectivePoint> load_front_csv(const std::filesystem::path& path);

// CLI-layer trace files; hypervolume columns carry the x1000 scaling.
void write_hv_trace_csv(const RunResult& result, const std::filesystem::path& path);
void write_weight_trace_csv(const RunResult& result, const std::filesystem::path& path);

struct RunRow {
    std::string run_id;
    uint64_t seed = 0;
    int iteration = 0;
    double hv = 0;  // raw value; written scaled by 1000
    double v1 = 0, v2 = 0;
};

void write_runs_csv(const std::vector<RunRow>& rows, const std::filesystem::path& path);

}  // namespace sidsp
