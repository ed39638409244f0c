#include "sidsp/instances.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sidsp {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr Seconds kHorizon = 86400.0;

struct SatSpec {
    const char* id;
    std::array<double, 6> elements;
    double d0;
};

// The ten reference satellites: three GaoFen, four SuperView, three ZiYuan.
const SatSpec kSatellites[] = {
    {"GF0101", {7145.08, 0.001, 98.55, 359.06, 152.17, 265.39}, 30},
    {"GF0201", {7011.57, 0.002, 97.83, 2.89, 98.15, 257.45}, 30},
    {"GF0601", {7020.45, 0.002, 97.99, 6.87, 56.94, 94.33}, 30},
    {"SV01", {6901.65, 0.002, 97.43, 1.01, 124.24, 242.68}, 10},
    {"SV02", {6894.39, 0.001, 97.54, 11.87, 128.22, 90.39}, 10},
    {"SV03", {6883.14, 0.000, 97.51, 5.98, 341.26, 106.70}, 10},
    {"SV04", {6884.95, 0.004, 97.51, 6.14, 92.52, 195.65}, 10},
    {"ZY02C", {7143.90, 0.002, 98.64, 341.91, 57.55, 186.17}, 60},
    {"ZY3", {6875.80, 0.001, 97.41, 0.79, 59.20, 71.87}, 60},
    {"ZY0104", {7145.08, 0.001, 98.55, 359.06, 152.17, 265.39}, 60},
};

GroundStation station(const char* id, double lat, double lon) {
    GroundStation g;
    g.id = id;
    g.lat = lat;
    g.lon = lon;
    g.alt = 0;
    return g;
}

std::vector<GroundStation> family_stations(Family family) {
    const GroundStation miyun = station("Miyun", 40, 117);
    const GroundStation kashi = station("Kashi", 39, 76);
    const GroundStation sanya = station("Sanya", 18, 109);
    const GroundStation cnpgs = station("CNPGS", 67, 21);
    switch (family) {
        case Family::ND: return {miyun, kashi, sanya};
        case Family::PD: return {cnpgs};
        case Family::MD: return {miyun, kashi, sanya, cnpgs};
    }
    return {};
}

std::pair<double, double> duration_range(const std::string& sat_id) {
    if (sat_id.starts_with("GF")) return {60, 120};
    if (sat_id.starts_with("SV")) return {10, 60};
    return {120, 200};  // ZiYuan series
}

}  // namespace

Family parse_family(const std::string& name) {
    if (name == "ND") return Family::ND;
    if (name == "PD") return Family::PD;
    if (name == "MD") return Family::MD;
    throw std::invalid_argument("unknown instance family '" + name + "'");
}

const char* family_name(Family family) {
    switch (family) {
        case Family::ND: return "ND";
        case Family::PD: return "PD";
        case Family::MD: return "MD";
    }
    return "?";
}

double default_window_target(Family family) {
    switch (family) {
        case Family::ND: return 900;
        case Family::PD: return 600;
        case Family::MD: return 1500;
    }
    return 0;
}

std::vector<TransmissionWindow> synth_windows(const std::vector<Satellite>& satellites,
                                              const std::vector<GroundStation>& stations,
                                              Seconds st, Seconds et,
                                              double target_seconds_per_sat, Rng& rng) {
    if (target_seconds_per_sat <= 0) throw std::invalid_argument("window target must be positive");
    std::vector<TransmissionWindow> out;
    for (const auto& sat : satellites) {
        std::vector<std::pair<Seconds, Seconds>> spans;
        double total = 0;
        int k = 0;
        while (total < target_seconds_per_sat) {
            Seconds dur = grid_round(rng.uniform(300, 700));
            Seconds begin = 0;
            bool placed = false;
            for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
                begin = grid_round(rng.uniform(st, et - dur));
                placed = true;
                for (const auto& [b, e] : spans)
                    if (begin < e + kEps && begin + dur > b - kEps) {
                        placed = false;
                        break;
                    }
            }
            if (!placed) break;  // horizon saturated, should not happen at these budgets
            spans.push_back({begin, begin + dur});
            TransmissionWindow w;
            char buf[16];
            std::snprintf(buf, sizeof buf, "%02d", k);
            w.id = "tw-" + sat.id + "-" + buf;
            w.satellite = sat.id;
            w.station = stations[k % stations.size()].id;
            w.begin = begin;
            w.end = begin + dur;
            out.push_back(std::move(w));
            total += dur;
            ++k;
        }
    }
    return out;
}

Instance generate(Family family, int n_data, uint64_t seed, const GenerateOptions& opts) {
    if (n_data < 1) throw std::invalid_argument("n_data must be at least 1");
    Rng rng(seed);

    Instance inst;
    inst.st = 0;
    inst.et = kHorizon;
    inst.sigma = 60;
    for (const auto& spec : kSatellites) {
        Satellite s;
        s.id = spec.id;
        s.elements = spec.elements;
        s.d0 = spec.d0;
        inst.satellites.push_back(std::move(s));
    }
    inst.stations = family_stations(family);

    double target = opts.window_target ? *opts.window_target : default_window_target(family);
    inst.windows = synth_windows(inst.satellites, inst.stations, inst.st, inst.et, target, rng);

    for (int i = 0; i < n_data; ++i) {
        ImageData d;
        while (true) {
            int sat = (int)rng.uniform_int(0, (int)inst.satellites.size() - 1);
            d.satellite = inst.satellites[sat].id;
            d.priority = (int)rng.uniform_int(1, 10);
            auto [lo, hi] = duration_range(d.satellite);
            d.duration = grid_round(rng.uniform(lo, hi));
            d.release = grid_round(rng.uniform(-kHorizon, kHorizon));
            d.due_hours = due_time(d.priority);
            // Keep only data whose validity window meets the horizon.
            if (d.release < inst.et - kEps && d.expiry() > inst.st + kEps) break;
        }
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d", i);
        d.id = std::string("od-") + buf;
        inst.data.push_back(std::move(d));
    }

    inst.build_index();
    inst.check();
    return inst;
}

bool instance_equal(const Instance& a, const Instance& b) {
    auto sat_eq = [](const Satellite& x, const Satellite& y) {
        return x.id == y.id && x.elements == y.elements && x.d0 == y.d0;
    };
    auto st_eq = [](const GroundStation& x, const GroundStation& y) {
        return x.id == y.id && x.lat == y.lat && x.lon == y.lon && x.alt == y.alt &&
               x.gamma == y.gamma && x.pi_angle == y.pi_angle;
    };
    auto win_eq = [](const TransmissionWindow& x, const TransmissionWindow& y) {
        return x.id == y.id && x.station == y.station && x.satellite == y.satellite &&
               x.begin == y.begin && x.end == y.end;
    };
    auto dat_eq = [](const ImageData& x, const ImageData& y) {
        return x.id == y.id && x.parent == y.parent && x.satellite == y.satellite &&
               x.priority == y.priority && x.duration == y.duration && x.release == y.release &&
               x.due_hours == y.due_hours;
    };
    if (a.st != b.st || a.et != b.et || a.sigma != b.sigma) return false;
    if (a.satellites.size() != b.satellites.size() || a.stations.size() != b.stations.size() ||
        a.windows.size() != b.windows.size() || a.data.size() != b.data.size())
        return false;
    for (size_t i = 0; i < a.satellites.size(); ++i)
        if (!sat_eq(a.satellites[i], b.satellites[i])) return false;
    for (size_t i = 0; i < a.stations.size(); ++i)
        if (!st_eq(a.stations[i], b.stations[i])) return false;
    for (size_t i = 0; i < a.windows.size(); ++i)
        if (!win_eq(a.windows[i], b.windows[i])) return false;
    for (size_t i = 0; i < a.data.size(); ++i)
        if (!dat_eq(a.data[i], b.data[i])) return false;
    return true;
}

namespace {

ordered_json to_json(const Instance& inst) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "instance";
    j["units"] = "seconds since the instance epoch";
    j["horizon"] = {{"st", inst.st}, {"et", inst.et}};
    j["sigma"] = inst.sigma;
    j["satellites"] = ordered_json::array();
    for (const auto& s : inst.satellites)
        j["satellites"].push_back({{"id", s.id}, {"elements", s.elements}, {"d0", s.d0}});
    j["stations"] = ordered_json::array();
    for (const auto& g : inst.stations)
        j["stations"].push_back({{"id", g.id},
                                 {"lat", g.lat},
                                 {"lon", g.lon},
                                 {"alt", g.alt},
                                 {"gamma", g.gamma},
                                 {"pi", g.pi_angle}});
    j["windows"] = ordered_json::array();
    for (const auto& w : inst.windows)
        j["windows"].push_back({{"id", w.id},
                                {"station", w.station},
                                {"satellite", w.satellite},
                                {"begin", w.begin},
                                {"end", w.end}});
    j["data"] = ordered_json::array();
    for (const auto& d : inst.data) {
        ordered_json jd = {{"id", d.id},
                           {"satellite", d.satellite},
                           {"priority", d.priority},
                           {"duration", d.duration},
                           {"release", d.release},
                           {"due_hours", d.due_hours}};
        if (d.parent) jd["parent"] = *d.parent;
        j["data"].push_back(std::move(jd));
    }
    return j;
}

ordered_json parse_file(const std::filesystem::path& path, const char* expected_kind) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw malformed_error("malformed JSON in " + path.string() + ": " + e.what());
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw schema_error("missing schema_version in " + path.string());
    if (j["schema_version"].get<int>() != kSchemaVersion)
        throw schema_error("unsupported schema_version in " + path.string());
    if (!j.contains("kind") || j["kind"].get<std::string>() != expected_kind)
        throw schema_error("expected a " + std::string(expected_kind) + " file: " + path.string());
    return j;
}

}  // namespace

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    write_text_atomic(path, to_json(inst).dump(2) + "\n");
}

Instance load_instance(const std::filesystem::path& path) {
    ordered_json j = parse_file(path, "instance");
    Instance inst;
    try {
        inst.st = j.at("horizon").at("st").get<double>();
        inst.et = j.at("horizon").at("et").get<double>();
        inst.sigma = j.at("sigma").get<double>();
        for (const auto& js : j.at("satellites")) {
            Satellite s;
            s.id = js.at("id").get<std::string>();
            auto el = js.at("elements");
            for (int i = 0; i < 6; ++i) s.elements[i] = el.at(i).get<double>();
            s.d0 = js.at("d0").get<double>();
            inst.satellites.push_back(std::move(s));
        }
        for (const auto& jg : j.at("stations")) {
            GroundStation g;
            g.id = jg.at("id").get<std::string>();
            g.lat = jg.at("lat").get<double>();
            g.lon = jg.at("lon").get<double>();
            g.alt = jg.at("alt").get<double>();
            g.gamma = jg.at("gamma").get<double>();
            g.pi_angle = jg.at("pi").get<double>();
            inst.stations.push_back(std::move(g));
        }
        for (const auto& jw : j.at("windows")) {
            TransmissionWindow w;
            w.id = jw.at("id").get<std::string>();
            w.station = jw.at("station").get<std::string>();
            w.satellite = jw.at("satellite").get<std::string>();
            w.begin = jw.at("begin").get<double>();
            w.end = jw.at("end").get<double>();
            inst.windows.push_back(std::move(w));
        }
        for (const auto& jd : j.at("data")) {
            ImageData d;
            d.id = jd.at("id").get<std::string>();
            d.satellite = jd.at("satellite").get<std::string>();
            d.priority = jd.at("priority").get<int>();
            d.duration = jd.at("duration").get<double>();
            d.release = jd.at("release").get<double>();
            d.due_hours = jd.at("due_hours").get<double>();
            if (jd.contains("parent")) d.parent = jd.at("parent").get<std::string>();
            inst.data.push_back(std::move(d));
        }
    } catch (const nlohmann::json::exception& e) {
        throw malformed_error("bad instance content in " + path.string() + ": " + e.what());
    }
    inst.build_index();
    inst.check();  // dangling ids and broken invariants surface here
    return inst;
}

void save_schedules(const ScheduleSet& set, const std::filesystem::path& path) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "schedule_set";
    j["mode"] = set.mode;
    j["schedules"] = ordered_json::array();
    for (size_t i = 0; i < set.schedules.size(); ++i) {
        const auto& s = set.schedules[i];
        ordered_json js;
        js["f1"] = set.objectives[i].f1;
        js["f2"] = set.objectives[i].f2;
        js["tasks"] = ordered_json::array();
        for (const auto& t : s.tasks) {
            ordered_json jt = {{"id", t.id},
                               {"window", t.window},
                               {"begin", t.begin},
                               {"duration", t.duration}};
            jt["pieces"] = ordered_json::array();
            for (const auto& p : t.dset)
                jt["pieces"].push_back({{"datum", p.datum}, {"duration", p.duration}});
            js["tasks"].push_back(std::move(jt));
        }
        js["scheduled"] = ordered_json::array();
        for (const auto& id : s.scheduled) js["scheduled"].push_back(id);
        j["schedules"].push_back(std::move(js));
    }
    write_text_atomic(path, j.dump(2) + "\n");
}

ScheduleSet load_schedules(const std::filesystem::path& path) {
    ordered_json j = parse_file(path, "schedule_set");
    ScheduleSet out;
    try {
        out.mode = j.at("mode").get<std::string>();
        for (const auto& js : j.at("schedules")) {
            ObjectivePoint obj{js.at("f1").get<double>(), js.at("f2").get<double>()};
            Schedule s;
            for (const auto& jt : js.at("tasks")) {
                DownlinkTask t;
                t.id = jt.at("id").get<std::string>();
                t.window = jt.at("window").get<std::string>();
                t.begin = jt.at("begin").get<double>();
                t.duration = jt.at("duration").get<double>();
                t.end = t.begin + t.duration;
                for (const auto& jp : jt.at("pieces"))
                    t.dset.push_back(
                        {jp.at("datum").get<std::string>(), jp.at("duration").get<double>()});
                s.tasks.push_back(std::move(t));
            }
            for (const auto& id : js.at("scheduled")) s.scheduled.insert(id.get<std::string>());
            // Plans are recovered from the task pieces.
            for (const auto& t : s.tasks)
                for (const auto& p : t.dset) {
                    if (!s.scheduled.count(p.datum)) continue;
                    auto& plan = s.plans[p.datum];
                    plan.datum = p.datum;
                    plan.pieces.push_back({t.window, p.duration});
                }
            out.objectives.push_back(obj);
            out.schedules.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw malformed_error("bad schedule content in " + path.string() + ": " + e.what());
    }
    return out;
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void write_front_csv(const std::vector<ObjectivePoint>& front,
                     const std::filesystem::path& path) {
    std::ostringstream os;
    os << "f1,f2\n";
    for (const auto& p : front) os << fmt_num(p.f1) << "," << fmt_num(p.f2) << "\n";
    write_text_atomic(path, os.str());
}

std::vector<ObjectivePoint> load_front_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw malformed_error("empty front file " + path.string());
    std::vector<ObjectivePoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw malformed_error("bad front row '" + line + "' in " + path.string());
        try {
            out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw malformed_error("bad front row '" + line + "' in " + path.string());
        }
    }
    return out;
}

void write_hv_trace_csv(const RunResult& result, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "iteration,hv_x1000,archive_size\n";
    for (const auto& row : result.trace)
        os << row.iteration << "," << fmt_num(row.hv * 1000.0) << "," << row.archive_size << "\n";
    write_text_atomic(path, os.str());
}

void write_weight_trace_csv(const RunResult& result, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "iteration";
    for (int i = 0; i < kNumDestroyOps; ++i) os << ",w_" << destroy_name((DestroyOp)i);
    for (int i = 0; i < kNumRepairOps; ++i) os << ",w_" << repair_name((RepairOp)i);
    os << "\n";
    for (const auto& row : result.trace) {
        os << row.iteration;
        for (double w : row.destroy_weights) os << "," << fmt_num(w);
        for (double w : row.repair_weights) os << "," << fmt_num(w);
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

void write_runs_csv(const std::vector<RunRow>& rows, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "run_id,seed,iteration,hv_x1000,v1_mean,v2_mean\n";
    for (const auto& r : rows)
        os << r.run_id << "," << r.seed << "," << r.iteration << "," << fmt_num(r.hv * 1000.0)
           << "," << fmt_num(r.v1) << "," << fmt_num(r.v2) << "\n";
    write_text_atomic(path, os.str());
}

}  // namespace sidsp
