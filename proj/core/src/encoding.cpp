#include "sidsp/encoding.hpp"

#include <algorithm>
#include <cmath>

namespace sidsp {

Chromosome Chromosome::zeros(const Instance& inst) {
    Chromosome c;
    c.x.assign(inst.data.size(), 0);
    c.y.assign(inst.data.size(), {});
    c.z.assign(inst.windows.size(), 0.0);
    return c;
}

double Chromosome::y_sum(int datum) const {
    double s = 0;
    for (const auto& [w, f] : y[datum]) s += f;
    return s;
}

Seconds begin_from_gene(double z, const TransmissionWindow& window, Seconds task_duration) {
    if (z < 0 || z > 1) throw std::invalid_argument("z gene outside [0, 1]");
    Seconds len = window.length();
    if (task_duration > len + kEps)
        throw std::invalid_argument("task duration exceeds window length");
    double z_eff = std::min(z, std::max(0.0, 1.0 - task_duration / len));
    return window.begin + z_eff * len;
}

DecodeResult decode(const Chromosome& chrom, const Instance& inst, const SolveMode& mode) {
    if (chrom.x.size() != inst.data.size() || chrom.y.size() != inst.data.size() ||
        chrom.z.size() != inst.windows.size())
        throw structural_error("chromosome shape does not match the instance");

    struct Part {
        int datum;
        Seconds dur;
    };
    std::vector<std::vector<Part>> per_window(inst.windows.size());
    for (int d = 0; d < (int)inst.data.size(); ++d) {
        for (const auto& [w, f] : chrom.y[d]) {
            if (w < 0 || w >= (int)inst.windows.size())
                throw structural_error("y gene references window out of range");
            if (f <= 0) continue;
            per_window[w].push_back({d, f * inst.data[d].duration});
        }
    }

    DecodeResult out;
    for (int w = 0; w < (int)inst.windows.size(); ++w) {
        auto& parts = per_window[w];
        if (parts.empty()) continue;
        std::sort(parts.begin(), parts.end(), [&](const Part& a, const Part& b) {
            return std::tie(inst.data[a.datum].release, inst.data[a.datum].id) <
                   std::tie(inst.data[b.datum].release, inst.data[b.datum].id);
        });
        Seconds total = 0;
        for (const auto& p : parts) total += p.dur;

        const auto& win = inst.windows[w];
        // Same clamp as begin_from_gene, tolerant of oversized tasks so that
        // infeasible chromosomes still decode to a reportable schedule.
        double slack = std::max(0.0, 1.0 - total / win.length());
        double z_eff = std::min(std::clamp(chrom.z[w], 0.0, 1.0), slack);

        DownlinkTask t;
        t.id = "dt-" + win.id;
        t.window = win.id;
        t.begin = win.begin + z_eff * win.length();
        t.duration = total;
        t.end = t.begin + total;
        for (const auto& p : parts) t.dset.push_back({inst.data[p.datum].id, p.dur});
        out.schedule.tasks.push_back(std::move(t));
    }

    for (int d = 0; d < (int)inst.data.size(); ++d) {
        if (!chrom.x[d]) continue;
        SegmentationPlan plan;
        plan.datum = inst.data[d].id;
        for (const auto& [w, f] : chrom.y[d])
            if (f > 0) plan.pieces.push_back({inst.windows[w].id, f * inst.data[d].duration});
        out.schedule.scheduled.insert(plan.datum);
        out.schedule.plans[plan.datum] = std::move(plan);
    }

    out.violations = validate_schedule(inst, out.schedule, mode);
    return out;
}

Chromosome encode(const Schedule& sched, const Instance& inst) {
    auto violations = validate_schedule(inst, sched, {SolveMode::Seg::segment,
                                                      SolveMode::Ord::rearrange});
    if (!violations.empty())
        throw std::invalid_argument("cannot encode an infeasible schedule (" +
                                    std::string(violation_name(violations.front().kind)) + ")");

    Chromosome c = Chromosome::zeros(inst);
    for (const auto& id : sched.scheduled) c.x[inst.data_index.at(id)] = 1;
    for (const auto& t : sched.tasks) {
        int w = inst.window_index.at(t.window);
        const auto& win = inst.windows[w];
        c.z[w] = std::clamp((t.begin - win.begin) / win.length(), 0.0, 1.0);
        for (const auto& p : t.dset) {
            int d = inst.data_index.at(p.datum);
            c.y[d].push_back({w, p.duration / inst.data[d].duration});
        }
    }
    for (auto& ys : c.y)
        std::sort(ys.begin(), ys.end());
    return c;
}

}  // namespace sidsp
