#include "sidsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidsp {

std::vector<ObjectivePoint> pareto_filter(std::vector<ObjectivePoint> points) {
    std::sort(points.begin(), points.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        return std::tie(a.f1, a.f2) < std::tie(b.f1, b.f2);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<ObjectivePoint> front;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        if (p.f2 < best_f2) {
            front.push_back(p);
            best_f2 = p.f2;
        }
    }
    return front;
}

double hypervolume_hso(const std::vector<ObjectivePoint>& front, ObjectivePoint ref) {
    for (const auto& p : front)
        if (p.f1 < -kEps || p.f1 > 1 + kEps || p.f2 < -kEps || p.f2 > 1 + kEps)
            throw std::invalid_argument("hypervolume point outside the unit box");

    std::vector<ObjectivePoint> pts;
    for (const auto& p : front)
        if (p.f1 < ref.f1 && p.f2 < ref.f2) pts.push_back(p);
    pts = pareto_filter(std::move(pts));
    if (pts.empty()) return 0.0;

    // Slice along f1: pts are sorted by f1 ascending with f2 strictly descending.
    double vol = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        double next_f1 = i + 1 < pts.size() ? pts[i + 1].f1 : ref.f1;
        vol += (next_f1 - pts[i].f1) * (ref.f2 - pts[i].f2);
    }
    return vol;
}

HvEstimate hypervolume_mc(const std::vector<ObjectivePoint>& front, ObjectivePoint ref,
                          long samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("hypervolume_mc needs at least one sample");
    auto pts = pareto_filter(front);
    // Keep only points inside the reference box; others cover nothing.
    std::erase_if(pts, [&](const ObjectivePoint& p) { return p.f1 >= ref.f1 || p.f2 >= ref.f2; });

    long hit = 0;
    for (long k = 0; k < samples; ++k) {
        double u = rng.uniform(0.0, ref.f1);
        double v = rng.uniform(0.0, ref.f2);
        // pts sorted by f1 asc / f2 desc: the candidate dominating (u,v) with the
        // smallest f2 is the last point with f1 <= u.
        auto it = std::upper_bound(pts.begin(), pts.end(), u,
                                   [](double x, const ObjectivePoint& p) { return x < p.f1; });
        if (it != pts.begin()) {
            --it;
            if (it->f2 <= v) ++hit;
        }
    }
    double box = ref.f1 * ref.f2;
    double p = (double)hit / (double)samples;
    HvEstimate est;
    est.value = p * box;
    est.std_error = std::sqrt(p * (1 - p) / (double)samples) * box;
    est.samples = samples;
    return est;
}

std::pair<double, double> front_stats(const std::vector<ObjectivePoint>& front) {
    if (front.empty()) throw std::invalid_argument("front_stats over an empty front");
    double s1 = 0, s2 = 0;
    for (const auto& p : front) {
        s1 += p.f1;
        s2 += p.f2;
    }
    return {s1 / front.size(), s2 / front.size()};
}

}  // namespace sidsp
