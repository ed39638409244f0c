#include "sidsp/evolve.hpp"

#include "sidsp/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace sidsp {

std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<ObjectivePoint>& points) {
    const int n = (int)points.size();
    std::vector<std::vector<int>> dominated_by(n);  // S[p]: points p dominates
    std::vector<int> dom_count(n, 0);               // n[p]: how many dominate p
    std::vector<std::vector<int>> fronts;

    std::vector<int> first;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(points[p], points[q]))
                dominated_by[p].push_back(q);
            else if (dominates(points[q], points[p]))
                ++dom_count[p];
        }
        if (dom_count[p] == 0) first.push_back(p);
    }
    fronts.push_back(std::move(first));
    while (!fronts.back().empty()) {
        std::vector<int> next;
        for (int p : fronts.back())
            for (int q : dominated_by[p])
                if (--dom_count[q] == 0) next.push_back(q);
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& front) {
    const int n = (int)front.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    for (int obj = 0; obj < 2; ++obj) {
        auto value = [&](int i) { return obj == 0 ? front[i].f1 : front[i].f2; };
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return value(a) < value(b); });
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        double range = value(order.back()) - value(order.front());
        if (range <= 0) continue;  // zero-range convention: no contribution
        for (int k = 1; k + 1 < n; ++k)
            dist[order[k]] += (value(order[k + 1]) - value(order[k - 1])) / range;
    }
    return dist;
}

namespace {

enum class Elitism { crowded, random };

// Elite store. The crowded variant is a nondominated archive with crowding
// truncation; the random variant keeps whatever survives uniform eviction,
// which is the crude control mechanism.
struct Archive {
    std::vector<ObjectivePoint> points;
    std::vector<Schedule> schedules;
    int capacity;
    Elitism elitism;
    bool truncated = false;
    int max_size = 0;

    std::vector<int> front_indices() const {
        std::vector<int> idx;
        for (int i = 0; i < (int)points.size(); ++i) {
            bool dominated_or_dup = false;
            for (int j = 0; j < (int)points.size() && !dominated_or_dup; ++j) {
                if (j == i) continue;
                if (dominates(points[j], points[i])) dominated_or_dup = true;
                if (points[j] == points[i] && j < i) dominated_or_dup = true;
            }
            if (!dominated_or_dup) idx.push_back(i);
        }
        return idx;
    }

    std::vector<ObjectivePoint> front_points() const {
        std::vector<ObjectivePoint> out;
        for (int i : front_indices()) out.push_back(points[i]);
        return out;
    }

    ScoreOutcome classify(const ObjectivePoint& p) const {
        auto front = elitism == Elitism::crowded ? points : front_points();
        if (front.empty()) return ScoreOutcome::DominatesAll;
        bool dominates_all = true, dominates_one = false;
        for (const auto& m : front) {
            if (dominates(m, p)) return ScoreOutcome::Dominated;
            if (dominates(p, m))
                dominates_one = true;
            else
                dominates_all = false;
        }
        if (dominates_all) return ScoreOutcome::DominatesAll;
        if (dominates_one) return ScoreOutcome::DominatesOne;
        return ScoreOutcome::OnFrontier;
    }

    void insert(const ObjectivePoint& p, const Schedule& sched, Rng& rng) {
        if (elitism == Elitism::random) {
            points.push_back(p);
            schedules.push_back(sched);
            max_size = std::max(max_size, (int)points.size());
            while ((int)points.size() > capacity) {
                truncated = true;
                int victim = (int)rng.uniform_int(0, (int)points.size() - 1);
                points.erase(points.begin() + victim);
                schedules.erase(schedules.begin() + victim);
            }
            return;
        }
        for (const auto& m : points)
            if (dominates(m, p) || m == p) return;
        for (int i = (int)points.size() - 1; i >= 0; --i) {
            if (dominates(p, points[i])) {
                points.erase(points.begin() + i);
                schedules.erase(schedules.begin() + i);
            }
        }
        points.push_back(p);
        schedules.push_back(sched);
        max_size = std::max(max_size, (int)points.size());
        while ((int)points.size() > capacity) {
            truncated = true;
            auto crowd = crowding_distance(points);
            int victim = 0;
            for (int i = 1; i < (int)points.size(); ++i)
                if (crowd[i] < crowd[victim]) victim = i;
            points.erase(points.begin() + victim);
            schedules.erase(schedules.begin() + victim);
        }
    }
};

void assign_rank_and_crowding(std::vector<Individual>& pop) {
    std::vector<ObjectivePoint> pts(pop.size());
    for (size_t i = 0; i < pop.size(); ++i) pts[i] = pop[i].objectives;
    auto fronts = fast_nondominated_sort(pts);
    for (int r = 0; r < (int)fronts.size(); ++r) {
        std::vector<ObjectivePoint> fpts;
        for (int i : fronts[r]) fpts.push_back(pts[i]);
        auto crowd = crowding_distance(fpts);
        for (size_t k = 0; k < fronts[r].size(); ++k) {
            pop[fronts[r][k]].rank = r;
            pop[fronts[r][k]].crowding = crowd[k];
        }
    }
}

int tournament(const std::vector<Individual>& pop, Rng& rng) {
    int a = (int)rng.uniform_int(0, (int)pop.size() - 1);
    int b = (int)rng.uniform_int(0, (int)pop.size() - 1);
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return rng.bernoulli(0.5) ? a : b;
}

std::vector<Individual> environmental_selection(std::vector<Individual> pool, int ns,
                                                Elitism elitism, Rng& rng) {
    if ((int)pool.size() <= ns) return pool;
    std::vector<Individual> next;
    next.reserve(ns);
    if (elitism == Elitism::random) {
        std::vector<int> idx(pool.size());
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        idx.resize(ns);
        std::sort(idx.begin(), idx.end());
        for (int i : idx) next.push_back(std::move(pool[i]));
        return next;
    }
    std::vector<ObjectivePoint> pts(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) pts[i] = pool[i].objectives;
    auto fronts = fast_nondominated_sort(pts);
    for (const auto& front : fronts) {
        if ((int)(next.size() + front.size()) <= ns) {
            for (int i : front) next.push_back(std::move(pool[i]));
            continue;
        }
        std::vector<ObjectivePoint> fpts;
        for (int i : front) fpts.push_back(pts[i]);
        auto crowd = crowding_distance(fpts);
        std::vector<int> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
            return a < b;
        });
        for (int k : order) {
            if ((int)next.size() == ns) break;
            next.push_back(std::move(pool[front[k]]));
        }
        break;
    }
    return next;
}

RunResult run_impl(const Instance& inst, const SolveMode& mode, const RunParams& params,
                   Elitism elitism) {
    Rng rng(params.seed);
    const auto congestion_cache = congestion_all(inst);

    auto make_individual = [&](Schedule sched) {
        Individual ind;
        ind.objectives = evaluate(inst, sched);
        ind.chromosome = encode(sched, inst);
        ind.schedule = std::move(sched);
        return ind;
    };

    // Initial population: greedy construction over independent random orders.
    std::vector<Individual> pop;
    pop.reserve(params.ns);
    std::vector<int> order(inst.data.size());
    std::iota(order.begin(), order.end(), 0);
    Archive archive;
    archive.capacity = params.na;
    archive.elitism = elitism;
    for (int i = 0; i < params.ns; ++i) {
        rng.shuffle(order);
        Individual ind = make_individual(rhga(inst, mode, order).first);
        archive.insert(ind.objectives, ind.schedule, rng);
        pop.push_back(std::move(ind));
    }
    assign_rank_and_crowding(pop);

    auto destroy_stats = OperatorStats::uniform(kNumDestroyOps, params.lambda);
    auto repair_stats = OperatorStats::uniform(kNumRepairOps, params.lambda);

    RunResult result;
    for (int iter = 1; iter <= params.max_iter; ++iter) {
        std::vector<Individual> offspring;
        offspring.reserve(params.ns);
        for (int k = 0; k < params.ns; ++k) {
            const Individual& parent = pop[tournament(pop, rng)];
            int d_op = select_operator(destroy_stats, rng);
            int r_op = select_operator(repair_stats, rng);

            WindowState state = WindowState::from_schedule(inst, parent.schedule);
            TabooBank bank =
                destroy((DestroyOp)d_op, state, rng, congestion_cache, params.taboo);
            repair((RepairOp)r_op, state, mode, bank, rng, congestion_cache);

            Individual child = make_individual(state.to_schedule());
#ifndef NDEBUG
            assert(validate_schedule(inst, child.schedule, mode).empty());
#endif
            double score = score_event(archive.classify(child.objectives), rng, params.scores);
            destroy_stats.add_score(d_op, score);
            repair_stats.add_score(r_op, score);
            archive.insert(child.objectives, child.schedule, rng);
            offspring.push_back(std::move(child));
        }

        for (auto& ind : pop) offspring.push_back(std::move(ind));
        pop = environmental_selection(std::move(offspring), params.ns, elitism, rng);
        assign_rank_and_crowding(pop);

        update_weights(destroy_stats);
        update_weights(repair_stats);

        TraceRow row;
        row.iteration = iter;
        row.hv = hypervolume_hso(archive.front_points());
        row.archive_size = (int)archive.points.size();
        row.destroy_weights = destroy_stats.weights;
        row.repair_weights = repair_stats.weights;
        result.trace.push_back(std::move(row));
    }

    // Emit the archive front sorted by objectives.
    std::vector<int> idx = archive.front_indices();
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::tie(archive.points[a].f1, archive.points[a].f2) <
               std::tie(archive.points[b].f1, archive.points[b].f2);
    });
    for (int i : idx) {
        result.front.push_back(archive.points[i]);
        result.front_schedules.push_back(std::move(archive.schedules[i]));
    }
    result.max_archive_size = archive.max_size;
    result.archive_truncated = archive.truncated;
    return result;
}

}  // namespace

RunResult run(const Instance& inst, const SolveMode& mode, const RunParams& params) {
    return run_impl(inst, mode, params, Elitism::crowded);
}

RunResult run_crem(const Instance& inst, const SolveMode& mode, const RunParams& params) {
    return run_impl(inst, mode, params, Elitism::random);
}

}  // namespace sidsp
