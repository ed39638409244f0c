#include <benchmark/benchmark.h>

#include "sidsp/evolve.hpp"
#include "sidsp/instances.hpp"
#include "sidsp/metrics.hpp"

using namespace sidsp;

namespace {

Instance instance_for(int n) { return generate(Family::MD, n, 12345); }

Schedule greedy_schedule(const Instance& inst, uint64_t seed) {
    std::vector<int> order(inst.data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    return rhga(inst, parse_mode("segment:rearrange"), order).first;
}

}  // namespace

static void BM_Rhga(benchmark::State& state) {
    Instance inst = instance_for((int)state.range(0));
    std::vector<int> order(inst.data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(7);
    for (auto _ : state) {
        rng.shuffle(order);
        auto result = rhga(inst, parse_mode("segment:rearrange"), order);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Rhga)->Arg(100)->Arg(200)->Arg(500);

static void BM_Validate(benchmark::State& state) {
    Instance inst = instance_for((int)state.range(0));
    Schedule sched = greedy_schedule(inst, 3);
    SolveMode mode = parse_mode("segment:rearrange");
    for (auto _ : state) {
        auto violations = validate_schedule(inst, sched, mode);
        benchmark::DoNotOptimize(violations);
    }
}
BENCHMARK(BM_Validate)->Arg(100)->Arg(200)->Arg(500);

static void BM_DestroyRepair(benchmark::State& state) {
    Instance inst = instance_for((int)state.range(0));
    SolveMode mode = parse_mode("segment:rearrange");
    Schedule sched = greedy_schedule(inst, 5);
    auto cache = congestion_all(inst);
    Rng rng(11);
    int op = 0;
    for (auto _ : state) {
        WindowState st = WindowState::from_schedule(inst, sched);
        TabooBank bank = destroy((DestroyOp)(op % kNumDestroyOps), st, rng, cache);
        repair((RepairOp)(op % kNumRepairOps), st, mode, bank, rng, cache);
        benchmark::DoNotOptimize(st);
        ++op;
    }
}
BENCHMARK(BM_DestroyRepair)->Arg(100)->Arg(200);

static void BM_HypervolumeHso(benchmark::State& state) {
    Rng rng(23);
    std::vector<ObjectivePoint> front;
    for (int i = 0; i < (int)state.range(0); ++i)
        front.push_back({rng.uniform01(), rng.uniform01()});
    for (auto _ : state) {
        double hv = hypervolume_hso(front);
        benchmark::DoNotOptimize(hv);
    }
}
BENCHMARK(BM_HypervolumeHso)->Arg(10)->Arg(100)->Arg(1000);

static void BM_NondominatedSort(benchmark::State& state) {
    Rng rng(29);
    std::vector<ObjectivePoint> pts;
    for (int i = 0; i < (int)state.range(0); ++i)
        pts.push_back({rng.uniform01(), rng.uniform01()});
    for (auto _ : state) {
        auto fronts = fast_nondominated_sort(pts);
        benchmark::DoNotOptimize(fronts);
    }
}
BENCHMARK(BM_NondominatedSort)->Arg(200)->Arg(1000);

BENCHMARK_MAIN();
