// sidsp: generate instances, run the solvers and studies, evaluate fronts.

#include "sidsp/instances.hpp"
#include "sidsp/metrics.hpp"
#include "sidsp/oracle.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace sidsp;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int default_jobs() {
    if (const char* env = std::getenv("SIDSP_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

// Run `work(i)` for i in [0, n) on up to `jobs` threads; results land by index.
void parallel_for(int n, int jobs, const std::function<void(int)>& work) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<SolveMode> all_modes() {
    return {parse_mode("segment:rearrange"), parse_mode("segment:fofd"),
            parse_mode("unsegment:rearrange"), parse_mode("unsegment:fofd")};
}

struct SolveArgs {
    std::string instance_path;
    std::string mode = "segment:rearrange";
    std::string algo = "alns-nsga2";
    std::string out_dir = ".";
    uint64_t seed = 1;
    int iters = 200;
    int ns = 100;
    int na = 100;
    double lambda = 0.5;
};

int cmd_gen(const std::string& family, int n, uint64_t seed, const std::string& out,
            std::optional<double> window_target) {
    GenerateOptions opts;
    opts.window_target = window_target;
    Instance inst = generate(parse_family(family), n, seed, opts);
    save_instance(inst, out);
    std::cout << "wrote " << out << " (" << inst.data.size() << " data, " << inst.windows.size()
              << " windows)\n";
    return kExitOk;
}

int cmd_solve(const SolveArgs& args) {
    Instance inst = load_instance(args.instance_path);
    SolveMode mode = parse_mode(args.mode);
    RunParams params;
    params.seed = args.seed;
    params.max_iter = args.iters;
    params.ns = args.ns;
    params.na = args.na;
    params.lambda = args.lambda;

    RunResult result = args.algo == "crem" ? run_crem(inst, mode, params)
                                           : run(inst, mode, params);

    std::filesystem::path dir(args.out_dir);
    write_front_csv(result.front, dir / "front.csv");
    write_hv_trace_csv(result, dir / "hv_trace.csv");
    write_weight_trace_csv(result, dir / "weight_trace.csv");
    ScheduleSet set;
    set.mode = mode_name(mode);
    set.objectives = result.front;
    set.schedules = result.front_schedules;
    save_schedules(set, dir / "schedules.json");

    double final_hv = result.trace.empty() ? hypervolume_hso(result.front)
                                           : result.trace.back().hv;
    std::cout << "front size " << result.front.size() << ", final HV x1000 "
              << fmt_num(final_hv * 1000.0) << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string family = "ND";
    std::string sizes = "50";
    std::string modes = "all";
    std::string study;
    std::string out_dir = ".";
    int restarts = 10;
    uint64_t seeds = 1;
    int iters = 200;
    int ns = 100;
    int na = 100;
    double lambda = 0.5;
    int jobs = 0;
};

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::invalid_argument("empty --sizes list");
    return out;
}

double final_hv_of(const RunResult& r) {
    return r.trace.empty() ? hypervolume_hso(r.front) : r.trace.back().hv;
}

int cmd_bench(const BenchArgs& args) {
    Family family = parse_family(args.family);
    auto sizes = parse_sizes(args.sizes);
    int jobs = args.jobs > 0 ? args.jobs : default_jobs();
    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<SolveMode> modes;
    if (args.modes == "all")
        modes = all_modes();
    else
        modes.push_back(parse_mode(args.modes));

    auto instance_for = [&](int size) {
        return generate(family, size, args.seeds + (uint64_t)size * 7919u);
    };

    if (args.study.empty()) {
        struct Job {
            int size;
            SolveMode mode;
            int restart;
            uint64_t seed;
        };
        std::vector<Job> jobs_list;
        for (int size : sizes)
            for (const auto& mode : modes)
                for (int r = 0; r < args.restarts; ++r)
                    jobs_list.push_back(
                        {size, mode, r, args.seeds + (uint64_t)jobs_list.size()});

        std::map<int, Instance> instances;
        for (int size : sizes) instances.emplace(size, instance_for(size));

        std::vector<RunRow> rows(jobs_list.size());
        parallel_for((int)jobs_list.size(), jobs, [&](int i) {
            const Job& job = jobs_list[i];
            RunParams params;
            params.seed = job.seed;
            params.max_iter = args.iters;
            params.ns = args.ns;
            params.na = args.na;
            params.lambda = args.lambda;
            RunResult res = run(instances.at(job.size), job.mode, params);
            auto [v1, v2] = front_stats(res.front);
            RunRow row;
            row.run_id = std::string(family_name(family)) + "-" + std::to_string(job.size) +
                         ":" + mode_name(job.mode) + ":" + std::to_string(job.restart);
            row.seed = job.seed;
            row.iteration = args.iters;
            row.hv = final_hv_of(res);
            row.v1 = v1;
            row.v2 = v2;
            rows[i] = std::move(row);
        });
        write_runs_csv(rows, dir / "runs.csv");

        // Table-shaped summary: one row per (size, mode).
        std::ostringstream os;
        os << "family,size,mode,restarts,hv_x1000_mean,v1_mean,v2_mean\n";
        size_t k = 0;
        for (int size : sizes)
            for (const auto& mode : modes) {
                double hv = 0, v1 = 0, v2 = 0;
                for (int r = 0; r < args.restarts; ++r, ++k) {
                    hv += rows[k].hv;
                    v1 += rows[k].v1;
                    v2 += rows[k].v2;
                }
                os << family_name(family) << "," << size << "," << mode_name(mode) << ","
                   << args.restarts << "," << fmt_num(hv / args.restarts * 1000.0) << ","
                   << fmt_num(v1 / args.restarts) << "," << fmt_num(v2 / args.restarts) << "\n";
            }
        write_text_atomic(dir / "summary.csv", os.str());
        std::cout << "wrote " << (dir / "summary.csv").string() << "\n";
        return kExitOk;
    }

    if (args.study == "taboo") {
        // Static TR in {0, 0.1, ..., 1} vs adaptive [0, L] for L in {0.1, ..., 1}.
        struct Variant {
            std::string kind;
            double param;
        };
        std::vector<Variant> variants;
        for (int i = 0; i <= 10; ++i) variants.push_back({"static", i / 10.0});
        for (int i = 1; i <= 10; ++i) variants.push_back({"adaptive", i / 10.0});

        struct Job {
            int size;
            Variant variant;
            int restart;
            uint64_t seed;
        };
        std::vector<Job> jobs_list;
        for (int size : sizes)
            for (const auto& v : variants)
                for (int r = 0; r < args.restarts; ++r)
                    jobs_list.push_back({size, v, r, args.seeds + (uint64_t)jobs_list.size()});

        std::map<int, Instance> instances;
        for (int size : sizes) instances.emplace(size, instance_for(size));

        const SolveMode mode = parse_mode("segment:rearrange");
        std::vector<std::string> rows(jobs_list.size());
        parallel_for((int)jobs_list.size(), jobs, [&](int i) {
            const Job& job = jobs_list[i];
            RunParams params;
            params.seed = job.seed;
            params.max_iter = args.iters;
            params.ns = args.ns;
            params.na = args.na;
            params.lambda = args.lambda;
            if (job.variant.kind == "static")
                params.taboo.tr_static = job.variant.param;
            else
                params.taboo = {0.0, job.variant.param, std::nullopt};
            auto t0 = std::chrono::steady_clock::now();
            RunResult res = run(instances.at(job.size), mode, params);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            std::ostringstream os;
            os << family_name(family) << "," << job.size << "," << job.variant.kind << ","
               << fmt_num(job.variant.param) << "," << job.restart << "," << job.seed << ","
               << fmt_num(final_hv_of(res) * 1000.0) << "," << ms << "\n";
            rows[i] = os.str();
        });
        std::ostringstream os;
        os << "family,size,variant,param,restart,seed,hv_x1000,runtime_ms\n";
        for (const auto& r : rows) os << r;
        write_text_atomic(dir / "taboo_study.csv", os.str());
        std::cout << "wrote " << (dir / "taboo_study.csv").string() << "\n";
        return kExitOk;
    }

    if (args.study == "lambda") {
        struct Job {
            int size;
            double lambda;
            int restart;
            uint64_t seed;
        };
        std::vector<Job> jobs_list;
        for (int size : sizes)
            for (int l = 0; l <= 10; ++l)
                for (int r = 0; r < args.restarts; ++r)
                    jobs_list.push_back(
                        {size, l / 10.0, r, args.seeds + (uint64_t)jobs_list.size()});

        std::map<int, Instance> instances;
        for (int size : sizes) instances.emplace(size, instance_for(size));

        const SolveMode mode = parse_mode("segment:rearrange");
        std::vector<std::string> rows(jobs_list.size());
        parallel_for((int)jobs_list.size(), jobs, [&](int i) {
            const Job& job = jobs_list[i];
            RunParams params;
            params.seed = job.seed;
            params.max_iter = args.iters;
            params.ns = args.ns;
            params.na = args.na;
            params.lambda = job.lambda;
            RunResult res = run(instances.at(job.size), mode, params);
            std::ostringstream os;
            const auto& last = res.trace.back();
            for (int op = 0; op < kNumDestroyOps; ++op)
                os << family_name(family) << "," << job.size << "," << fmt_num(job.lambda) << ","
                   << job.restart << "," << job.seed << ",destroy,"
                   << destroy_name((DestroyOp)op) << "," << fmt_num(last.destroy_weights[op])
                   << "\n";
            for (int op = 0; op < kNumRepairOps; ++op)
                os << family_name(family) << "," << job.size << "," << fmt_num(job.lambda) << ","
                   << job.restart << "," << job.seed << ",repair," << repair_name((RepairOp)op)
                   << "," << fmt_num(last.repair_weights[op]) << "\n";
            rows[i] = os.str();
        });
        std::ostringstream os;
        os << "family,size,lambda,restart,seed,op_family,operator,final_weight\n";
        for (const auto& r : rows) os << r;
        write_text_atomic(dir / "lambda_study.csv", os.str());
        std::cout << "wrote " << (dir / "lambda_study.csv").string() << "\n";
        return kExitOk;
    }

    std::cerr << "unknown --study '" << args.study << "'\n";
    return kExitUsage;
}

int cmd_hv(const std::string& front_path, const std::string& ref_text, long mc_samples,
           uint64_t seed) {
    auto front = load_front_csv(front_path);
    ObjectivePoint ref{1, 1};
    auto comma = ref_text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--ref must be 'f1,f2'");
    ref.f1 = std::stod(ref_text.substr(0, comma));
    ref.f2 = std::stod(ref_text.substr(comma + 1));

    double hso = hypervolume_hso(front, ref);
    std::cout << "hso_x1000=" << fmt_num(hso * 1000.0) << "\n";
    if (mc_samples > 0) {
        Rng rng(seed);
        auto est = hypervolume_mc(front, ref, mc_samples, rng);
        std::cout << "mc_x1000=" << fmt_num(est.value * 1000.0)
                  << " stderr_x1000=" << fmt_num(est.std_error * 1000.0) << "\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path,
                 const std::string& mode_text) {
    Instance inst = load_instance(instance_path);
    SolveMode mode = parse_mode(mode_text);
    ScheduleSet set = load_schedules(schedule_path);
    bool all_ok = true;
    for (size_t i = 0; i < set.schedules.size(); ++i) {
        auto violations = validate_schedule(inst, set.schedules[i], mode);
        if (violations.empty()) continue;
        all_ok = false;
        for (const auto& v : violations)
            std::cout << "schedule " << i << ": " << violation_name(v.kind)
                      << (v.task.empty() ? "" : " task=" + v.task)
                      << (v.datum.empty() ? "" : " datum=" + v.datum) << " " << v.detail << "\n";
    }
    std::cout << (all_ok ? "feasible" : "infeasible") << " (" << set.schedules.size()
              << " schedules)\n";
    return all_ok ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const std::string& instance_path, const std::string& mode_text, double grid,
               const std::string& out) {
    Instance inst = load_instance(instance_path);
    auto front = exact_front(inst, parse_mode(mode_text), grid);
    write_front_csv(front, out);
    std::cout << "wrote " << out << " (" << front.size() << " points)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"D-SIDSP downlink scheduling suite"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
    std::string g_family = "ND", g_out = "instance.json";
    int g_n = 50;
    uint64_t g_seed = 1;
    double g_target = 0;
    gen->add_option("--family", g_family, "ND, PD or MD")->required();
    gen->add_option("--n", g_n, "number of original image data")->required();
    gen->add_option("--seed", g_seed, "generator seed")->required();
    gen->add_option("--out", g_out, "output path");
    gen->add_option("--window-target", g_target, "seconds of window time per satellite");

    // solve
    auto* solve = app.add_subcommand("solve", "Run a solver on an instance");
    SolveArgs s_args;
    solve->add_option("--instance", s_args.instance_path)->required();
    solve->add_option("--mode", s_args.mode, "segment|unsegment:rearrange|fofd");
    solve->add_option("--seed", s_args.seed)->required();
    solve->add_option("--iters", s_args.iters);
    solve->add_option("--algo", s_args.algo)->check(CLI::IsMember({"alns-nsga2", "crem"}));
    solve->add_option("--out", s_args.out_dir);
    solve->add_option("--ns", s_args.ns);
    solve->add_option("--na", s_args.na);
    solve->add_option("--lambda", s_args.lambda);

    // bench
    auto* bench = app.add_subcommand("bench", "Run the experiment harness");
    BenchArgs b_args;
    bench->add_option("--family", b_args.family)->required();
    bench->add_option("--sizes", b_args.sizes)->required();
    bench->add_option("--modes", b_args.modes);
    bench->add_option("--restarts", b_args.restarts);
    bench->add_option("--seeds", b_args.seeds, "base seed; run seeds are base + run index");
    bench->add_option("--iters", b_args.iters);
    bench->add_option("--ns", b_args.ns);
    bench->add_option("--na", b_args.na);
    bench->add_option("--lambda", b_args.lambda);
    bench->add_option("--jobs", b_args.jobs, "parallel runs (default: SIDSP_JOBS or cores)");
    bench->add_option("--study", b_args.study)->check(CLI::IsMember({"taboo", "lambda"}));
    bench->add_option("--out", b_args.out_dir);

    // hv
    auto* hv = app.add_subcommand("hv", "Hypervolume of a front CSV");
    std::string h_front, h_ref = "1,1";
    long h_mc = 0;
    uint64_t h_seed = 1;
    hv->add_option("--front", h_front)->required();
    hv->add_option("--ref", h_ref);
    hv->add_option("--mc", h_mc, "Monte-Carlo cross-check sample count");
    hv->add_option("--seed", h_seed);

    // validate
    auto* val = app.add_subcommand("validate", "Check a schedule dump against an instance");
    std::string v_instance, v_schedule, v_mode = "segment:rearrange";
    val->add_option("--instance", v_instance)->required();
    val->add_option("--schedule", v_schedule)->required();
    val->add_option("--mode", v_mode);

    // oracle (fixture regeneration helper, not advertised)
    auto* orc = app.add_subcommand("oracle", "Exact front of a tiny instance");
    orc->group("");
    std::string o_instance, o_mode = "segment:rearrange", o_out = "oracle_front.csv";
    double o_grid = 10;
    orc->add_option("--instance", o_instance)->required();
    orc->add_option("--mode", o_mode);
    orc->add_option("--grid", o_grid);
    orc->add_option("--out", o_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(g_family, g_n, g_seed, g_out,
                           g_target > 0 ? std::optional<double>(g_target) : std::nullopt);
        if (solve->parsed()) return cmd_solve(s_args);
        if (bench->parsed()) return cmd_bench(b_args);
        if (hv->parsed()) return cmd_hv(h_front, h_ref, h_mc, h_seed);
        if (val->parsed()) return cmd_validate(v_instance, v_schedule, v_mode);
        if (orc->parsed()) return cmd_oracle(o_instance, o_mode, o_grid, o_out);
    } catch (const sidsp::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const sidsp::malformed_error& e) {
        std::cerr << "malformed file: " << e.what() << "\n";
        return kExitIo;
    } catch (const sidsp::schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitIo;
    } catch (const sidsp::structural_error& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
