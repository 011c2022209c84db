#include "mrr/bench.h"

#include <fmt/format.h>

namespace mrr
{

std::uint64_t bench_seed(const BenchSpec& spec, int items, int k)
{
    return spec.seed_base + 1000ULL * static_cast<std::uint64_t>(items) + static_cast<std::uint64_t>(k);
}

std::vector<BenchRow> run_bench(const BenchSpec& spec, std::vector<BenchRun>* runs,
                                const std::function<void(const BenchRun&)>& progress)
{
    std::vector<BenchRow> rows;
    for (const int count : spec.item_counts)
    {
        BenchRow row;
        row.items = count;
        row.instances = spec.instances;
        for (int k = 0; k < spec.instances; ++k)
        {
            GenParams params = spec.base;
            params.num_items = count;
            BenchRun run;
            run.items = count;
            run.seed = bench_seed(spec, count, k);
            const Instance inst = generate_instance(params, run.seed);

            SolverConfig config = spec.config;
            config.seed = run.seed;
            config.pricing = PricingMode::Exact;
            const auto exact = run_cg(inst, config);
            config.pricing = PricingMode::Heuristic;
            const auto heuristic = run_cg(inst, config);

            run.exact_ms = exact.second.total_ms;
            run.heuristic_ms = heuristic.second.total_ms;
            run.exact_objective = exact.first.objective;
            run.heuristic_objective = heuristic.first.objective;
            run.exact_lp = exact.second.lp_objective;
            run.heuristic_lp = heuristic.second.lp_objective;
            row.exact_mean_ms += run.exact_ms / spec.instances;
            row.heuristic_mean_ms += run.heuristic_ms / spec.instances;
            if (runs)
                runs->push_back(run);
            if (progress)
                progress(run);
        }
        row.speedup = row.heuristic_mean_ms > 0.0 ? row.exact_mean_ms / row.heuristic_mean_ms : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::string out = "items,instances,exact_mean_ms,heuristic_mean_ms,speedup\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{:.3f},{:.3f},{:.4f}\n", r.items, r.instances, r.exact_mean_ms, r.heuristic_mean_ms,
                           r.speedup);
    return out;
}

std::string bench_runs_csv(const std::vector<BenchRun>& runs)
{
    std::string out = "items,seed,exact_ms,heuristic_ms,exact_obj,heuristic_obj,exact_lp,heuristic_lp\n";
    for (const auto& r : runs)
        out += fmt::format("{},{},{:.3f},{:.3f},{},{},{},{}\n", r.items, r.seed, r.exact_ms, r.heuristic_ms,
                           r.exact_objective, r.heuristic_objective, r.exact_lp, r.heuristic_lp);
    return out;
}

}
