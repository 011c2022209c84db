#include "mrr/baseline.h"
#include "mrr/bench.h"
#include "mrr/driver.h"
#include "mrr/solution_io.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mrr;

namespace
{

// Input problems (missing files, bad schemas) exit with the usage code.
struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

Instance read_instance(const std::string& path)
{
    try
    {
        return instance_from_json(read_file(path));
    }
    catch (const FormatError& e)
    {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

void add_gen_options(CLI::App* cmd, GenParams& p, std::string& map_path)
{
    cmd->add_option("--map", map_path, "MovingAI map file (overrides width/height/obstacles)");
    cmd->add_option("--width", p.width, "grid width")->capture_default_str();
    cmd->add_option("--height", p.height, "grid height")->capture_default_str();
    cmd->add_option("--obstacles", p.obstacles, "random obstacle count")->capture_default_str();
    cmd->add_option("--items", p.num_items, "number of items")->capture_default_str();
    cmd->add_option("--fleet", p.fleet_size, "fleet size N")->capture_default_str();
    cmd->add_option("--extant", p.num_extant, "extant robots")->capture_default_str();
    cmd->add_option("--horizon", p.horizon, "time steps T")->capture_default_str();
    cmd->add_option("--max-window", p.max_window, "largest pickup window width")->capture_default_str();
    cmd->add_option("--capacity", p.capacity, "robot capacity")->capture_default_str();
    cmd->add_option("--reward", p.reward, "item reward")->capture_default_str();
    cmd->add_option("--theta1", p.theta1, "per-step cost (<= 0)")->capture_default_str();
    cmd->add_option("--theta2", p.theta2, "per-move cost (<= 0)")->capture_default_str();
    cmd->add_option("--extant-capacity", p.extant_capacity, "remaining capacity of extant robots (-1: full)")
        ->capture_default_str();
}

void finish_gen_params(GenParams& p, const std::string& map_path)
{
    if (!map_path.empty())
    {
        try
        {
            p.map = parse_map(read_file(map_path));
        }
        catch (const ParseError& e)
        {
            throw InputError(fmt::format("{}: {}", map_path, e.what()));
        }
    }
}

void add_solver_options(CLI::App* cmd, SolverConfig& c, std::string& pricing)
{
    cmd->add_option("--pricing", pricing, "pricing mode")
        ->check(CLI::IsMember({"exact", "heuristic", "hybrid"}))
        ->capture_default_str();
    cmd->add_option("--columns-per-iter", c.columns, "columns returned per pricing call")->capture_default_str();
    cmd->add_option("--orderings", c.orderings, "random orderings per heuristic call")->capture_default_str();
    cmd->add_flag("--doi,!--no-doi", c.doi, "dual optimal inequalities (surplus columns)");
    cmd->add_option("--dual-refresh", c.dual_refresh_period, "full dual refresh period")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--max-iters", c.max_iterations, "CG iteration cap (0: 10*items+50)")->capture_default_str();
    cmd->add_option("--threads", c.threads, "pricing worker threads")->capture_default_str();
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Multi-robot routing by column generation"};
    app.require_subcommand(1);

    // gen
    GenParams gen;
    std::string gen_map;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* cmd_gen = app.add_subcommand("gen", "generate a random instance");
    add_gen_options(cmd_gen, gen, gen_map);
    cmd_gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    cmd_gen->add_option("-o,--output", gen_out, "instance JSON (stdout if omitted)");

    // solve
    SolverConfig solve_cfg;
    std::string solve_pricing = "hybrid";
    std::string solve_inst, solve_out, solve_metrics, solve_log;
    bool solve_timings = false;
    auto* cmd_solve = app.add_subcommand("solve", "solve an instance");
    cmd_solve->add_option("instance", solve_inst, "instance JSON")->required();
    add_solver_options(cmd_solve, solve_cfg, solve_pricing);
    cmd_solve->add_option("-o,--output", solve_out, "solution JSON (stdout if omitted)");
    cmd_solve->add_option("--metrics", solve_metrics, "metrics CSV");
    cmd_solve->add_option("--log", solve_log, "per-iteration CSV");
    cmd_solve->add_flag("--timings", solve_timings, "include wall-clock times in the solution JSON");

    // validate
    std::string val_inst, val_sol;
    bool val_no_windows = false;
    auto* cmd_validate = app.add_subcommand("validate", "check a solution; exit 1 on violations");
    cmd_validate->add_option("instance", val_inst, "instance JSON")->required();
    cmd_validate->add_option("solution", val_sol, "solution JSON")->required();
    cmd_validate->add_flag("--no-windows", val_no_windows, "skip time-window checks");

    // compare
    SolverConfig cmp_cfg;
    std::string cmp_pricing = "hybrid";
    std::vector<std::string> cmp_instances;
    GenParams cmp_gen;
    std::string cmp_map, cmp_out;
    int cmp_count = 25;
    std::uint64_t cmp_seed_base = 1;
    auto* cmd_compare = app.add_subcommand("compare", "full CG versus the decoupled baseline");
    cmd_compare->add_option("instances", cmp_instances, "instance JSON files (generated when omitted)");
    add_solver_options(cmd_compare, cmp_cfg, cmp_pricing);
    add_gen_options(cmd_compare, cmp_gen, cmp_map);
    cmd_compare->add_option("--count", cmp_count, "generated instances")->capture_default_str();
    cmd_compare->add_option("--seed-base", cmp_seed_base, "first generator seed")->capture_default_str();
    cmd_compare->add_option("-o,--output", cmp_out, "comparison CSV (stdout if omitted)");

    // bench
    BenchSpec bench;
    bench.config.columns = 25;
    std::string bench_pricing = "hybrid";
    std::string bench_map, bench_out, bench_raw;
    auto* cmd_bench = app.add_subcommand("bench", "exact versus heuristic pricing runtime");
    add_gen_options(cmd_bench, bench.base, bench_map);
    add_solver_options(cmd_bench, bench.config, bench_pricing);
    cmd_bench->add_option("--counts", bench.item_counts, "item counts")->delimiter(',')->capture_default_str();
    cmd_bench->add_option("--instances", bench.instances, "instances per count")->capture_default_str();
    cmd_bench->add_option("--seed-base", bench.seed_base, "seed base")->capture_default_str();
    cmd_bench->add_option("-o,--output", bench_out, "summary CSV (stdout if omitted)");
    cmd_bench->add_option("--runs", bench_raw, "per-instance CSV");

    // trace
    std::string tr_inst, tr_sol, tr_out;
    auto* cmd_trace = app.add_subcommand("trace", "export route events for plotting");
    cmd_trace->add_option("instance", tr_inst, "instance JSON")->required();
    cmd_trace->add_option("solution", tr_sol, "solution JSON")->required();
    cmd_trace->add_option("-o,--output", tr_out, "trace CSV (stdout if omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (*cmd_gen)
        {
            finish_gen_params(gen, gen_map);
            const auto inst = generate_instance(gen, gen_seed);
            write_output(gen_out, instance_to_json(inst));
            return 0;
        }
        if (*cmd_solve)
        {
            const auto inst = read_instance(solve_inst);
            solve_cfg.pricing = pricing_mode_from_string(solve_pricing);
            const auto [solution, report] = run_cg(inst, solve_cfg);
            SolutionJsonOptions opts;
            opts.include_timings = solve_timings;
            write_output(solve_out, solution_to_json(inst, solution, report, opts));
            if (!solve_metrics.empty())
                write_output(solve_metrics, metrics_csv_header() + metrics_csv_row(report));
            if (!solve_log.empty())
                write_output(solve_log, iteration_log_csv(report));
            const auto violations = validate_solution(inst, solution.routes);
            for (const auto& v : violations)
                std::cerr << "violation: " << v << "\n";
            if (!report.stranded.empty())
                std::cerr << fmt::format("stranded extant robots: {}\n", report.stranded.size());
            return violations.empty() && report.stranded.empty() ? 0 : 1;
        }
        if (*cmd_validate)
        {
            const auto inst = read_instance(val_inst);
            std::vector<Route> routes;
            try
            {
                routes = routes_from_json(inst, read_file(val_sol));
            }
            catch (const FormatError& e)
            {
                throw InputError(fmt::format("{}: {}", val_sol, e.what()));
            }
            ValidateOptions opts;
            opts.check_windows = !val_no_windows;
            const auto violations = validate_solution(inst, routes, opts);
            for (const auto& v : violations)
                std::cout << v << "\n";
            if (violations.empty())
                std::cout << "ok\n";
            return violations.empty() ? 0 : 1;
        }
        if (*cmd_compare)
        {
            cmp_cfg.pricing = pricing_mode_from_string(cmp_pricing);
            finish_gen_params(cmp_gen, cmp_map);
            std::vector<ComparisonRow> rows;
            if (!cmp_instances.empty())
            {
                for (std::size_t k = 0; k < cmp_instances.size(); ++k)
                    rows.push_back(compare(read_instance(cmp_instances[k]), cmp_cfg, k));
            }
            else
            {
                for (int k = 0; k < cmp_count; ++k)
                {
                    const std::uint64_t seed = cmp_seed_base + k;
                    SolverConfig cfg = cmp_cfg;
                    cfg.seed = seed;
                    rows.push_back(compare(generate_instance(cmp_gen, seed), cfg, seed));
                }
            }
            write_output(cmp_out, comparison_csv(rows));
            return 0;
        }
        if (*cmd_bench)
        {
            finish_gen_params(bench.base, bench_map);
            std::vector<BenchRun> runs;
            const auto rows = run_bench(bench, &runs, [](const BenchRun& r) {
                std::cerr << fmt::format("items={} seed={} exact={:.0f}ms heuristic={:.0f}ms\n", r.items, r.seed,
                                         r.exact_ms, r.heuristic_ms);
            });
            write_output(bench_out, bench_csv(rows));
            if (!bench_raw.empty())
                write_output(bench_raw, bench_runs_csv(runs));
            return 0;
        }
        if (*cmd_trace)
        {
            const auto inst = read_instance(tr_inst);
            std::vector<Route> routes;
            try
            {
                routes = routes_from_json(inst, read_file(tr_sol));
            }
            catch (const FormatError& e)
            {
                throw InputError(fmt::format("{}: {}", tr_sol, e.what()));
            }
            write_output(tr_out, route_trace_csv(routes));
            return 0;
        }
    }
    catch (const InputError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
