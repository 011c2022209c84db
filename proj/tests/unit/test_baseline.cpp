#include "mrr/baseline.h"
#include "mrr/bench.h"

#include <doctest.h>

#include <sstream>

using namespace mrr;

namespace
{

// 7x3 strip: row y = 1 is a corridor; `pocket` opens (3,0) as a passing bay.
Instance strip(bool pocket)
{
    std::vector<Cell> blocked;
    for (int x = 0; x < 7; ++x)
    {
        if (!(pocket && x == 3))
            blocked.push_back({x, 0});
        blocked.push_back({x, 2});
    }
    Instance inst;
    inst.grid = GridMap(7, 3, blocked);
    inst.horizon = 16;
    inst.launcher = {0, 1};
    inst.fleet_size = 2;
    inst.capacity = 2;
    inst.items = {{0, {6, 1}, 60, 1, 1, 16}, {1, {4, 1}, 30, 1, 1, 16}};
    inst.extant = {{9, {5, 1}, 2}};
    return inst;
}

Route line(const Instance& inst, RouteSource src, int t0, const std::vector<int>& xs, const std::vector<Pickup>& p)
{
    Route r;
    r.source = src;
    for (std::size_t k = 0; k < xs.size(); ++k)
        r.path.push_back({{xs[k], 1}, t0 + static_cast<int>(k)});
    r.pickups = p;
    r.profit = route_profit(inst, r);
    return r;
}

}

TEST_CASE("single robot plan is kept verbatim")
{
    auto inst = strip(false);
    inst.extant.clear();
    const auto a = line(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1, 0}, {{0, 7}});
    const auto out = prioritized_replan(inst, {a});
    REQUIRE(out.routes.size() == 1);
    CHECK(out.routes[0] == a);
    CHECK(out.dropped.empty());
}

TEST_CASE("opposite traffic in a corridor uses the passing bay")
{
    const auto inst = strip(true);
    const auto a = line(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1, 0}, {{0, 7}});
    const auto b = line(inst, RouteSource::extant(0), 1, {5, 4, 3, 2, 1, 0}, {{1, 2}});
    CHECK_FALSE(validate_solution(inst, {a, b}).empty());
    const auto out = prioritized_replan(inst, {a, b});
    REQUIRE(out.routes.size() == 2);
    CHECK(out.dropped.empty());
    CHECK(out.routes[0] == a);
    const auto& moved = out.routes[1];
    CHECK(moved.source == b.source);
    CHECK(moved.pickups.size() == 1);
    CHECK(moved.end_time() > b.end_time());
    CHECK(validate_solution(inst, out.routes).empty());
}

TEST_CASE("a robot with no way around is dropped")
{
    const auto inst = strip(false);
    const auto a = line(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1, 0}, {{0, 7}});
    const auto b = line(inst, RouteSource::extant(0), 1, {5, 4, 3, 2, 1, 0}, {{1, 2}});
    const auto out = prioritized_replan(inst, {a, b});
    CHECK(out.dropped == std::vector<int>{1});
    REQUIRE(out.routes.size() == 1);
    CHECK(out.routes[0] == a);
    ValidateOptions opts;
    opts.require_extant = false;
    CHECK(validate_solution(inst, out.routes, opts).empty());
}

TEST_CASE("a conflicting launcher route is replanned")
{
    auto inst = strip(false);
    inst.extant.clear();
    inst.items[1].window_hi = 16;
    const auto a = line(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1, 0}, {{0, 7}});
    const auto b = line(inst, RouteSource::launcher(), 2, {0, 1, 2, 3, 4, 3, 2, 1, 0}, {{1, 6}});
    inst.horizon = 30;
    const auto out = prioritized_replan(inst, {a, b});
    REQUIRE(out.routes.size() == 2);
    CHECK(out.routes[1].pickups.size() == 1);
    ValidateOptions opts;
    opts.check_windows = false;
    CHECK(validate_solution(inst, out.routes, opts).empty());
}

TEST_CASE("relaxation matches full CG with one robot")
{
    GenParams p;
    p.width = 8;
    p.height = 8;
    p.obstacles = 6;
    p.num_items = 5;
    p.fleet_size = 1;
    p.num_extant = 0;
    p.horizon = 30;
    const auto inst = generate_instance(p, 3);
    const auto full = run_cg(inst, {});
    const auto relaxed = run_cg_no_collisions(inst, {});
    CHECK(full.second.lp_objective == doctest::Approx(relaxed.second.lp_objective));
    const auto row = compare(inst, {}, 3);
    CHECK(row.difference == doctest::Approx(0.0));
    CHECK(row.dropped == 0);
}

TEST_CASE("full CG is never worse than the baseline")
{
    GenParams p;
    p.width = 9;
    p.height = 9;
    p.obstacles = 20;
    p.num_items = 7;
    p.fleet_size = 4;
    p.num_extant = 2;
    p.horizon = 30;
    p.max_window = 10;
    std::vector<ComparisonRow> rows;
    for (std::uint64_t s = 1; s <= 4; ++s)
    {
        SolverConfig cfg;
        cfg.seed = s;
        rows.push_back(compare(generate_instance(p, s), cfg, s));
        CHECK(rows.back().cg_objective >= rows.back().baseline_objective - 1e-6);
    }
    const auto csv = comparison_csv(rows);
    std::istringstream in(csv);
    std::string header, l;
    std::getline(in, header);
    CHECK(header == "seed,cg_obj,baseline_obj,diff,rel_diff_pct,dropped");
    int lines = 0;
    std::string last;
    std::string before_last;
    while (std::getline(in, l))
    {
        ++lines;
        before_last = last;
        last = l;
    }
    CHECK(lines == 6);
    CHECK(before_last.rfind("mean,", 0) == 0);
    CHECK(last.rfind("median,", 0) == 0);
}

TEST_CASE("bench plumbing")
{
    BenchSpec spec;
    spec.item_counts = {3, 4};
    spec.instances = 2;
    spec.base.width = 7;
    spec.base.height = 7;
    spec.base.obstacles = 4;
    spec.base.horizon = 20;
    spec.base.max_window = 6;
    spec.config.columns = 10;
    CHECK(bench_seed(spec, 20, 3) == 1 + 20000 + 3);
    std::vector<BenchRun> runs;
    const auto rows = run_bench(spec, &runs);
    REQUIRE(rows.size() == 2);
    CHECK(runs.size() == 4);
    for (const auto& r : runs)
        CHECK(r.exact_lp == doctest::Approx(r.heuristic_lp).epsilon(1e-7));
    CHECK(rows[0].items == 3);
    CHECK(rows[0].speedup > 0.0);
    CHECK(bench_csv(rows).rfind("items,", 0) == 0);
    CHECK(bench_runs_csv(runs).find('\n') != std::string::npos);
}
