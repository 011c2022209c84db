#include "mrr/driver.h"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrr
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}

Solution make_solution(const Instance& inst, std::vector<Route> routes)
{
    Solution s;
    s.routes = std::move(routes);
    s.item_route.assign(inst.num_items(), -1);
    s.active.assign(inst.horizon, 0);
    for (std::size_t i = 0; i < s.routes.size(); ++i)
    {
        s.objective += s.routes[i].profit;
        for (const auto& p : s.routes[i].pickups)
            s.item_route[p.item] = static_cast<int>(i);
        for (const auto& n : s.routes[i].path)
            if (n.t >= 1 && n.t <= inst.horizon)
                ++s.active[n.t - 1];
    }
    return s;
}

double lp_certificate(double lp_objective, double best_reduced_cost, double tol)
{
    if (best_reduced_cost > tol)
        throw std::logic_error(
            fmt::format("lp_certificate: reduced cost {} exceeds tolerance {}", best_reduced_cost, tol));
    return lp_objective;
}

std::pair<Solution, SolveReport> run_cg(const Instance& inst, const SolverConfig& config)
{
    if (const auto v = validate_instance(inst); !v.empty())
        throw std::invalid_argument("invalid instance: " + v.front());
    if (config.dual_refresh_period < 1 || config.tol <= 0.0 || config.columns < 1 || config.orderings < 1)
        throw std::invalid_argument("invalid solver configuration");

    const auto start = Clock::now();
    SolveReport report;
    const SpaceTime st(inst.grid, inst.horizon);
    RmpOptions rmp_options;
    rmp_options.doi = config.doi;
    rmp_options.collision_rows = config.collision_rows;
    RmpModel rmp(inst, st, rmp_options);

    PricingConfig pricing;
    pricing.mode = config.pricing;
    pricing.columns = config.columns;
    pricing.orderings = config.orderings;
    pricing.tol = config.tol;
    pricing.persist_buckets = config.persist_buckets;
    pricing.threads = config.threads;
    Pricer pricer(inst, st, pricing);
    std::mt19937_64 rng(config.seed);

    const int max_iterations = config.max_iterations > 0 ? config.max_iterations : 10 * inst.num_items() + 50;
    const PricingMode loop_mode = config.pricing;

    auto add_routes = [&](const PricingResult& res) {
        int added = 0;
        for (const auto& r : res.routes)
        {
            const auto a = rmp.add_column(r);
            if (a.status == AddStatus::Rejected)
                throw std::logic_error("pricing produced an invalid route: " + a.reason);
            added += a.status == AddStatus::Added;
        }
        report.columns_generated += added;
        return added;
    };
    auto timed_price = [&](const DualSolution& duals, PricingMode mode, bool refresh) {
        const auto t0 = Clock::now();
        if (refresh)
            pricer.refresh_paths(duals);
        auto res = pricer.price(duals, mode, rng);
        report.pricing_ms += ms_since(t0);
        return res;
    };

    double previous = -std::numeric_limits<double>::infinity();
    int since_refresh = config.dual_refresh_period;
    report.termination = "cap";
    while (report.iterations < max_iterations)
    {
        ++report.iterations;
        const auto t0 = Clock::now();
        const auto lp = rmp.solve_lp();
        report.rmp_ms += ms_since(t0);
        if (lp.objective < previous - 1e-7)
            throw std::logic_error(
                fmt::format("master LP objective decreased from {} to {}", previous, lp.objective));
        previous = lp.objective;
        report.lp_objective = lp.objective;
        report.item_duals = lp.duals.item;

        IterationLog log;
        log.iteration = report.iterations;
        log.lp_objective = lp.objective;
        bool full = since_refresh >= config.dual_refresh_period;
        auto res = timed_price(lp.duals, loop_mode, full);
        since_refresh = full ? 1 : since_refresh + 1;
        int added = add_routes(res);
        if (added == 0 && !full)
        {
            // Stale path profits found nothing: refresh every dual and retry.
            full = true;
            res = timed_price(lp.duals, loop_mode, true);
            since_refresh = 1;
            added = add_routes(res);
        }
        if (added == 0 && !res.certified_empty)
        {
            res = timed_price(lp.duals, PricingMode::Exact, false);
            added = add_routes(res);
        }
        log.full_refresh = full;
        log.exact = res.exact_final;
        log.columns_added = added;
        log.best_reduced_cost = res.reduced_costs.empty() ? 0.0 : res.reduced_costs.front();
        log.pricing_loops = static_cast<int>(res.trace.size());
        report.log.push_back(log);
        if (added == 0)
        {
            report.certified = res.certified_empty;
            report.lp_objective = lp_certificate(lp.objective, log.best_reduced_cost, config.tol);
            report.termination = "converged";
            break;
        }
    }
    if (report.termination == "cap")
    {
        const auto t0 = Clock::now();
        const auto lp = rmp.solve_lp();
        report.lp_objective = lp.objective;
        report.item_duals = lp.duals.item;
        report.rmp_ms += ms_since(t0);
    }

    const auto t_ilp = Clock::now();
    const auto ilp = rmp.solve_ilp();
    report.ilp_ms = ms_since(t_ilp);
    report.ilp_objective = ilp.objective;
    report.ilp_nodes = ilp.nodes;
    report.ilp_node_limit = ilp.node_limit_hit;

    std::vector<std::pair<int, Route>> chosen;
    for (const auto id : ilp.selected)
    {
        if (rmp.is_dummy(id))
            report.stranded.push_back(inst.extant[id].id);
        else
            chosen.emplace_back(id, rmp.route(id));
    }
    auto routes = repair_solution(inst, std::move(chosen));
    const double ub = report.lp_objective;
    report.relative_gap = std::abs(ub) < 1e-12 ? 0.0 : (ub - report.ilp_objective) / std::abs(ub);
    report.total_ms = ms_since(start);
    return {make_solution(inst, std::move(routes)), report};
}

}
