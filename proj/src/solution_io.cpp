#include "mrr/solution_io.h"

#include <fmt/format.h>
#include <json.hpp>

namespace mrr
{

using nlohmann::json;

std::string solution_to_json(const Instance& inst, const Solution& solution, const SolveReport& report,
                             const SolutionJsonOptions& options)
{
    json routes = json::array();
    for (const auto& r : solution.routes)
    {
        json source;
        if (r.source.is_extant())
        {
            source["type"] = "extant";
            source["robot_id"] = inst.extant[r.source.robot].id;
        }
        else
        {
            source["type"] = "launcher";
            source["launcher_entry_t"] = r.start_time();
        }
        json path = json::array();
        for (const auto& n : r.path)
            path.push_back({n.cell.x, n.cell.y, n.t});
        json pickups = json::array();
        for (const auto& p : r.pickups)
            pickups.push_back({{"item", inst.items[p.item].id}, {"t", p.t}});
        routes.push_back({{"source", source}, {"path", path}, {"pickups", pickups}, {"profit", r.profit}});
    }
    json rep;
    rep["lp_objective"] = report.lp_objective;
    rep["ilp_objective"] = report.ilp_objective;
    rep["relative_gap"] = report.relative_gap;
    rep["iterations"] = report.iterations;
    rep["columns_generated"] = report.columns_generated;
    rep["termination"] = report.termination;
    rep["certified"] = report.certified;
    rep["stranded_extant"] = report.stranded;
    if (options.include_timings)
        rep["time_ms"] = {{"pricing", report.pricing_ms},
                          {"rmp", report.rmp_ms},
                          {"ilp", report.ilp_ms},
                          {"total", report.total_ms}};
    json doc;
    doc["objective"] = solution.objective;
    doc["routes"] = routes;
    doc["report"] = rep;
    return doc.dump(2) + "\n";
}

std::vector<Route> routes_from_json(const Instance& inst, std::string_view text)
{
    try
    {
        const auto doc = json::parse(text);
        std::vector<Route> out;
        for (const auto& jr : doc.at("routes"))
        {
            Route r;
            const auto& src = jr.at("source");
            const auto type = src.at("type").get<std::string>();
            if (type == "extant")
            {
                const int idx = inst.extant_index(src.at("robot_id").get<int>());
                if (idx < 0)
                    throw FormatError("unknown extant robot id");
                r.source = RouteSource::extant(idx);
            }
            else if (type == "launcher")
            {
                r.source = RouteSource::launcher();
            }
            else
            {
                throw FormatError("unknown route source type: " + type);
            }
            for (const auto& n : jr.at("path"))
                r.path.push_back({{n.at(0).get<int>(), n.at(1).get<int>()}, n.at(2).get<int>()});
            for (const auto& p : jr.at("pickups"))
            {
                const int idx = inst.item_index(p.at("item").get<int>());
                if (idx < 0)
                    throw FormatError("unknown item id");
                r.pickups.push_back({idx, p.at("t").get<int>()});
            }
            r.profit = jr.at("profit").get<double>();
            out.push_back(std::move(r));
        }
        return out;
    }
    catch (const json::exception& e)
    {
        throw FormatError(std::string("solution JSON: ") + e.what());
    }
}

std::string metrics_csv_header()
{
    return "iterations,lp_objective,ilp_objective,relative_gap,pricing_time_ms,rmp_time_ms,ilp_time_ms,total_time_ms,"
           "columns,termination\n";
}

std::string metrics_csv_row(const SolveReport& r)
{
    return fmt::format("{},{},{},{},{:.3f},{:.3f},{:.3f},{:.3f},{},{}\n", r.iterations, r.lp_objective,
                       r.ilp_objective, r.relative_gap, r.pricing_ms, r.rmp_ms, r.ilp_ms, r.total_ms,
                       r.columns_generated, r.termination);
}

std::string iteration_log_csv(const SolveReport& report)
{
    std::string out = "iteration,lp_objective,columns_added,full_refresh,exact,best_reduced_cost,pricing_loops\n";
    for (const auto& l : report.log)
        out += fmt::format("{},{},{},{},{},{},{}\n", l.iteration, l.lp_objective, l.columns_added,
                           l.full_refresh ? 1 : 0, l.exact ? 1 : 0, l.best_reduced_cost, l.pricing_loops);
    return out;
}

std::string route_trace_csv(const std::vector<Route>& routes)
{
    std::string out = "t,robot,x,y,event\n";
    for (std::size_t i = 0; i < routes.size(); ++i)
    {
        const auto& r = routes[i];
        std::size_t next_pickup = 0;
        for (std::size_t k = 0; k < r.path.size(); ++k)
        {
            const auto& n = r.path[k];
            auto row = [&](const char* event) { out += fmt::format("{},{},{},{},{}\n", n.t, i, n.cell.x, n.cell.y, event); };
            if (k == 0)
                row("enter");
            else
                row(n.cell == r.path[k - 1].cell ? "wait" : "move");
            while (next_pickup < r.pickups.size() && r.pickups[next_pickup].t == n.t)
            {
                row("pickup");
                ++next_pickup;
            }
            if (k + 1 == r.path.size())
                row("exit");
        }
    }
    return out;
}

}
