#include "mrr/route.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace mrr
{

int Route::moves() const
{
    int n = 0;
    for (std::size_t i = 1; i < path.size(); ++i)
        n += path[i].cell != path[i - 1].cell;
    return n;
}

int Route::used_capacity(const Instance& inst) const
{
    int used = 0;
    for (const auto& p : pickups)
        used += inst.items[p.item].demand;
    return used;
}

double route_profit(const Instance& inst, const Route& route)
{
    double profit = 0.0;
    for (const auto& p : route.pickups)
        profit += inst.items[p.item].reward;
    profit += inst.theta1 * static_cast<double>(route.path.size());
    profit += inst.theta2 * route.moves();
    return profit;
}

std::vector<ConflictKey> route_conflicts(const Route& route)
{
    std::vector<ConflictKey> keys;
    for (std::size_t i = 1; i < route.path.size(); ++i)
        if (route.path[i].cell != route.path[i - 1].cell)
            keys.push_back(conflict_key({route.path[i - 1], route.path[i], Move::North}));
    return keys;
}

std::vector<std::string> check_route(const Instance& inst, const SpaceTime& st, const Route& route,
                                     const RouteCheckOptions& options)
{
    std::vector<std::string> v;
    if (route.path.empty())
    {
        v.push_back("empty path");
        return v;
    }
    const auto& first = route.path.front();
    const auto& last = route.path.back();
    int capacity = inst.capacity;
    if (route.source.is_extant())
    {
        if (route.source.robot < 0 || route.source.robot >= inst.num_extant())
        {
            v.push_back(fmt::format("unknown extant robot {}", route.source.robot));
            return v;
        }
        const auto& robot = inst.extant[route.source.robot];
        capacity = robot.remaining_capacity;
        if (first.cell != robot.start || first.t != 1)
            v.push_back(fmt::format("extant route must start at ({},{}) at t=1", robot.start.x, robot.start.y));
    }
    else if (first.cell != inst.launcher)
    {
        v.push_back("route must start at the launcher");
    }
    if (first.t < 1)
        v.push_back("route starts before t=1");
    if (last.cell != inst.launcher)
        v.push_back("route must end at the launcher");
    if (last.t > inst.horizon)
        v.push_back(fmt::format("route ends at t={} after the horizon", last.t));
    for (const auto& n : route.path)
        if (!inst.grid.passable(n.cell))
        {
            v.push_back(fmt::format("path visits blocked or outside cell ({},{})", n.cell.x, n.cell.y));
            break;
        }
    for (std::size_t i = 1; i < route.path.size(); ++i)
        if (!st.is_step(route.path[i - 1], route.path[i]))
        {
            v.push_back(fmt::format("invalid step at index {}", i));
            break;
        }

    std::set<int> seen;
    int used = 0;
    for (const auto& p : route.pickups)
    {
        if (p.item < 0 || p.item >= inst.num_items())
        {
            v.push_back(fmt::format("unknown item index {}", p.item));
            continue;
        }
        const auto& item = inst.items[p.item];
        if (!seen.insert(p.item).second)
            v.push_back(fmt::format("item {} picked up twice", item.id));
        used += item.demand;
        const int offset = p.t - first.t;
        if (offset < 0 || offset >= static_cast<int>(route.path.size()) || route.path[offset].cell != item.cell)
            v.push_back(fmt::format("item {}: route is not at the item cell at t={}", item.id, p.t));
        if (options.check_windows && (p.t < item.window_lo || p.t > item.window_hi))
            v.push_back(fmt::format("window violation: item {} picked at t={} outside [{},{}]", item.id, p.t,
                                    item.window_lo, item.window_hi));
    }
    if (used > capacity)
        v.push_back(fmt::format("capacity exceeded: {} > {}", used, capacity));
    if (options.check_profit && std::abs(route.profit - route_profit(inst, route)) > 1e-9)
        v.push_back(fmt::format("profit {} does not match recomputed {}", route.profit, route_profit(inst, route)));
    return v;
}

double reduced_cost([[maybe_unused]] const Instance& inst, const Route& route, const DualSolution& duals)
{
    double value = route.profit;
    for (const auto& p : route.pickups)
        value -= duals.item[p.item];
    for (const auto& n : route.path)
        value -= duals.time_at(n.t) + duals.position_at(n);
    for (const auto& k : route_conflicts(route))
        value -= duals.conflict_at(k);
    if (route.source.is_extant())
        value -= duals.extant[route.source.robot];
    return value;
}

Route drop_pickups(const Instance& inst, Route route, const std::vector<int>& drop_items)
{
    std::erase_if(route.pickups, [&](const Pickup& p) {
        return std::find(drop_items.begin(), drop_items.end(), p.item) != drop_items.end();
    });
    route.profit = route_profit(inst, route);
    return route;
}

}
