#include "mrr/driver.h"

#include <fmt/format.h>

#include <map>

namespace mrr
{

std::vector<std::string> validate_solution(const Instance& inst, const std::vector<Route>& routes,
                                           const ValidateOptions& options)
{
    std::vector<std::string> v;
    const SpaceTime st(inst.grid, inst.horizon);
    RouteCheckOptions route_options;
    route_options.check_windows = options.check_windows;

    for (std::size_t i = 0; i < routes.size(); ++i)
        for (const auto& msg : check_route(inst, st, routes[i], route_options))
            v.push_back(fmt::format("route {}: {}", i, msg));

    std::vector<int> served(inst.num_items(), 0);
    std::vector<int> active(inst.horizon + 2, 0);
    std::vector<int> extant_use(inst.num_extant(), 0);
    std::map<SpaceTimeNode, std::size_t> occupied;
    std::map<ConflictKey, std::size_t> crossed;
    for (std::size_t i = 0; i < routes.size(); ++i)
    {
        const auto& r = routes[i];
        for (const auto& p : r.pickups)
            if (p.item >= 0 && p.item < inst.num_items())
                ++served[p.item];
        if (r.source.is_extant() && r.source.robot >= 0 && r.source.robot < inst.num_extant())
            ++extant_use[r.source.robot];
        for (const auto& n : r.path)
        {
            if (n.t >= 1 && n.t <= inst.horizon)
                ++active[n.t];
            const auto [it, fresh] = occupied.emplace(n, i);
            if (!fresh && it->second != i)
                v.push_back(fmt::format("vertex conflict at ({},{},{}) between routes {} and {}", n.cell.x, n.cell.y,
                                        n.t, it->second, i));
        }
        for (std::size_t k = 1; k < r.path.size(); ++k)
        {
            if (r.path[k].cell == r.path[k - 1].cell || !st.is_step(r.path[k - 1], r.path[k]))
                continue;
            const auto key = conflict_key({r.path[k - 1], r.path[k], Move::North});
            const auto [it, fresh] = crossed.emplace(key, i);
            if (!fresh && it->second != i)
                v.push_back(fmt::format("swap conflict on ({},{})-({},{}) at t={} between routes {} and {}", key.lo.x,
                                        key.lo.y, key.hi.x, key.hi.y, key.t, it->second, i));
        }
    }
    for (int d = 0; d < inst.num_items(); ++d)
        if (served[d] > 1)
            v.push_back(fmt::format("item {} served {} times", inst.items[d].id, served[d]));
    for (int t = 1; t <= inst.horizon; ++t)
        if (active[t] > inst.fleet_size)
            v.push_back(fmt::format("fleet exceeded at t={}: {} active > {}", t, active[t], inst.fleet_size));
    if (options.require_extant)
        for (int r = 0; r < inst.num_extant(); ++r)
            if (extant_use[r] != 1)
                v.push_back(fmt::format("extant robot {} used {} times", inst.extant[r].id, extant_use[r]));
    return v;
}

}
