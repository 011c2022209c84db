#include "mrr/instance.h"

#include <fmt/format.h>

#include <algorithm>
#include <random>

namespace mrr
{

namespace
{

int uniform_int(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Cell central_free_cell(const GridMap& grid)
{
    const Cell centre{grid.width() / 2, grid.height() / 2};
    Cell best{-1, -1};
    int best_dist = -1;
    for (int x = 0; x < grid.width(); ++x)
        for (int y = 0; y < grid.height(); ++y)
        {
            if (grid.is_blocked({x, y}))
                continue;
            const int d = std::abs(x - centre.x) + std::abs(y - centre.y);
            if (best_dist < 0 || d < best_dist)
            {
                best = {x, y};
                best_dist = d;
            }
        }
    if (best_dist < 0)
        throw std::invalid_argument("map has no free cell for the launcher");
    return best;
}

}

Instance generate_instance(const GenParams& params, std::uint64_t seed)
{
    if (params.num_items < 0 || params.num_extant < 0)
        throw std::invalid_argument("item and extant counts must be nonnegative");
    if (params.horizon < 1 || params.max_window < 1 || params.capacity < 1 || params.fleet_size < 1)
        throw std::invalid_argument("horizon, max_window, capacity and fleet_size must be positive");
    if (params.num_extant > params.fleet_size)
        throw std::invalid_argument("more extant robots than fleet size");
    if (params.demand_choices.empty())
        throw std::invalid_argument("demand_choices is empty");
    for (const auto c : params.demand_choices)
        if (c < 1 || c > params.capacity)
            throw std::invalid_argument(fmt::format("demand choice {} outside [1, capacity]", c));

    std::mt19937_64 rng(seed);
    Instance inst;
    inst.horizon = params.horizon;
    inst.fleet_size = params.fleet_size;
    inst.capacity = params.capacity;
    inst.theta1 = params.theta1;
    inst.theta2 = params.theta2;

    if (params.map)
    {
        inst.grid = *params.map;
        inst.launcher = central_free_cell(inst.grid);
    }
    else
    {
        const int area = params.width * params.height;
        if (params.width <= 0 || params.height <= 0)
            throw std::invalid_argument("grid dimensions must be positive");
        if (params.obstacles < 0 || params.obstacles >= area)
            throw std::invalid_argument(
                fmt::format("obstacle count {} exceeds grid area {}", params.obstacles, area));
        inst.grid = GridMap(params.width, params.height);
        std::vector<int> cells(area);
        for (int i = 0; i < area; ++i)
            cells[i] = i;
        std::shuffle(cells.begin(), cells.end(), rng);
        for (int i = 0; i < params.obstacles; ++i)
            inst.grid.set_blocked(inst.grid.cell(cells[i]), true);
        const int free_pick = uniform_int(rng, params.obstacles, area - 1);
        inst.launcher = inst.grid.cell(cells[free_pick]);
    }

    // Items and robots only go where the launcher can be reached.
    const auto dist = bfs_distances(inst.grid, inst.launcher);
    std::vector<int> candidates;
    for (int i = 0; i < inst.grid.num_cells(); ++i)
        if (dist[i] > 0)
            candidates.push_back(i);
    if (static_cast<int>(candidates.size()) < params.num_items)
        throw std::invalid_argument(fmt::format("{} items requested but only {} distinct reachable cells",
                                                params.num_items, candidates.size()));

    std::shuffle(candidates.begin(), candidates.end(), rng);
    const int max_width = std::min(params.max_window, params.horizon);
    for (int d = 0; d < params.num_items; ++d)
    {
        Item item;
        item.id = d;
        item.cell = inst.grid.cell(candidates[d]);
        item.reward = params.reward;
        item.demand = params.demand_choices[uniform_int(rng, 0, static_cast<int>(params.demand_choices.size()) - 1)];
        const int width = uniform_int(rng, 1, max_width);
        item.window_lo = uniform_int(rng, 1, params.horizon - width + 1);
        item.window_hi = item.window_lo + width - 1;
        inst.items.push_back(item);
    }

    std::vector<int> starts;
    for (const auto i : candidates)
        if (dist[i] <= params.horizon - 1)
            starts.push_back(i);
    std::sort(starts.begin(), starts.end());
    std::shuffle(starts.begin(), starts.end(), rng);
    if (static_cast<int>(starts.size()) < params.num_extant)
        throw std::invalid_argument("not enough cells within reach of the launcher for extant robots");
    for (int r = 0; r < params.num_extant; ++r)
    {
        ExtantRobot robot;
        robot.id = r;
        robot.start = inst.grid.cell(starts[r]);
        robot.remaining_capacity = params.extant_capacity < 0 ? params.capacity
                                                              : std::min(params.extant_capacity, params.capacity);
        inst.extant.push_back(robot);
    }
    return inst;
}

}
