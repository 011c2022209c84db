#include "mrr/instance.h"

#include <fmt/format.h>

#include <deque>
#include <map>

namespace mrr
{

GridMap::GridMap(int width, int height, const std::vector<Cell>& blocked) :
    width_(width),
    height_(height),
    blocked_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0)
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument(fmt::format("grid dimensions must be positive, got {}x{}", width, height));
    for (const auto c : blocked)
        set_blocked(c, true);
}

void GridMap::set_blocked(Cell c, bool blocked)
{
    if (!in_bounds(c))
        throw std::out_of_range(fmt::format("cell ({},{}) outside {}x{} grid", c.x, c.y, width_, height_));
    blocked_[index(c)] = blocked ? 1 : 0;
}

std::vector<Cell> GridMap::blocked_cells() const
{
    std::vector<Cell> out;
    for (int x = 0; x < width_; ++x)
        for (int y = 0; y < height_; ++y)
            if (is_blocked({x, y}))
                out.push_back({x, y});
    return out;
}

int GridMap::free_count() const
{
    int count = 0;
    for (const auto b : blocked_)
        count += b == 0;
    return count;
}

int Instance::item_index(int id) const
{
    for (int i = 0; i < num_items(); ++i)
        if (items[i].id == id)
            return i;
    return -1;
}

int Instance::extant_index(int id) const
{
    for (int i = 0; i < num_extant(); ++i)
        if (extant[i].id == id)
            return i;
    return -1;
}

std::vector<int> bfs_distances(const GridMap& grid, Cell from)
{
    std::vector<int> dist(grid.num_cells(), -1);
    if (!grid.passable(from))
        return dist;
    std::deque<Cell> queue{from};
    dist[grid.index(from)] = 0;
    constexpr int dx[] = {0, 1, 0, -1};
    constexpr int dy[] = {-1, 0, 1, 0};
    while (!queue.empty())
    {
        const auto c = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k)
        {
            const Cell n{c.x + dx[k], c.y + dy[k]};
            if (grid.passable(n) && dist[grid.index(n)] < 0)
            {
                dist[grid.index(n)] = dist[grid.index(c)] + 1;
                queue.push_back(n);
            }
        }
    }
    return dist;
}

std::vector<std::string> validate_instance(const Instance& inst)
{
    std::vector<std::string> v;
    const auto& g = inst.grid;
    if (g.width() <= 0 || g.height() <= 0)
    {
        v.push_back("grid: dimensions must be positive");
        return v;
    }
    if (g.free_count() == 0)
        v.push_back("grid: no unblocked cell");
    if (inst.horizon < 1)
        v.push_back("horizon: must be positive");
    if (!g.in_bounds(inst.launcher))
        v.push_back("launcher: cell outside grid");
    else if (g.is_blocked(inst.launcher))
        v.push_back("launcher: cell blocked");
    if (inst.fleet_size < 1)
        v.push_back("fleet_size: must be positive");
    if (inst.num_extant() > inst.fleet_size)
        v.push_back("extant: more extant robots than fleet_size");
    if (inst.theta1 > 0.0)
        v.push_back("theta1: must be nonpositive");
    if (inst.theta2 > 0.0)
        v.push_back("theta2: must be nonpositive");
    if (inst.capacity < 1)
        v.push_back("capacity: must be positive");
    if (inst.num_items() > kMaxItems)
        v.push_back(fmt::format("items: more than {} items", kMaxItems));

    std::map<Cell, int> item_at;
    std::map<int, int> item_ids;
    for (const auto& item : inst.items)
    {
        const auto name = fmt::format("item {}", item.id);
        if (item_ids[item.id]++ == 1)
            v.push_back(name + ": duplicate id");
        if (!g.in_bounds(item.cell))
            v.push_back(name + ": cell outside grid");
        else if (g.is_blocked(item.cell))
            v.push_back(name + ": cell blocked");
        if (item.cell == inst.launcher)
            v.push_back(name + ": cell is the launcher");
        if (const auto it = item_at.find(item.cell); it != item_at.end())
            v.push_back(fmt::format("{}: cell shared with item {}", name, it->second));
        else
            item_at.emplace(item.cell, item.id);
        if (item.reward < 0.0)
            v.push_back(name + ": reward negative");
        if (item.demand < 1)
            v.push_back(name + ": demand must be positive");
        else if (item.demand > inst.capacity)
            v.push_back(name + ": demand exceeds capacity");
        if (item.window_lo < 1 || item.window_lo > item.window_hi || item.window_hi > inst.horizon)
            v.push_back(name + ": window must satisfy 1 <= lo <= hi <= horizon");
    }

    std::map<Cell, int> robot_at;
    std::map<int, int> robot_ids;
    for (const auto& robot : inst.extant)
    {
        const auto name = fmt::format("extant {}", robot.id);
        if (robot_ids[robot.id]++ == 1)
            v.push_back(name + ": duplicate id");
        if (!g.in_bounds(robot.start))
            v.push_back(name + ": cell outside grid");
        else if (g.is_blocked(robot.start))
            v.push_back(name + ": cell blocked");
        if (const auto it = robot_at.find(robot.start); it != robot_at.end())
            v.push_back(fmt::format("{}: start cell shared with extant {}", name, it->second));
        else
            robot_at.emplace(robot.start, robot.id);
        if (robot.remaining_capacity < 0 || robot.remaining_capacity > inst.capacity)
            v.push_back(name + ": remaining capacity outside [0, capacity]");
    }
    return v;
}

ParseError::ParseError(int line, const std::string& what) :
    std::runtime_error(fmt::format("line {}: {}", line, what)),
    line_(line)
{
}

}
