#include "mrr/spacetime.h"

#include <fmt/format.h>

#include <stdexcept>

namespace mrr
{

Cell apply_move(Cell c, Move m)
{
    switch (m)
    {
        case Move::Wait:
            return c;
        case Move::North:
            return {c.x, c.y - 1};
        case Move::East:
            return {c.x + 1, c.y};
        case Move::South:
            return {c.x, c.y + 1};
        case Move::West:
            return {c.x - 1, c.y};
    }
    return c;
}

ConflictKey conflict_key(const SpaceTimeEdge& e)
{
    if (e.kind == Move::Wait || e.from.cell == e.to.cell)
        throw std::invalid_argument("wait edges belong to no conflict pair");
    const auto [lo, hi] = std::minmax(e.from.cell, e.to.cell);
    return {lo, hi, e.from.t};
}

SpaceTime::SpaceTime(const GridMap& grid, int horizon) :
    grid_(grid),
    horizon_(horizon),
    slots_(5 * static_cast<std::size_t>(grid.num_cells())),
    count_(grid.num_cells(), 0)
{
    constexpr Move order[] = {Move::Wait, Move::North, Move::East, Move::South, Move::West};
    for (int i = 0; i < grid.num_cells(); ++i)
    {
        const auto c = grid.cell(i);
        if (grid.is_blocked(c))
            continue;
        std::uint8_t n = 0;
        for (const auto m : order)
        {
            const auto to = apply_move(c, m);
            if (grid.passable(to))
                slots_[5 * static_cast<std::size_t>(i) + n++] = {grid.index(to), m};
        }
        count_[i] = n;
    }
}

std::vector<std::pair<Cell, Move>> SpaceTime::neighbors(Cell c) const
{
    std::vector<std::pair<Cell, Move>> out;
    if (!grid_.passable(c))
        return out;
    for (const auto& n : neighbors(index(c)))
        out.emplace_back(cell(n.cell), n.move);
    return out;
}

std::int64_t SpaceTime::conflict_id(const ConflictKey& k) const
{
    const int vertical = k.hi.x == k.lo.x ? 1 : 0;
    return position_id(index(k.lo), k.t) * 2 + vertical;
}

SpaceTimeNode SpaceTime::position_of(std::int64_t id) const
{
    return {cell(static_cast<int>(id % num_cells())), static_cast<int>(id / num_cells()) + 1};
}

ConflictKey SpaceTime::conflict_of(std::int64_t id) const
{
    const auto lo = position_of(id / 2);
    const Cell hi = id % 2 ? Cell{lo.cell.x, lo.cell.y + 1} : Cell{lo.cell.x + 1, lo.cell.y};
    return {lo.cell, hi, lo.t};
}

bool SpaceTime::is_step(const SpaceTimeNode& from, const SpaceTimeNode& to) const
{
    if (to.t != from.t + 1 || from.t < 1 || to.t > horizon_)
        return false;
    if (!grid_.passable(from.cell) || !grid_.passable(to.cell))
        return false;
    return std::abs(from.cell.x - to.cell.x) + std::abs(from.cell.y - to.cell.y) <= 1;
}

}
