#pragma once

#include "mrr/instance.h"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mrr
{

struct SpaceTimeNode
{
    Cell cell;
    int t = 1;

    auto operator<=>(const SpaceTimeNode&) const = default;
};

// Neighbour order is fixed and drives every tie-break: wait, North (y-1), East (x+1), South (y+1), West (x-1).
enum class Move : std::uint8_t
{
    Wait,
    North,
    East,
    South,
    West,
};

Cell apply_move(Cell c, Move m);

struct SpaceTimeEdge
{
    SpaceTimeNode from;
    SpaceTimeNode to;
    Move kind = Move::Wait;
};

// Canonical identifier shared by the two opposite traversals of a cell boundary at one time step.
struct ConflictKey
{
    Cell lo;
    Cell hi;
    int t = 1;

    auto operator<=>(const ConflictKey&) const = default;
};

// Throws std::invalid_argument for wait edges, which belong to no conflict pair.
ConflictKey conflict_key(const SpaceTimeEdge& e);

struct Neighbor
{
    int cell;
    Move move;
};

// Time-expanded graph over the passable cells of a grid, t in [1, horizon].
class SpaceTime
{
  public:
    SpaceTime(const GridMap& grid, int horizon);

    const GridMap& grid() const { return grid_; }
    int horizon() const { return horizon_; }
    int num_cells() const { return grid_.num_cells(); }
    int index(Cell c) const { return grid_.index(c); }
    Cell cell(int index) const { return grid_.cell(index); }
    bool passable(int cell) const { return count_[cell] > 0; }

    // Wait entry first, then passable moves in N, E, S, W order. Empty for blocked cells.
    std::span<const Neighbor> neighbors(int cell) const
    {
        return {slots_.data() + 5 * static_cast<std::size_t>(cell), count_[cell]};
    }
    std::vector<std::pair<Cell, Move>> neighbors(Cell c) const;

    // Dense ids for hashing lazily activated rows.
    std::int64_t position_id(int cell, int t) const
    {
        return static_cast<std::int64_t>(t - 1) * num_cells() + cell;
    }
    std::int64_t position_id(const SpaceTimeNode& n) const { return position_id(index(n.cell), n.t); }
    std::int64_t conflict_id(const ConflictKey& k) const;
    SpaceTimeNode position_of(std::int64_t id) const;
    ConflictKey conflict_of(std::int64_t id) const;

    bool is_step(const SpaceTimeNode& from, const SpaceTimeNode& to) const;

  private:
    GridMap grid_;
    int horizon_;
    std::vector<Neighbor> slots_;
    std::vector<std::uint8_t> count_;
};

}
