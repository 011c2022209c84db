#pragma once

#include "mrr/duals.h"
#include "mrr/spacetime.h"

#include <string>
#include <vector>

namespace mrr
{

struct RouteSource
{
    enum class Kind
    {
        Launcher,
        Extant,
    };

    Kind kind = Kind::Launcher;
    int robot = -1; // extant robot index when kind == Extant

    static RouteSource launcher() { return {Kind::Launcher, -1}; }
    static RouteSource extant(int robot) { return {Kind::Extant, robot}; }
    bool is_extant() const { return kind == Kind::Extant; }
    auto operator<=>(const RouteSource&) const = default;
};

struct Pickup
{
    int item = 0; // item index
    int t = 1;

    auto operator<=>(const Pickup&) const = default;
};

// One launcher-to-launcher (or extant-start-to-launcher) trip: a column of the master problem.
struct Route
{
    RouteSource source;
    std::vector<SpaceTimeNode> path;
    std::vector<Pickup> pickups; // in time order
    double profit = 0.0;

    int start_time() const { return path.front().t; }
    int end_time() const { return path.back().t; }
    int moves() const;
    int used_capacity(const Instance& inst) const;

    bool operator==(const Route&) const = default;
};

// Net profit: item rewards plus theta1 per active time step plus theta2 per move.
double route_profit(const Instance& inst, const Route& route);

// Conflict keys of the route's move edges, in path order.
std::vector<ConflictKey> route_conflicts(const Route& route);

struct RouteCheckOptions
{
    bool check_windows = true;
    bool check_profit = true;
};

// Per-route invariants: endpoints, adjacency, pickups on path and in window,
// no repeated item, capacity, and recomputable profit. Empty when valid.
std::vector<std::string> check_route(const Instance& inst, const SpaceTime& st, const Route& route,
                                     const RouteCheckOptions& options = {});

// Profit minus the duals of every row the route touches.
double reduced_cost(const Instance& inst, const Route& route, const DualSolution& duals);

// Drops the pickups of `drop_items` and recomputes the profit; the spatial path is unchanged.
Route drop_pickups(const Instance& inst, Route route, const std::vector<int>& drop_items);

}
