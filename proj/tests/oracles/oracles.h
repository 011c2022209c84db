#pragma once

// Brute-force reference implementations used to check the solver. They share
// only the data types with the library and recompute everything from scratch.

#include "mrr/driver.h"
#include "mrr/lp.h"
#include "mrr/pricing.h"

#include <map>
#include <random>
#include <vector>

namespace oracle
{

using namespace mrr;

// Passable 4-neighbours plus the cell itself, in no particular order.
std::vector<Cell> steps_from(const GridMap& grid, Cell c);

// Dual-weighted profit of one step (a, t) -> (b, t + 1).
double step_weight(const Instance& inst, const DualSolution& duals, Cell a, Cell b, int t);

// Max step-profit sum over every path from `from` with exactly k steps, for
// each reachable (cell, k <= max_steps). Exhaustive enumeration.
std::map<std::pair<Cell, int>, double> brute_path_profits(const Instance& inst, const DualSolution& duals,
                                                          SpaceTimeNode from, int max_steps);

// Sum of step weights along a node sequence.
double score_path(const Instance& inst, const DualSolution& duals, const std::vector<SpaceTimeNode>& path);

// Every feasible route: all launcher entry times and extant starts, every walk
// that ends at the launcher, every admissible pickup subset along it.
std::vector<Route> enumerate_routes(const Instance& inst);

// Profit minus duals, recomputed from path and pickups.
double reduced_cost(const Instance& inst, const Route& r, const DualSolution& duals);

// Master LP over an explicit route set with every row present (no lazy rows,
// no surplus columns), plus the extant dummies.
double full_master_lp(const Instance& inst, const std::vector<Route>& routes);

// Best route value in a coarse graph by depth-first enumeration of every
// elementary, capacity-feasible path from the source to the sink. Sums edge
// weights in path order.
double brute_coarse_best(const CoarseGraph& g, int* best_items = nullptr);

// max c'x over {Ax (<=|=) b, x >= 0} by enumerating all bases of [A | I].
// Returns -inf when infeasible. Only for tiny problems.
double brute_lp(const LpProblem& lp);

// Random instance small enough for route enumeration.
Instance tiny_instance(std::mt19937_64& rng, int width, int height, int horizon, int items, int fleet, int extant,
                       int max_window);

// Random duals: item in [0, 1.2 reward], time/position/conflict sparse in [0, spread].
DualSolution random_duals(const Instance& inst, std::mt19937_64& rng, double spread, double density);

}
