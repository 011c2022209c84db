#pragma once

#include "mrr/driver.h"

#include <cstdint>
#include <string>
#include <vector>

namespace mrr
{

// Column generation with position and conflict-pair rows never activated.
std::pair<Solution, SolveReport> run_cg_no_collisions(const Instance& inst, const SolverConfig& config);

struct ReplanResult
{
    std::vector<Route> routes;  // surviving, collision-free
    std::vector<int> dropped;   // indices into the input assignment
};

// Plans the given routes one by one in input order against a reservation table
// of earlier robots' positions and edge crossings. A route is kept verbatim when
// it fits; otherwise it is replanned with earliest-arrival space-time searches
// through its pickup cells in order (windows ignored), retrying later launcher
// entries. Robots that cannot return by the horizon, or whose plan would exceed
// the fleet size, are dropped.
ReplanResult prioritized_replan(const Instance& inst, const std::vector<Route>& assignments);

struct BaselineResult
{
    Solution relaxed;
    SolveReport relaxed_report;
    ReplanResult replanned;
    double objective = 0.0;
};

BaselineResult run_baseline(const Instance& inst, const SolverConfig& config);

struct ComparisonRow
{
    std::uint64_t seed = 0;
    double cg_objective = 0.0;
    double baseline_objective = 0.0;
    double difference = 0.0;
    double relative_difference_pct = 0.0;
    int dropped = 0;
};

ComparisonRow compare(const Instance& inst, const SolverConfig& config, std::uint64_t seed_label = 0);

// seed,cg_obj,baseline_obj,diff,rel_diff_pct,dropped with mean and median rows appended.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}
