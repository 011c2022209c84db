#pragma once

#include "mrr/pricing.h"
#include "mrr/rmp.h"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mrr
{

struct SolverConfig
{
    PricingMode pricing = PricingMode::Hybrid;
    int columns = 50;
    int orderings = 25;
    // Full rebuild of time/position/conflict duals every this many iterations.
    int dual_refresh_period = 3;
    bool doi = true;
    double tol = 1e-6;
    // Non-positive selects 10 * items + 50.
    int max_iterations = 0;
    std::uint64_t seed = 1;
    bool collision_rows = true;
    bool persist_buckets = false;
    int threads = 1;
};

struct IterationLog
{
    int iteration = 0;
    double lp_objective = 0.0;
    int columns_added = 0;
    bool full_refresh = false;
    bool exact = false;
    double best_reduced_cost = 0.0;
    int pricing_loops = 0;
};

struct SolveReport
{
    double lp_objective = 0.0;
    double ilp_objective = 0.0;
    double relative_gap = 0.0;
    int iterations = 0;
    int columns_generated = 0;
    double pricing_ms = 0.0;
    double rmp_ms = 0.0;
    double ilp_ms = 0.0;
    double total_ms = 0.0;
    std::string termination; // "converged" or "cap"
    bool certified = false;  // final exact pricing found nothing positive
    std::vector<int> stranded; // extant robot ids left on their dummy route
    int ilp_nodes = 0;
    bool ilp_node_limit = false;
    std::vector<double> item_duals; // final master LP, per item
    std::vector<IterationLog> log;
};

struct Solution
{
    std::vector<Route> routes;
    double objective = 0.0;
    std::vector<int> item_route; // per item index: route index or -1
    std::vector<int> active;     // per time (index t - 1): routes on the floor
};

Solution make_solution(const Instance& inst, std::vector<Route> routes);

// Column generation, final ILP over the generated columns and repair.
std::pair<Solution, SolveReport> run_cg(const Instance& inst, const SolverConfig& config);

struct ValidateOptions
{
    bool check_windows = true;
    // Every extant robot must own exactly one route.
    bool require_extant = true;
};

// Independent feasibility check of a route set; one message per violation.
std::vector<std::string> validate_solution(const Instance& inst, const std::vector<Route>& routes,
                                           const ValidateOptions& options = {});

// Upper bound certified by a final exact pricing pass; throws std::logic_error
// when best_reduced_cost exceeds tol.
double lp_certificate(double lp_objective, double best_reduced_cost, double tol);

}
