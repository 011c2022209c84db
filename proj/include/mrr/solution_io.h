#pragma once

#include "mrr/driver.h"

#include <string>
#include <string_view>
#include <vector>

namespace mrr
{

struct SolutionJsonOptions
{
    // Wall-clock times vary run to run; off by default so output is reproducible.
    bool include_timings = false;
};

std::string solution_to_json(const Instance& inst, const Solution& solution, const SolveReport& report,
                             const SolutionJsonOptions& options = {});

// Routes of a solution JSON document (item ids resolved against `inst`).
// Throws FormatError on schema mismatch.
std::vector<Route> routes_from_json(const Instance& inst, std::string_view text);

std::string metrics_csv_header();
std::string metrics_csv_row(const SolveReport& report);

// One row per CG iteration.
std::string iteration_log_csv(const SolveReport& report);

// t,robot,x,y,event with event in {enter, move, wait, pickup, exit}.
std::string route_trace_csv(const std::vector<Route>& routes);

}
