#pragma once

#include "mrr/driver.h"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mrr
{

struct BenchSpec
{
    std::vector<int> item_counts{10, 15, 20, 25, 30};
    int instances = 10;
    GenParams base;
    SolverConfig config; // pricing mode is overridden per arm
    std::uint64_t seed_base = 1;
};

struct BenchRun
{
    int items = 0;
    std::uint64_t seed = 0;
    double exact_ms = 0.0;
    double heuristic_ms = 0.0;
    double exact_objective = 0.0;
    double heuristic_objective = 0.0;
    double exact_lp = 0.0;
    double heuristic_lp = 0.0;
};

struct BenchRow
{
    int items = 0;
    int instances = 0;
    double exact_mean_ms = 0.0;
    double heuristic_mean_ms = 0.0;
    double speedup = 0.0; // exact / heuristic mean runtime
};

// Instance k of count D uses seed seed_base + 1000 * D + k.
std::uint64_t bench_seed(const BenchSpec& spec, int items, int k);

// Solves every instance in exact and heuristic pricing mode. `progress`, when
// set, is called after each instance.
std::vector<BenchRow> run_bench(const BenchSpec& spec, std::vector<BenchRun>* runs = nullptr,
                                const std::function<void(const BenchRun&)>& progress = {});

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_runs_csv(const std::vector<BenchRun>& runs);

}
