#include "mrr/pricing.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mrr
{

std::string to_string(PricingMode mode)
{
    switch (mode)
    {
    case PricingMode::Exact:
        return "exact";
    case PricingMode::Heuristic:
        return "heuristic";
    case PricingMode::Hybrid:
        return "hybrid";
    }
    return "?";
}

PricingMode pricing_mode_from_string(const std::string& s)
{
    if (s == "exact")
        return PricingMode::Exact;
    if (s == "heuristic")
        return PricingMode::Heuristic;
    if (s == "hybrid")
        return PricingMode::Hybrid;
    throw std::invalid_argument("unknown pricing mode: " + s);
}

Pricer::Pricer(const Instance& inst, const SpaceTime& st, PricingConfig config) :
    inst_(&inst),
    st_(&st),
    config_(config),
    persisted_(inst)
{
}

void Pricer::refresh_paths(const DualSolution& duals)
{
    profiles_ = std::make_unique<PathProfiles>(*inst_, *st_, duals, config_.threads);
}

PricingResult Pricer::price(const DualSolution& duals, PricingMode mode, std::mt19937_64& rng)
{
    if (!profiles_)
        refresh_paths(duals);
    PricingResult result;
    TimeBuckets buckets = config_.persist_buckets ? persisted_ : TimeBuckets(*inst_);
    bool exact = mode == PricingMode::Exact;

    std::vector<CoarseRoute> routes;
    CoarseGraph graph;
    // Each pass either grows the bucket sets or stops, so this is bounded by
    // the total window size; the extra slack covers the hybrid switch.
    const long max_loops = [&] {
        long n = 2;
        for (const auto& item : inst_->items)
            n += item.window_width() + 1;
        return n;
    }();
    for (int loop = 0; loop < max_loops; ++loop)
    {
        PricingTraceEntry entry;
        entry.loop = loop;
        entry.total_size = buckets.total_size();
        graph = build_coarse_graph(*profiles_, buckets, duals.item, duals.extant);
        if (exact)
            routes = exact_ercspp(graph, config_.columns, config_.tol);
        else
            routes = heuristic_ercspp(graph, config_.orderings, config_.columns, rng, config_.tol, config_.threads);
        if (routes.empty() && !exact && mode == PricingMode::Hybrid)
        {
            exact = true;
            routes = exact_ercspp(graph, config_.columns, config_.tol);
        }
        entry.exact = exact;
        if (routes.empty())
        {
            result.trace.push_back(entry);
            result.certified_empty = exact;
            break;
        }
        entry.coarse_value = routes.front().value;
        entry.consistent = check_time_consistency(graph, routes.front()).empty();
        result.trace.push_back(entry);
        result.coarse_value = routes.front().value;
        if (!refine_buckets(buckets, graph, routes.front()))
            break;
    }
    result.exact_final = exact;
    if (config_.persist_buckets)
        persisted_ = buckets;

    std::vector<std::pair<double, Route>> scored;
    for (const auto& r : routes)
    {
        if (!check_time_consistency(graph, r).empty())
            continue;
        Route full = expand_route(*profiles_, graph, r);
        const double rc = reduced_cost(*inst_, full, duals);
        if (rc > config_.tol)
            scored.emplace_back(rc, std::move(full));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [rc, route] : scored)
    {
        result.reduced_costs.push_back(rc);
        result.routes.push_back(std::move(route));
    }
    return result;
}

}
