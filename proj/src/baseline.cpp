#include "mrr/baseline.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

namespace mrr
{

std::pair<Solution, SolveReport> run_cg_no_collisions(const Instance& inst, const SolverConfig& config)
{
    SolverConfig relaxed = config;
    relaxed.collision_rows = false;
    return run_cg(inst, relaxed);
}

namespace
{

class Reservations
{
  public:
    Reservations(const SpaceTime& st, const Instance& inst) : st_(&st), fleet_(inst.horizon + 1, 0)
    {
        for (const auto& r : inst.extant)
            starts_.insert(st.position_id(st.index(r.start), 1));
    }

    bool vertex_free(int cell, int t, std::int64_t own_start) const
    {
        const auto id = st_->position_id(cell, t);
        if (vertices_.count(id))
            return false;
        return !(t == 1 && id != own_start && starts_.count(id));
    }
    bool edge_free(int from, int to, int t) const
    {
        if (from == to)
            return true;
        const auto lo = std::min(st_->cell(from), st_->cell(to));
        const auto hi = std::max(st_->cell(from), st_->cell(to));
        return !edges_.count(st_->conflict_id({lo, hi, t}));
    }
    bool fits(const std::vector<SpaceTimeNode>& path, std::int64_t own_start, int fleet) const
    {
        for (std::size_t k = 0; k < path.size(); ++k)
        {
            const int c = st_->index(path[k].cell);
            if (!vertex_free(c, path[k].t, own_start) || fleet_[path[k].t] >= fleet)
                return false;
            if (k > 0 && !edge_free(st_->index(path[k - 1].cell), c, path[k - 1].t))
                return false;
        }
        return true;
    }
    void reserve(const std::vector<SpaceTimeNode>& path)
    {
        for (std::size_t k = 0; k < path.size(); ++k)
        {
            vertices_.insert(st_->position_id(path[k]));
            ++fleet_[path[k].t];
            if (k > 0 && path[k].cell != path[k - 1].cell)
                edges_.insert(st_->conflict_id(conflict_key({path[k - 1], path[k], Move::North})));
        }
    }

  private:
    const SpaceTime* st_;
    std::unordered_set<std::int64_t> vertices_;
    std::unordered_set<std::int64_t> edges_;
    std::unordered_set<std::int64_t> starts_;
    std::vector<int> fleet_;
};

// Earliest arrival at `target` from (cell, t) over free space-time nodes;
// returns the node sequence including the start, or nothing by the horizon.
std::optional<std::vector<SpaceTimeNode>> earliest_path(const SpaceTime& st, const Reservations& res, int cell, int t,
                                                        int target, std::int64_t own_start)
{
    if (cell == target)
        return std::vector<SpaceTimeNode>{{st.cell(cell), t}};
    const int cells = st.num_cells();
    const int T = st.horizon();
    std::vector<std::vector<std::int8_t>> pred;
    std::vector<char> frontier(cells, 0);
    frontier[cell] = 1;
    for (int now = t; now < T; ++now)
    {
        std::vector<char> next(cells, 0);
        std::vector<std::int8_t> layer(cells, -1);
        bool any = false;
        for (int c = 0; c < cells; ++c)
        {
            if (!frontier[c])
                continue;
            const auto nbrs = st.neighbors(c);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
            {
                const int n = nbrs[k].cell;
                if (next[n] || !res.vertex_free(n, now + 1, own_start) || !res.edge_free(c, n, now))
                    continue;
                next[n] = 1;
                any = true;
                // Store the predecessor cell's slot in n's neighbour list.
                const auto back = st.neighbors(n);
                for (std::size_t j = 0; j < back.size(); ++j)
                    if (back[j].cell == c)
                        layer[n] = static_cast<std::int8_t>(j);
            }
        }
        pred.push_back(std::move(layer));
        if (!any)
            return std::nullopt;
        if (next[target])
        {
            std::vector<SpaceTimeNode> path;
            int cur = target;
            for (int step = static_cast<int>(pred.size()) - 1; step >= 0; --step)
            {
                path.push_back({st.cell(cur), t + step + 1});
                cur = st.neighbors(cur)[pred[step][cur]].cell;
            }
            path.push_back({st.cell(cur), t});
            std::reverse(path.begin(), path.end());
            return path;
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::optional<Route> replan_one(const Instance& inst, const SpaceTime& st, const Reservations& res, const Route& relaxed,
                                int start_t)
{
    const bool extant = relaxed.source.is_extant();
    const int start_cell = st.index(extant ? inst.extant[relaxed.source.robot].start : inst.launcher);
    const std::int64_t own_start = extant ? st.position_id(start_cell, 1) : -1;
    if (!res.vertex_free(start_cell, start_t, own_start))
        return std::nullopt;
    Route out;
    out.source = relaxed.source;
    out.path.push_back({st.cell(start_cell), start_t});
    std::vector<int> targets;
    for (const auto& p : relaxed.pickups)
        targets.push_back(st.index(inst.items[p.item].cell));
    targets.push_back(st.index(inst.launcher));
    for (std::size_t k = 0; k < targets.size(); ++k)
    {
        const auto& here = out.path.back();
        const auto seg = earliest_path(st, res, st.index(here.cell), here.t, targets[k], own_start);
        if (!seg)
            return std::nullopt;
        out.path.insert(out.path.end(), seg->begin() + 1, seg->end());
        if (k + 1 < targets.size())
            out.pickups.push_back({relaxed.pickups[k].item, out.path.back().t});
    }
    if (!res.fits(out.path, own_start, inst.fleet_size))
        return std::nullopt;
    out.profit = route_profit(inst, out);
    return out;
}

}

ReplanResult prioritized_replan(const Instance& inst, const std::vector<Route>& assignments)
{
    const SpaceTime st(inst.grid, inst.horizon);
    Reservations res(st, inst);
    ReplanResult out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
    {
        const auto& relaxed = assignments[i];
        const std::int64_t own_start =
            relaxed.source.is_extant() ? st.position_id(st.index(inst.extant[relaxed.source.robot].start), 1) : -1;
        std::optional<Route> plan;
        if (res.fits(relaxed.path, own_start, inst.fleet_size))
            plan = relaxed;
        const int first = relaxed.path.front().t;
        const int last = relaxed.source.is_extant() ? first : inst.horizon;
        for (int t = first; !plan && t <= last; ++t)
            plan = replan_one(inst, st, res, relaxed, t);
        if (!plan)
        {
            out.dropped.push_back(static_cast<int>(i));
            continue;
        }
        res.reserve(plan->path);
        out.routes.push_back(std::move(*plan));
    }
    return out;
}

BaselineResult run_baseline(const Instance& inst, const SolverConfig& config)
{
    BaselineResult b;
    auto [relaxed, report] = run_cg_no_collisions(inst, config);
    b.relaxed = std::move(relaxed);
    b.relaxed_report = report;
    b.replanned = prioritized_replan(inst, b.relaxed.routes);
    for (const auto& r : b.replanned.routes)
        b.objective += r.profit;
    return b;
}

ComparisonRow compare(const Instance& inst, const SolverConfig& config, std::uint64_t seed_label)
{
    ComparisonRow row;
    row.seed = seed_label;
    row.cg_objective = run_cg(inst, config).first.objective;
    const auto b = run_baseline(inst, config);
    row.baseline_objective = b.objective;
    row.dropped = static_cast<int>(b.replanned.dropped.size());
    row.difference = row.cg_objective - row.baseline_objective;
    row.relative_difference_pct = std::abs(row.cg_objective) < 1e-12 ? 0.0 : row.difference / row.cg_objective * 100.0;
    return row;
}

namespace
{

double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}

std::string comparison_csv(const std::vector<ComparisonRow>& rows)
{
    std::string out = "seed,cg_obj,baseline_obj,diff,rel_diff_pct,dropped\n";
    std::vector<double> cg, base, diff, rel, dropped;
    for (const auto& r : rows)
    {
        out += fmt::format("{},{},{},{},{},{}\n", r.seed, r.cg_objective, r.baseline_objective, r.difference,
                           r.relative_difference_pct, r.dropped);
        cg.push_back(r.cg_objective);
        base.push_back(r.baseline_objective);
        diff.push_back(r.difference);
        rel.push_back(r.relative_difference_pct);
        dropped.push_back(r.dropped);
    }
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (const auto x : v)
            s += x;
        return v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    out += fmt::format("mean,{},{},{},{},{}\n", mean(cg), mean(base), mean(diff), mean(rel), mean(dropped));
    out += fmt::format("median,{},{},{},{},{}\n", median(cg), median(base), median(diff), median(rel),
                       median(dropped));
    return out;
}

}
