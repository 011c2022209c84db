#include "mrr/rmp.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mrr
{

namespace
{

constexpr double kViolationTol = 1e-9;
constexpr double kClampLimit = 1e-7;
constexpr double kIntegralTol = 1e-6;

double clamp_dual(double y, const char* what)
{
    if (y < -kClampLimit)
        throw LpError(fmt::format("{} dual {} is negative beyond tolerance", what, y));
    return std::max(y, 0.0);
}

}

RmpModel::RmpModel(const Instance& inst, const SpaceTime& st, RmpOptions options) :
    inst_(&inst),
    st_(&st),
    options_(options)
{
    double rewards = 0.0;
    for (const auto& item : inst.items)
        rewards += item.reward;
    big_m_ = rewards + 2.0 * inst.horizon * (std::abs(inst.theta1) + std::abs(inst.theta2)) + 1.0;
    for (int r = 0; r < inst.num_extant(); ++r)
    {
        Column c;
        c.cost = -big_m_;
        c.extant = r;
        columns_.push_back(std::move(c));
    }
}

AddResult RmpModel::add_column(const Route& route)
{
    const auto violations = check_route(*inst_, *st_, route);
    if (!violations.empty())
    {
        std::string reason;
        for (const auto& v : violations)
            reason += (reason.empty() ? "" : "; ") + v;
        return {AddStatus::Rejected, -1, reason};
    }

    Column c;
    c.cost = route.profit;
    c.extant = route.source.is_extant() ? route.source.robot : -1;
    for (const auto& p : route.pickups)
        c.items.push_back(p.item);
    std::sort(c.items.begin(), c.items.end());
    for (const auto& n : route.path)
        c.times.push_back(n.t);
    std::vector<std::int64_t> all_positions;
    for (const auto& n : route.path)
        all_positions.push_back(st_->position_id(n));

    std::vector<std::int64_t> key{c.extant, static_cast<std::int64_t>(c.items.size())};
    key.insert(key.end(), c.items.begin(), c.items.end());
    key.insert(key.end(), all_positions.begin(), all_positions.end());
    if (keys_.count(key))
    {
        for (int id = num_dummies(); id < num_columns(); ++id)
            if (this->route(id).source == route.source && this->route(id).path == route.path)
            {
                std::vector<int> items;
                for (const auto& p : this->route(id).pickups)
                    items.push_back(p.item);
                std::sort(items.begin(), items.end());
                if (items == c.items)
                    return {AddStatus::Duplicate, id, "duplicate incidence"};
            }
        return {AddStatus::Duplicate, -1, "duplicate incidence"};
    }
    keys_.insert(std::move(key));

    const int id = num_columns();
    if (options_.collision_rows)
    {
        c.positions = std::move(all_positions);
        for (const auto& k : route_conflicts(route))
            c.conflicts.push_back(st_->conflict_id(k));
        for (const auto p : c.positions)
            position_rows_[p].push_back(id);
        for (const auto e : c.conflicts)
            conflict_rows_[e].push_back(id);
    }
    columns_.push_back(std::move(c));
    routes_.push_back(route);
    return {AddStatus::Added, id, ""};
}

LpProblem RmpModel::build(const std::vector<Bound>& bounds) const
{
    const int D = inst_->num_items();
    const int T = inst_->horizon;
    const int R = inst_->num_extant();
    LpProblem lp;
    for (int d = 0; d < D; ++d)
        lp.add_row(RowSense::LessEqual, 1.0);
    for (int t = 1; t <= T; ++t)
        lp.add_row(RowSense::LessEqual, static_cast<double>(inst_->fleet_size));
    for (int r = 0; r < R; ++r)
        lp.add_row(RowSense::Equal, 1.0);
    std::unordered_map<std::int64_t, int> position_row;
    std::unordered_map<std::int64_t, int> conflict_row;
    for (const auto& w : working_)
    {
        const int row = lp.add_row(RowSense::LessEqual, 1.0);
        (w.kind == 0 ? position_row : conflict_row)[w.id] = row;
    }

    for (int d = 0; d < num_xi(); ++d)
        lp.add_column(-inst_->items[d].reward, {{d, -1.0}});
    for (const auto& c : columns_)
    {
        std::vector<std::pair<int, double>> entries;
        for (const auto d : c.items)
            entries.emplace_back(d, 1.0);
        for (const auto t : c.times)
            entries.emplace_back(D + t - 1, 1.0);
        if (c.extant >= 0)
            entries.emplace_back(D + T + c.extant, 1.0);
        if (!working_.empty())
        {
            for (const auto p : c.positions)
                if (const auto it = position_row.find(p); it != position_row.end())
                    entries.emplace_back(it->second, 1.0);
            for (const auto e : c.conflicts)
                if (const auto it = conflict_row.find(e); it != conflict_row.end())
                    entries.emplace_back(it->second, 1.0);
        }
        lp.add_column(c.cost, std::move(entries));
    }
    for (const auto& b : bounds)
    {
        const int j = num_xi() + b.column;
        if (b.upper_zero)
        {
            const int row = lp.add_row(RowSense::LessEqual, 0.0);
            lp.columns[j].entries.emplace_back(row, 1.0);
        }
        else
        {
            const int row = lp.add_row(RowSense::LessEqual, -1.0);
            lp.columns[j].entries.emplace_back(row, -1.0);
        }
    }
    return lp;
}

std::vector<double> RmpModel::gamma_of(const LpSolution& lp) const
{
    return {lp.x.begin() + num_xi(), lp.x.end()};
}

std::vector<double> RmpModel::xi_of(const LpSolution& lp) const
{
    return {lp.x.begin(), lp.x.begin() + num_xi()};
}

std::vector<RmpModel::RowKey> RmpModel::violated_rows(const std::vector<double>& gamma) const
{
    std::unordered_map<std::int64_t, double> pos;
    std::unordered_map<std::int64_t, double> con;
    for (int id = 0; id < num_columns(); ++id)
    {
        if (gamma[id] <= 1e-12)
            continue;
        for (const auto p : columns_[id].positions)
            pos[p] += gamma[id];
        for (const auto e : columns_[id].conflicts)
            con[e] += gamma[id];
    }
    std::vector<RowKey> out;
    for (const auto& [id, v] : pos)
        if (v > 1.0 + kViolationTol && !working_set_.count({0, id}))
            out.push_back({0, id});
    for (const auto& [id, v] : con)
        if (v > 1.0 + kViolationTol && !working_set_.count({1, id}))
            out.push_back({1, id});
    std::sort(out.begin(), out.end());
    return out;
}

RmpModel::Solved RmpModel::solve_with_rows(const std::vector<Bound>& bounds, bool warm)
{
    Solved s;
    while (true)
    {
        const auto lp = build(bounds);
        std::vector<BasisVar> start;
        const std::vector<BasisVar>* start_ptr = nullptr;
        if (warm && !last_basis_.empty() && static_cast<int>(last_basis_.size()) <= lp.num_rows())
        {
            start = last_basis_;
            for (int i = static_cast<int>(start.size()); i < lp.num_rows(); ++i)
                start.push_back({BasisVar::Kind::Slack, i});
            start_ptr = &start;
        }
        s.lp = solve_simplex(lp, options_.simplex, start_ptr);
        s.iterations += s.lp.iterations;
        ++s.rounds;
        if (s.lp.status == LpStatus::Unbounded)
            throw LpError("restricted master LP is unbounded");
        if (s.lp.status == LpStatus::Infeasible)
            return s;
        if (warm)
            last_basis_ = s.lp.basis;
        const auto add = violated_rows(gamma_of(s.lp));
        if (add.empty())
            return s;
        for (const auto& k : add)
        {
            working_.push_back(k);
            working_set_.insert(k);
        }
    }
}

DualSolution RmpModel::duals_of(const LpSolution& lp) const
{
    const int D = inst_->num_items();
    const int T = inst_->horizon;
    const int R = inst_->num_extant();
    DualSolution duals = DualSolution::zeros(*inst_);
    for (int d = 0; d < D; ++d)
        duals.item[d] = clamp_dual(lp.duals[d], "item");
    for (int t = 0; t < T; ++t)
        duals.time[t] = clamp_dual(lp.duals[D + t], "time");
    for (int r = 0; r < R; ++r)
        duals.extant[r] = lp.duals[D + T + r];
    for (std::size_t w = 0; w < working_.size(); ++w)
    {
        const double y = clamp_dual(lp.duals[D + T + R + w], "collision");
        if (y <= 0.0)
            continue;
        if (working_[w].kind == 0)
            duals.position[st_->position_of(working_[w].id)] = y;
        else
            duals.conflict[st_->conflict_of(working_[w].id)] = y;
    }
    return duals;
}

RmpLpResult RmpModel::solve_lp()
{
    const auto s = solve_with_rows({}, true);
    if (s.lp.status != LpStatus::Optimal)
        throw LpError("restricted master LP is infeasible");
    RmpLpResult out;
    out.objective = s.lp.objective;
    out.gamma = gamma_of(s.lp);
    out.xi = xi_of(s.lp);
    out.duals = duals_of(s.lp);
    out.row_rounds = s.rounds;
    out.simplex_iterations = s.iterations;
    return out;
}

RmpIlpResult RmpModel::solve_ilp()
{
    const int D = inst_->num_items();
    RmpIlpResult best;
    // All-dummy selection is always feasible.
    for (int r = 0; r < num_dummies(); ++r)
    {
        best.selected.push_back(r);
        best.objective += columns_[r].cost;
    }
    best.xi.assign(num_xi(), 0.0);

    struct Node
    {
        double bound;
        int id;
        std::vector<Bound> bounds;
    };
    auto worse = [](const Node& a, const Node& b) {
        if (a.bound != b.bound)
            return a.bound < b.bound;
        return a.id > b.id;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
    int next_id = 0;
    open.push({std::numeric_limits<double>::infinity(), next_id++, {}});

    while (!open.empty())
    {
        Node node = open.top();
        open.pop();
        if (node.bound <= best.objective + 1e-7)
            break;
        if (best.nodes >= options_.ilp_node_limit)
        {
            best.node_limit_hit = true;
            break;
        }
        ++best.nodes;
        const auto s = solve_with_rows(node.bounds, node.bounds.empty());
        if (s.lp.status != LpStatus::Optimal || s.lp.objective <= best.objective + 1e-7)
            continue;
        const auto gamma = gamma_of(s.lp);

        int branch = -1;
        double branch_frac = kIntegralTol;
        for (int id = 0; id < num_columns(); ++id)
        {
            const double frac = std::min(gamma[id] - std::floor(gamma[id]), std::ceil(gamma[id]) - gamma[id]);
            if (frac > branch_frac + 1e-12)
            {
                branch = id;
                branch_frac = frac;
            }
        }
        if (branch < 0)
        {
            RmpIlpResult cand;
            std::vector<int> cover(D, 0);
            for (int id = 0; id < num_columns(); ++id)
            {
                if (gamma[id] < 0.5)
                    continue;
                cand.selected.push_back(id);
                cand.objective += columns_[id].cost;
                for (const auto d : columns_[id].items)
                    ++cover[d];
            }
            cand.xi.assign(num_xi(), 0.0);
            for (int d = 0; d < num_xi(); ++d)
            {
                cand.xi[d] = std::max(0, cover[d] - 1);
                cand.objective -= inst_->items[d].reward * cand.xi[d];
            }
            if (cand.objective > best.objective)
            {
                cand.nodes = best.nodes;
                best = std::move(cand);
            }
            continue;
        }
        for (const bool upper_zero : {false, true})
        {
            Node child{s.lp.objective, next_id++, node.bounds};
            child.bounds.push_back({branch, upper_zero});
            open.push(std::move(child));
        }
    }
    return best;
}

std::vector<Route> repair_solution(const Instance& inst, std::vector<std::pair<int, Route>> selected)
{
    std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> owner(inst.num_items(), -1);
    for (std::size_t k = 0; k < selected.size(); ++k)
        for (const auto& p : selected[k].second.pickups)
            owner[p.item] = static_cast<int>(k);
    std::vector<Route> out;
    for (std::size_t k = 0; k < selected.size(); ++k)
    {
        std::vector<int> drop;
        for (const auto& p : selected[k].second.pickups)
            if (owner[p.item] != static_cast<int>(k))
                drop.push_back(p.item);
        if (drop.empty())
            out.push_back(std::move(selected[k].second));
        else
            out.push_back(drop_pickups(inst, std::move(selected[k].second), drop));
    }
    return out;
}

}
