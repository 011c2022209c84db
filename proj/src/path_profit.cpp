#include "mrr/path_profit.h"

#include <algorithm>

namespace mrr
{

namespace
{

constexpr std::uint8_t kSource = 254;
constexpr std::uint8_t kNone = 255;

}

StepWeights::StepWeights(const Instance& inst, const SpaceTime& st, const DualSolution& duals) :
    st_(&st),
    launcher_(st.index(inst.launcher)),
    theta1_(inst.theta1)
{
    const int T = st.horizon();
    const int cells = st.num_cells();
    charge_.assign(static_cast<std::size_t>(T) * cells, 0.0);
    for (int t = 1; t <= T; ++t)
        std::fill_n(charge_.begin() + st.position_id(0, t), cells, duals.time_at(t));
    for (const auto& [p, value] : duals.position)
        if (p.t >= 1 && p.t <= T && st.grid().in_bounds(p.cell))
            charge_[st.position_id(p)] += value;

    std::vector<double> conflict(2 * charge_.size(), 0.0);
    for (const auto& [k, value] : duals.conflict)
        if (k.t >= 1 && k.t <= T && st.grid().in_bounds(k.lo) && st.grid().in_bounds(k.hi))
            conflict[st.conflict_id(k)] += value;
    const auto pair_dual = [&](int a, int b, int t) {
        const auto lo = std::min(st.cell(a), st.cell(b));
        const auto hi = std::max(st.cell(a), st.cell(b));
        return conflict[st.conflict_id({lo, hi, t})];
    };

    const double step_move = inst.theta1 + inst.theta2;
    const std::size_t slots = T > 1 ? static_cast<std::size_t>(T - 1) * cells * 5 : 0;
    arrive_.assign(slots, kUnreachable);
    depart_.assign(slots, kUnreachable);
    for (int t = 1; t < T; ++t)
        for (int c = 0; c < cells; ++c)
        {
            const auto nbrs = st.neighbors(c);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
            {
                const int n = nbrs[k].cell;
                if (nbrs[k].move == Move::Wait)
                {
                    arrive_[slot(t, c, k)] = inst.theta1 - node_charge(c, t + 1);
                    depart_[slot(t, c, k)] = inst.theta1 - node_charge(c, t + 1);
                }
                else
                {
                    arrive_[slot(t, c, k)] = step_move - pair_dual(n, c, t) - node_charge(c, t + 1);
                    depart_[slot(t, c, k)] = step_move - pair_dual(c, n, t) - node_charge(n, t + 1);
                }
            }
        }
}

ForwardSweep::ForwardSweep(const StepWeights& w, int t0, int t_max) :
    st_(&w.spacetime()),
    cells_(st_->num_cells()),
    t0_(t0),
    t_max_(std::max(t0, std::min(t_max, st_->horizon()))),
    value_(static_cast<std::size_t>(t_max_ - t0_ + 1) * cells_, kUnreachable),
    pred_(value_.size(), kNone)
{
}

ForwardSweep::ForwardSweep(const StepWeights& w, int cell, int t0, int t_max) :
    ForwardSweep(w, t0, t_max)
{
    if (st_->passable(cell))
    {
        value_[layer(t0_) + cell] = 0.0;
        pred_[layer(t0_) + cell] = kSource;
    }
    run(w, false);
}

ForwardSweep ForwardSweep::from_launcher(const StepWeights& w, int t_max)
{
    ForwardSweep sweep(w, 1, t_max);
    sweep.value_[w.launcher()] = w.launcher_entry(1);
    sweep.pred_[w.launcher()] = kSource;
    sweep.run(w, true);
    return sweep;
}

void ForwardSweep::run(const StepWeights& w, bool launcher_entries)
{
    // Cells by BFS distance from the source; at elapsed time k only the prefix
    // within distance k can hold a finite value.
    const int source = launcher_entries ? w.launcher() : -1;
    std::vector<int> order;
    std::vector<int> dist(cells_, -1);
    for (int c = 0; c < cells_; ++c)
        if (launcher_entries ? c == source : value_[layer(t0_) + c] != kUnreachable)
        {
            dist[c] = 0;
            order.push_back(c);
        }
    for (std::size_t head = 0; head < order.size(); ++head)
        for (const auto& n : st_->neighbors(order[head]))
            if (dist[n.cell] < 0)
            {
                dist[n.cell] = dist[order[head]] + 1;
                order.push_back(n.cell);
            }
    std::size_t reach = 0;

    for (int t = t0_; t < t_max_; ++t)
    {
        const int elapsed = t + 1 - t0_;
        while (reach < order.size() && dist[order[reach]] <= elapsed)
            ++reach;
        const double* prev = value_.data() + layer(t);
        double* next = value_.data() + layer(t + 1);
        std::uint8_t* next_pred = pred_.data() + layer(t + 1);
        for (std::size_t i = 0; i < reach; ++i)
        {
            const int c = order[i];
            const auto nbrs = st_->neighbors(c);
            double best = kUnreachable;
            std::uint8_t best_k = kNone;
            for (std::size_t k = 0; k < nbrs.size(); ++k)
            {
                const double v = prev[nbrs[k].cell];
                if (v == kUnreachable)
                    continue;
                const double cand = v + w.arrive(t, c, static_cast<int>(k));
                if (cand > best)
                {
                    best = cand;
                    best_k = static_cast<std::uint8_t>(k);
                }
            }
            next[c] = best;
            next_pred[c] = best_k;
        }
        if (launcher_entries)
        {
            const double entry = w.launcher_entry(t + 1);
            if (entry >= next[w.launcher()])
            {
                next[w.launcher()] = entry;
                next_pred[w.launcher()] = kSource;
            }
        }
    }
}

std::vector<SpaceTimeNode> ForwardSweep::path_to(int cell, int t) const
{
    std::vector<SpaceTimeNode> path;
    if (value(cell, t) == kUnreachable)
        return path;
    while (true)
    {
        path.push_back({st_->cell(cell), t});
        const auto code = pred_[layer(t) + cell];
        if (code == kSource)
            break;
        cell = st_->neighbors(cell)[code].cell;
        --t;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

BackwardSweep::BackwardSweep(const StepWeights& w) :
    st_(&w.spacetime()),
    value_(static_cast<std::size_t>(st_->horizon()) * st_->num_cells(), kUnreachable),
    succ_(value_.size(), kNone)
{
    const int T = st_->horizon();
    const int cells = st_->num_cells();
    value_[st_->position_id(w.launcher(), T)] = 0.0;
    succ_[st_->position_id(w.launcher(), T)] = kSource;
    for (int t = T - 1; t >= 1; --t)
    {
        for (int c = 0; c < cells; ++c)
        {
            const auto nbrs = st_->neighbors(c);
            if (nbrs.empty())
                continue;
            double best = c == w.launcher() ? 0.0 : kUnreachable;
            std::uint8_t best_k = c == w.launcher() ? kSource : kNone;
            for (std::size_t k = 0; k < nbrs.size(); ++k)
            {
                const double v = value_[st_->position_id(nbrs[k].cell, t + 1)];
                if (v == kUnreachable)
                    continue;
                const double cand = v + w.depart(t, c, static_cast<int>(k));
                if (cand > best)
                {
                    best = cand;
                    best_k = static_cast<std::uint8_t>(k);
                }
            }
            value_[st_->position_id(c, t)] = best;
            succ_[st_->position_id(c, t)] = best_k;
        }
    }
}

std::vector<SpaceTimeNode> BackwardSweep::path_from(int cell, int t) const
{
    std::vector<SpaceTimeNode> path;
    if (value(cell, t) == kUnreachable)
        return path;
    while (true)
    {
        path.push_back({st_->cell(cell), t});
        const auto code = succ_[st_->position_id(cell, t)];
        if (code == kSource)
            break;
        cell = st_->neighbors(cell)[code].cell;
        ++t;
    }
    return path;
}

PathProfile best_path_profit(const StepWeights& w, SpaceTimeNode from, Cell to, int t_lo, int t_hi)
{
    const auto& st = w.spacetime();
    PathProfile profile;
    profile.from = from;
    profile.to = to;
    profile.t_lo = t_lo;
    profile.t_hi = t_hi;
    profile.to_index = st.grid().in_bounds(to) ? st.index(to) : -1;
    profile.sweep = std::make_shared<const ForwardSweep>(w, st.index(from.cell), from.t, t_hi);
    for (int t = t_lo; t <= t_hi; ++t)
        profile.profit.push_back(st.grid().passable(to) ? profile.sweep->value(profile.to_index, t) : kUnreachable);
    return profile;
}

std::vector<SpaceTimeNode> expand_path(const PathProfile& profile, int t)
{
    if (profile.at(t) == kUnreachable)
        return {};
    return profile.sweep->path_to(profile.to_index, t);
}

}
