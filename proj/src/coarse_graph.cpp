#include "mrr/parallel.h"
#include "mrr/pricing.h"

#include <algorithm>
#include <stdexcept>

namespace mrr
{

TimeBuckets::TimeBuckets(const Instance& inst)
{
    for (const auto& item : inst.items)
        starts_.push_back({item.window_lo, item.window_hi + 1});
}

bool TimeBuckets::add(int item, int t)
{
    auto& s = starts_[item];
    if (t < s.front() || t > s.back())
        return false;
    const auto it = std::lower_bound(s.begin(), s.end(), t);
    if (it != s.end() && *it == t)
        return false;
    s.insert(it, t);
    return true;
}

long TimeBuckets::total_size() const
{
    long n = 0;
    for (const auto& s : starts_)
        n += static_cast<long>(s.size());
    return n;
}

// ---------------------------------------------------------------------------

PathProfiles::PathProfiles(const Instance& inst, const SpaceTime& st, const DualSolution& duals, int threads) :
    inst_(&inst),
    st_(&st),
    weights_(inst, st, duals),
    launcher_(ForwardSweep::from_launcher(weights_, inst.horizon)),
    exit_(weights_)
{
    for (const auto& r : inst.extant)
        robots_.emplace_back(weights_, st.index(r.start), 1, inst.horizon);

    int t_max = 1;
    for (const auto& item : inst.items)
    {
        offset_.push_back(window_total_);
        window_total_ += item.window_width();
        t_max = std::max(t_max, item.window_hi);
    }
    between_.assign(window_total_ * window_total_, kUnreachable);

    std::vector<std::pair<int, int>> tasks;
    for (int a = 0; a < inst.num_items(); ++a)
        for (int t0 = inst.items[a].window_lo; t0 <= inst.items[a].window_hi; ++t0)
            tasks.emplace_back(a, t0);
    parallel_for(static_cast<int>(tasks.size()), threads, [&](int k) {
        const auto [a, t0] = tasks[k];
        if (t0 >= t_max)
            return;
        const ForwardSweep sweep(weights_, st.index(inst.items[a].cell), t0, t_max);
        double* row = between_.data() + slot(a, t0) * window_total_;
        for (int b = 0; b < inst.num_items(); ++b)
        {
            if (b == a)
                continue;
            const auto& item = inst.items[b];
            const int cell = st.index(item.cell);
            for (int t1 = std::max(item.window_lo, t0 + 1); t1 <= item.window_hi; ++t1)
                row[slot(b, t1)] = sweep.value(cell, t1);
        }
    });
}

double PathProfiles::from_launcher(int item, int t) const
{
    return launcher_.value(st_->index(inst_->items[item].cell), t);
}

double PathProfiles::from_robot(int robot, int item, int t) const
{
    return robots_[robot].value(st_->index(inst_->items[item].cell), t);
}

double PathProfiles::between(int a, int t0, int b, int t1) const
{
    const auto& ia = inst_->items[a];
    const auto& ib = inst_->items[b];
    if (a == b || t0 < ia.window_lo || t0 > ia.window_hi || t1 < ib.window_lo || t1 > ib.window_hi)
        return kUnreachable;
    return between_[slot(a, t0) * window_total_ + slot(b, t1)];
}

double PathProfiles::to_exit(int item, int t0) const
{
    return exit_.value(st_->index(inst_->items[item].cell), t0);
}

double PathProfiles::robot_to_exit(int robot) const
{
    return exit_.value(st_->index(inst_->extant[robot].start), 1);
}

double PathProfiles::robot_entry(int robot) const
{
    return inst_->theta1 - weights_.node_charge(st_->index(inst_->extant[robot].start), 1);
}

double PathProfiles::empty_trip() const
{
    double best = kUnreachable;
    for (int t = 1; t <= inst_->horizon; ++t)
        best = std::max(best, weights_.launcher_entry(t));
    return best;
}

std::vector<SpaceTimeNode> PathProfiles::launcher_path(int item, int t) const
{
    return launcher_.path_to(st_->index(inst_->items[item].cell), t);
}

std::vector<SpaceTimeNode> PathProfiles::robot_path(int robot, int item, int t) const
{
    return robots_[robot].path_to(st_->index(inst_->items[item].cell), t);
}

std::vector<SpaceTimeNode> PathProfiles::between_path(int a, int t0, int b, int t1) const
{
    const ForwardSweep sweep(weights_, st_->index(inst_->items[a].cell), t0, t1);
    return sweep.path_to(st_->index(inst_->items[b].cell), t1);
}

std::vector<SpaceTimeNode> PathProfiles::exit_path(int item, int t0) const
{
    return exit_.path_from(st_->index(inst_->items[item].cell), t0);
}

std::vector<SpaceTimeNode> PathProfiles::robot_exit_path(int robot) const
{
    return exit_.path_from(st_->index(inst_->extant[robot].start), 1);
}

// ---------------------------------------------------------------------------

int CoarseGraph::add_node(const CoarseNode& n)
{
    nodes.push_back(n);
    out.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
}

int CoarseGraph::add_edge(const CoarseEdge& e)
{
    edges.push_back(e);
    const int id = static_cast<int>(edges.size()) - 1;
    out[e.from].push_back(id);
    return id;
}

void CoarseGraph::sort_out_edges()
{
    for (auto& list : out)
        std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return edges[a].to < edges[b].to; });
}

namespace
{

struct Best
{
    double value = kUnreachable;
    int t0 = -1;
    int t1 = -1;

    void offer(double v, int a, int b)
    {
        if (v > value)
        {
            value = v;
            t0 = a;
            t1 = b;
        }
    }
};

}

CoarseGraph build_coarse_graph(const PathProfiles& profiles, const TimeBuckets& buckets,
                               const std::vector<double>& item_duals, const std::vector<double>& extant_duals)
{
    const auto& inst = profiles.instance();
    CoarseGraph g;
    g.capacity = inst.capacity;
    for (const auto& item : inst.items)
        g.item_reward.push_back(item.reward);
    g.add_node({CoarseNode::Kind::Source});
    g.add_node({CoarseNode::Kind::Sink});
    std::vector<int> robot_node;
    for (int r = 0; r < inst.num_extant(); ++r)
    {
        CoarseNode n{CoarseNode::Kind::Robot};
        n.robot = r;
        n.initial_used = inst.capacity - inst.extant[r].remaining_capacity;
        robot_node.push_back(g.add_node(n));
    }
    std::vector<int> bucket_node;
    for (int d = 0; d < inst.num_items(); ++d)
        for (int j = 0; j < buckets.num_buckets(d); ++j)
        {
            CoarseNode n{CoarseNode::Kind::Bucket};
            n.item = d;
            n.lo = buckets.bucket_lo(d, j);
            n.hi = buckets.bucket_hi(d, j);
            n.demand = inst.items[d].demand;
            bucket_node.push_back(g.add_node(n));
        }
    g.empty_trip = profiles.empty_trip();

    // Source edges.
    for (int r = 0; r < inst.num_extant(); ++r)
    {
        const double v = profiles.robot_entry(r);
        g.add_edge({CoarseGraph::kSource, robot_node[r], v, v, -1, -1});
    }
    for (const int b : bucket_node)
    {
        const auto& n = g.nodes[b];
        Best best;
        for (int t = n.lo; t <= n.hi; ++t)
            best.offer(profiles.from_launcher(n.item, t), -1, t);
        if (best.value != kUnreachable)
            g.add_edge({CoarseGraph::kSource, b, best.value, best.value, -1, best.t1});
    }
    // Robot edges.
    for (int r = 0; r < inst.num_extant(); ++r)
    {
        const double exit = profiles.robot_to_exit(r);
        if (exit != kUnreachable)
            g.add_edge({robot_node[r], CoarseGraph::kSink, exit, exit, 1, -1});
        for (const int b : bucket_node)
        {
            const auto& n = g.nodes[b];
            if (n.demand > inst.extant[r].remaining_capacity)
                continue;
            Best best;
            for (int t = n.lo; t <= n.hi; ++t)
                best.offer(profiles.from_robot(r, n.item, t), 1, t);
            if (best.value != kUnreachable)
                g.add_edge({robot_node[r], b, best.value, best.value, 1, best.t1});
        }
    }
    // Bucket edges.
    for (const int a : bucket_node)
    {
        const auto& na = g.nodes[a];
        Best exit;
        for (int t0 = na.lo; t0 <= na.hi; ++t0)
            exit.offer(profiles.to_exit(na.item, t0), t0, -1);
        if (exit.value != kUnreachable)
            g.add_edge({a, CoarseGraph::kSink, exit.value, exit.value, exit.t0, -1});
        for (const int b : bucket_node)
        {
            const auto& nb = g.nodes[b];
            if (nb.item == na.item || nb.hi <= na.lo || na.demand + nb.demand > inst.capacity)
                continue;
            Best best;
            for (int t0 = na.lo; t0 <= na.hi; ++t0)
                for (int t1 = std::max(nb.lo, t0 + 1); t1 <= nb.hi; ++t1)
                    best.offer(profiles.between(na.item, t0, nb.item, t1), t0, t1);
            if (best.value != kUnreachable)
                g.add_edge({a, b, best.value, best.value, best.t0, best.t1});
        }
    }
    g.sort_out_edges();
    refresh_offsets(g, item_duals, extant_duals);
    return g;
}

void refresh_offsets(CoarseGraph& graph, const std::vector<double>& item_duals,
                     const std::vector<double>& extant_duals)
{
    for (auto& e : graph.edges)
    {
        const auto& head = graph.nodes[e.to];
        switch (head.kind)
        {
        case CoarseNode::Kind::Bucket:
            e.weight = e.base + graph.item_reward[head.item] - item_duals[head.item];
            break;
        case CoarseNode::Kind::Robot:
            e.weight = e.base - extant_duals[head.robot];
            break;
        default:
            e.weight = e.base;
        }
    }
}

std::vector<int> route_nodes(const CoarseGraph& graph, const CoarseRoute& route)
{
    std::vector<int> nodes{CoarseGraph::kSource};
    for (const auto e : route.edges)
        nodes.push_back(graph.edges[e].to);
    return nodes;
}

std::vector<TimeMismatch> check_time_consistency(const CoarseGraph& graph, const CoarseRoute& route)
{
    std::vector<TimeMismatch> out;
    for (std::size_t i = 0; i + 1 < route.edges.size(); ++i)
    {
        const auto& in = graph.edges[route.edges[i]];
        const auto& next = graph.edges[route.edges[i + 1]];
        const auto& node = graph.nodes[in.to];
        if (node.kind != CoarseNode::Kind::Bucket)
            continue;
        if (in.t1 != next.t0)
            out.push_back({node.item, in.t1, next.t0});
    }
    return out;
}

bool refine_buckets(TimeBuckets& buckets, const CoarseGraph& graph, const CoarseRoute& route)
{
    const long before = buckets.total_size();
    for (const auto id : route.edges)
    {
        const auto& e = graph.edges[id];
        const auto& tail = graph.nodes[e.from];
        const auto& head = graph.nodes[e.to];
        if (tail.kind == CoarseNode::Kind::Bucket)
            buckets.add(tail.item, e.t0);
        if (head.kind == CoarseNode::Kind::Bucket)
            buckets.add(head.item, e.t1);
    }
    return buckets.total_size() > before;
}

Route expand_route(const PathProfiles& profiles, const CoarseGraph& graph, const CoarseRoute& route)
{
    const auto& inst = profiles.instance();
    if (!check_time_consistency(graph, route).empty())
        throw std::logic_error("expand_route: coarse route is not time-consistent");
    Route out;
    auto append = [&](const std::vector<SpaceTimeNode>& part) {
        if (part.empty())
            throw std::logic_error("expand_route: missing path segment");
        out.path.insert(out.path.end(), part.begin() + 1, part.end());
    };
    for (std::size_t i = 0; i < route.edges.size(); ++i)
    {
        const auto& e = graph.edges[route.edges[i]];
        const auto& tail = graph.nodes[e.from];
        const auto& head = graph.nodes[e.to];
        if (tail.kind == CoarseNode::Kind::Source)
        {
            if (head.kind == CoarseNode::Kind::Robot)
            {
                out.source = RouteSource::extant(head.robot);
                out.path.push_back({inst.extant[head.robot].start, 1});
            }
            else
            {
                out.source = RouteSource::launcher();
                out.path = profiles.launcher_path(head.item, e.t1);
                out.pickups.push_back({head.item, e.t1});
            }
            continue;
        }
        if (tail.kind == CoarseNode::Kind::Robot)
        {
            if (head.kind == CoarseNode::Kind::Sink)
            {
                append(profiles.robot_exit_path(tail.robot));
            }
            else
            {
                append(profiles.robot_path(tail.robot, head.item, e.t1));
                out.pickups.push_back({head.item, e.t1});
            }
            continue;
        }
        const int t0 = out.path.back().t;
        if (head.kind == CoarseNode::Kind::Sink)
        {
            append(profiles.exit_path(tail.item, t0));
        }
        else
        {
            append(profiles.between_path(tail.item, t0, head.item, e.t1));
            out.pickups.push_back({head.item, e.t1});
        }
    }
    out.profit = route_profit(inst, out);
    return out;
}

}
