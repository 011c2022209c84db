#include "mrr/parallel.h"
#include "mrr/pricing.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <numeric>

namespace mrr
{

namespace
{

struct Label
{
    int node = 0;
    int used = 0;
    double profit = 0.0;
    ItemSet visited;
    int pred = -1;
    int edge = -1; // edge into this node
    bool alive = true;
};

bool subset(const ItemSet& a, const ItemSet& b)
{
    return (a & ~b).none();
}

int sink_edge(const CoarseGraph& g, int node)
{
    for (const auto e : g.out[node])
    {
        if (g.edges[e].to == CoarseGraph::kSink)
            return e;
        if (g.edges[e].to > CoarseGraph::kSink)
            break;
    }
    return -1;
}

void sort_routes(std::vector<CoarseRoute>& routes)
{
    std::sort(routes.begin(), routes.end(), [](const CoarseRoute& a, const CoarseRoute& b) {
        if (a.value != b.value)
            return a.value > b.value;
        return a.edges < b.edges;
    });
}

}

std::vector<CoarseRoute> exact_ercspp(const CoarseGraph& g, int k, double tol)
{
    const int n = static_cast<int>(g.nodes.size());
    const int cap = g.capacity;
    std::vector<Label> labels;
    std::vector<std::vector<int>> at(static_cast<std::size_t>(n) * (cap + 1));
    auto cell = [&](int node, int used) -> std::vector<int>& { return at[static_cast<std::size_t>(node) * (cap + 1) + used]; };

    // B dominates A at the same node and used capacity when it earns at least
    // as much and has visited no item A has not.
    auto insert = [&](Label l) {
        auto& list = cell(l.node, l.used);
        for (const auto id : list)
        {
            const auto& other = labels[id];
            if (other.profit >= l.profit && subset(other.visited, l.visited))
                return;
        }
        std::erase_if(list, [&](int id) {
            auto& other = labels[id];
            if (l.profit >= other.profit && subset(l.visited, other.visited))
            {
                other.alive = false;
                return true;
            }
            return false;
        });
        labels.push_back(l);
        list.push_back(static_cast<int>(labels.size()) - 1);
    };

    for (const auto e : g.out[CoarseGraph::kSource])
    {
        const auto& edge = g.edges[e];
        const auto& head = g.nodes[edge.to];
        Label l;
        l.node = edge.to;
        l.profit = edge.weight;
        l.edge = e;
        if (head.kind == CoarseNode::Kind::Robot)
        {
            l.used = head.initial_used;
        }
        else if (head.kind == CoarseNode::Kind::Bucket)
        {
            l.used = head.demand;
            l.visited.set(head.item);
        }
        else
        {
            continue;
        }
        if (l.used <= cap)
            insert(l);
    }

    for (int used = 0; used <= cap; ++used)
        for (int node = 2; node < n; ++node)
        {
            const auto ids = cell(node, used);
            for (const auto id : ids)
            {
                if (!labels[id].alive)
                    continue;
                for (const auto e : g.out[node])
                {
                    const auto& edge = g.edges[e];
                    const auto& head = g.nodes[edge.to];
                    if (head.kind != CoarseNode::Kind::Bucket)
                        continue;
                    const Label& cur = labels[id];
                    if (cur.visited.test(head.item) || used + head.demand > cap)
                        continue;
                    Label l;
                    l.node = edge.to;
                    l.used = used + head.demand;
                    l.profit = cur.profit + edge.weight;
                    l.visited = cur.visited;
                    l.visited.set(head.item);
                    l.pred = id;
                    l.edge = e;
                    insert(l);
                }
            }
        }

    struct Done
    {
        double value;
        int label;
        int edge;
    };
    std::vector<Done> done;
    for (int id = 0; id < static_cast<int>(labels.size()); ++id)
    {
        const auto& l = labels[id];
        if (!l.alive)
            continue;
        const int e = sink_edge(g, l.node);
        if (e < 0)
            continue;
        const double v = l.profit + g.edges[e].weight;
        if (v > tol)
            done.push_back({v, id, e});
    }
    std::stable_sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.value > b.value; });

    std::vector<CoarseRoute> out;
    for (const auto& d : done)
    {
        if (static_cast<int>(out.size()) >= k)
            break;
        CoarseRoute r;
        r.value = d.value;
        r.edges.push_back(d.edge);
        for (int id = d.label; id >= 0; id = labels[id].pred)
            r.edges.push_back(labels[id].edge);
        std::reverse(r.edges.begin(), r.edges.end());
        out.push_back(std::move(r));
    }
    sort_routes(out);
    return out;
}

namespace
{

// Bucket-headed edges and sink edges, shared by every ordering.
struct DpGraph
{
    struct Arc
    {
        int to;
        int item;
        int demand;
        double weight;
        int edge;
    };
    std::vector<std::vector<Arc>> arcs;
    std::vector<int> sink;
    std::vector<int> robots;
    std::vector<std::vector<int>> by_item; // ascending node index
};

DpGraph make_dp_graph(const CoarseGraph& g)
{
    const int n = static_cast<int>(g.nodes.size());
    DpGraph d;
    d.arcs.resize(n);
    d.sink.assign(n, -1);
    d.by_item.resize(g.num_items());
    for (int v = 2; v < n; ++v)
    {
        const auto& node = g.nodes[v];
        if (node.kind == CoarseNode::Kind::Robot)
            d.robots.push_back(v);
        else
            d.by_item[node.item].push_back(v);
        d.sink[v] = sink_edge(g, v);
        for (const auto e : g.out[v])
        {
            const auto& edge = g.edges[e];
            const auto& head = g.nodes[edge.to];
            if (head.kind == CoarseNode::Kind::Bucket)
                d.arcs[v].push_back({edge.to, head.item, head.demand, edge.weight, e});
        }
    }
    return d;
}

// Best routes visiting items in increasing rank, one per (node, load) state;
// only the k best (ties at the cut kept) are materialized.
std::vector<CoarseRoute> ordered_dp(const CoarseGraph& g, const DpGraph& d, const std::vector<int>& perm,
                                    const std::vector<int>& rank, int k, double tol)
{
    const int n = static_cast<int>(g.nodes.size());
    const int cap = g.capacity;
    const std::size_t width = cap + 1;
    std::vector<double> value(n * width, kUnreachable);
    std::vector<int> pred_state(n * width, -1);
    std::vector<int> pred_edge(n * width, -1);
    std::vector<std::uint64_t> live(n, 0); // bit u: state (v, u) reached
    // Loads above 63 do not fit the mask; such graphs scan every level.
    const bool masked = cap < 64;

    for (const auto e : g.out[CoarseGraph::kSource])
    {
        const auto& edge = g.edges[e];
        const auto& head = g.nodes[edge.to];
        int used = 0;
        if (head.kind == CoarseNode::Kind::Robot)
            used = head.initial_used;
        else if (head.kind == CoarseNode::Kind::Bucket)
            used = head.demand;
        else
            continue;
        if (used > cap)
            continue;
        const std::size_t s = edge.to * width + used;
        if (edge.weight > value[s])
        {
            value[s] = edge.weight;
            pred_edge[s] = e;
            if (masked)
                live[edge.to] |= std::uint64_t{1} << used;
        }
    }

    auto relax = [&](int v, int r) {
        std::uint64_t bits = masked ? live[v] : 0;
        for (int used = masked ? 0 : -1;;)
        {
            if (masked)
            {
                if (!bits)
                    break;
                used = std::countr_zero(bits);
                bits &= bits - 1;
            }
            else if (++used > cap)
                break;
            const std::size_t s = v * width + used;
            if (value[s] == kUnreachable)
                continue;
            for (const auto& a : d.arcs[v])
            {
                if (rank[a.item] <= r)
                    continue;
                const int nu = used + a.demand;
                if (nu > cap)
                    continue;
                const std::size_t hs = a.to * width + nu;
                const double cand = value[s] + a.weight;
                if (cand > value[hs])
                {
                    value[hs] = cand;
                    pred_state[hs] = static_cast<int>(s);
                    pred_edge[hs] = a.edge;
                    if (masked)
                        live[a.to] |= std::uint64_t{1} << nu;
                }
            }
        }
    };
    for (const int v : d.robots)
        relax(v, -1);
    for (std::size_t r = 0; r < perm.size(); ++r)
        for (const int v : d.by_item[perm[r]])
            relax(v, static_cast<int>(r));

    std::vector<std::pair<double, int>> cand;
    for (int v = 2; v < n; ++v)
    {
        const int e = d.sink[v];
        if (e < 0)
            continue;
        for (int used = 0; used <= cap; ++used)
        {
            const std::size_t s = v * width + used;
            if (value[s] == kUnreachable)
                continue;
            const double total = value[s] + g.edges[e].weight;
            if (total > tol)
                cand.emplace_back(total, static_cast<int>(s));
        }
    }
    if (static_cast<int>(cand.size()) > k)
    {
        std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        const double cut = cand[k - 1].first;
        cand.erase(std::remove_if(cand.begin(), cand.end(), [cut](const auto& c) { return c.first < cut; }),
                   cand.end());
    }

    std::vector<CoarseRoute> out;
    out.reserve(cand.size());
    for (const auto& [total, s] : cand)
    {
        CoarseRoute route;
        route.value = total;
        route.edges.push_back(d.sink[s / static_cast<int>(width)]);
        for (int cur = s; cur >= 0; cur = pred_state[cur])
            route.edges.push_back(pred_edge[cur]);
        std::reverse(route.edges.begin(), route.edges.end());
        out.push_back(std::move(route));
    }
    return out;
}

}

std::vector<CoarseRoute> heuristic_ercspp(const CoarseGraph& g, int n_orderings, int k, std::mt19937_64& rng,
                                          double tol, int threads)
{
    const int items = g.num_items();
    std::vector<std::vector<int>> perms(n_orderings, std::vector<int>(items));
    std::vector<std::vector<int>> ranks(n_orderings, std::vector<int>(items));
    for (int o = 0; o < n_orderings; ++o)
    {
        auto& perm = perms[o];
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int pos = 0; pos < items; ++pos)
            ranks[o][perm[pos]] = pos;
    }
    if (k < 1)
        return {};
    const DpGraph d = make_dp_graph(g);
    std::vector<std::vector<CoarseRoute>> found(n_orderings);
    parallel_for(n_orderings, threads, [&](int o) { found[o] = ordered_dp(g, d, perms[o], ranks[o], k, tol); });

    std::vector<CoarseRoute> all;
    for (auto& f : found)
        for (auto& r : f)
            all.push_back(std::move(r));
    sort_routes(all);
    all.erase(std::unique(all.begin(), all.end(),
                          [](const CoarseRoute& a, const CoarseRoute& b) { return a.edges == b.edges; }),
              all.end());
    if (static_cast<int>(all.size()) > k)
        all.resize(k);
    return all;
}

double success_probability(int stops, int n)
{
    double factorial = 1.0;
    for (int i = 2; i <= stops; ++i)
        factorial *= i;
    return 1.0 - std::pow(1.0 - 1.0 / factorial, n);
}

}
