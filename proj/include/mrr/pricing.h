#pragma once

#include "mrr/duals.h"
#include "mrr/path_profit.h"
#include "mrr/route.h"

#include <bitset>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mrr
{

// ---------------------------------------------------------------------------
// Time buckets
// ---------------------------------------------------------------------------

// Per item, a sorted set of bucket start times inside [lo, hi + 1]; bucket j
// covers [starts[j], starts[j+1] - 1].
class TimeBuckets
{
  public:
    TimeBuckets() = default;
    // Endpoints only: one bucket per item covering its whole window.
    explicit TimeBuckets(const Instance& inst);

    int num_items() const { return static_cast<int>(starts_.size()); }
    const std::vector<int>& starts(int item) const { return starts_[item]; }
    int num_buckets(int item) const { return static_cast<int>(starts_[item].size()) - 1; }
    int bucket_lo(int item, int j) const { return starts_[item][j]; }
    int bucket_hi(int item, int j) const { return starts_[item][j + 1] - 1; }
    // Inserts t when it lies inside [lo, hi + 1]; returns whether the set grew.
    bool add(int item, int t);
    long total_size() const;

  private:
    std::vector<std::vector<int>> starts_;
};

// ---------------------------------------------------------------------------
// Cached dual-weighted path profits
// ---------------------------------------------------------------------------

// Everything pricing needs from the time-expanded graph for one set of
// time/position/conflict duals. Item and extant duals are not baked in, so the
// cache stays valid while only those change.
class PathProfiles
{
  public:
    PathProfiles(const Instance& inst, const SpaceTime& st, const DualSolution& duals, int threads = 1);

    const Instance& instance() const { return *inst_; }
    const StepWeights& weights() const { return weights_; }

    // Entry at the launcher (any time) up to (cell of item, t).
    double from_launcher(int item, int t) const;
    // From the extant robot's start (t = 1) to (cell of item, t).
    double from_robot(int robot, int item, int t) const;
    // From (cell of a, t0) to (cell of b, t1), both inside their windows.
    double between(int a, int t0, int b, int t1) const;
    // From (cell of item, t0) back to the launcher exit by the horizon.
    double to_exit(int item, int t0) const;
    double robot_to_exit(int robot) const;
    // theta1 - lambda_1 - lambda_p of the robot's start position.
    double robot_entry(int robot) const;
    // Best empty trip: enter and leave at once.
    double empty_trip() const;

    std::vector<SpaceTimeNode> launcher_path(int item, int t) const;
    std::vector<SpaceTimeNode> robot_path(int robot, int item, int t) const;
    std::vector<SpaceTimeNode> between_path(int a, int t0, int b, int t1) const;
    std::vector<SpaceTimeNode> exit_path(int item, int t0) const;
    std::vector<SpaceTimeNode> robot_exit_path(int robot) const;

  private:
    std::size_t slot(int item, int t) const { return offset_[item] + (t - inst_->items[item].window_lo); }

    const Instance* inst_;
    const SpaceTime* st_;
    StepWeights weights_;
    ForwardSweep launcher_;
    BackwardSweep exit_;
    std::vector<ForwardSweep> robots_;
    std::vector<std::size_t> offset_;
    std::size_t window_total_ = 0;
    std::vector<double> between_; // [slot(a,t0)][slot(b,t1)]
};

// ---------------------------------------------------------------------------
// Coarse graph
// ---------------------------------------------------------------------------

using ItemSet = std::bitset<kMaxItems>;

struct CoarseNode
{
    enum class Kind
    {
        Source,
        Sink,
        Robot,
        Bucket,
    };
    Kind kind = Kind::Bucket;
    int item = -1;  // Bucket
    int robot = -1; // Robot
    int lo = 0;     // bucket interval
    int hi = 0;
    int demand = 0;        // Bucket: item demand
    int initial_used = 0;  // Robot: capacity already used
};

struct CoarseEdge
{
    int from = 0;
    int to = 0;
    double base = 0.0;   // path part, without item / extant duals and rewards
    double weight = 0.0; // base plus the head's reward-minus-dual offset
    int t0 = -1;         // departure (tail pickup) time; -1 for source / robot tails
    int t1 = -1;         // arrival (head pickup) time; -1 for robot / sink heads
};

// Node 0 is the source, node 1 the sink, then robots, then item buckets grouped by item.
struct CoarseGraph
{
    static constexpr int kSource = 0;
    static constexpr int kSink = 1;

    int capacity = 0;
    std::vector<CoarseNode> nodes;
    std::vector<CoarseEdge> edges;
    std::vector<std::vector<int>> out; // edge ids per node, by head node id
    std::vector<double> item_reward;   // per item
    double empty_trip = kUnreachable;  // source -> sink, never returned as a route

    int num_items() const { return static_cast<int>(item_reward.size()); }
    int add_node(const CoarseNode& n);
    int add_edge(const CoarseEdge& e);
    void sort_out_edges();
};

CoarseGraph build_coarse_graph(const PathProfiles& profiles, const TimeBuckets& buckets,
                               const std::vector<double>& item_duals, const std::vector<double>& extant_duals);

// Re-applies item and extant duals to every edge weight; cached path parts and
// argmax times are untouched.
void refresh_offsets(CoarseGraph& graph, const std::vector<double>& item_duals,
                     const std::vector<double>& extant_duals);

struct CoarseRoute
{
    std::vector<int> edges; // source -> ... -> sink
    double value = 0.0;
};

// Node sequence of a coarse route, source and sink included.
std::vector<int> route_nodes(const CoarseGraph& graph, const CoarseRoute& route);

// Exact labeling over used capacity with dominance. Returns up to k routes with
// value > tol, best first.
std::vector<CoarseRoute> exact_ercspp(const CoarseGraph& graph, int k, double tol = 1e-6);

// Ordering heuristic: for each random item ordering, a DP over (node, used
// capacity) restricted to edges that follow the ordering. Returns up to k
// distinct routes with value > tol, best first.
std::vector<CoarseRoute> heuristic_ercspp(const CoarseGraph& graph, int n_orderings, int k, std::mt19937_64& rng,
                                          double tol = 1e-6, int threads = 1);

// Lower bound on the chance that n random orderings include one consistent
// with a fixed route of `stops` items: 1 - (1 - 1/stops!)^n.
double success_probability(int stops, int n);

struct TimeMismatch
{
    int item = -1;
    int arrival = 0;   // pickup time implied by the incoming edge
    int departure = 0; // departure time used by the outgoing edge
};

std::vector<TimeMismatch> check_time_consistency(const CoarseGraph& graph, const CoarseRoute& route);

// Adds each traversed edge's t0 to its tail item and t1 to its head item.
bool refine_buckets(TimeBuckets& buckets, const CoarseGraph& graph, const CoarseRoute& route);

// Full space-time route of a time-consistent coarse route.
Route expand_route(const PathProfiles& profiles, const CoarseGraph& graph, const CoarseRoute& route);

// ---------------------------------------------------------------------------
// Fast pricing loop
// ---------------------------------------------------------------------------

enum class PricingMode
{
    Exact,
    Heuristic,
    Hybrid,
};

std::string to_string(PricingMode mode);
PricingMode pricing_mode_from_string(const std::string& s);

struct PricingConfig
{
    PricingMode mode = PricingMode::Hybrid;
    int columns = 50;
    int orderings = 25;
    double tol = 1e-6;
    bool persist_buckets = false;
    int threads = 1;
};

struct PricingTraceEntry
{
    int loop = 0;
    bool exact = false;
    double coarse_value = 0.0; // best coarse route value; 0 when none is positive
    long total_size = 0;       // sum of bucket set sizes when the graph was built
    bool consistent = false;
};

struct PricingResult
{
    std::vector<Route> routes;          // best reduced cost first
    std::vector<double> reduced_costs;  // under the duals passed to price()
    bool exact_final = false;           // the last solve was exact
    bool certified_empty = false;       // exact search found no positive coarse route
    double coarse_value = 0.0;          // final incumbent's coarse value
    std::vector<PricingTraceEntry> trace;
};

class Pricer
{
  public:
    Pricer(const Instance& inst, const SpaceTime& st, PricingConfig config);

    const PricingConfig& config() const { return config_; }
    // Rebuilds the cached path profits for the time/position/conflict duals.
    void refresh_paths(const DualSolution& duals);
    bool has_paths() const { return profiles_ != nullptr; }
    const PathProfiles& profiles() const { return *profiles_; }

    // Prices with the cached path profits and the item / extant duals of
    // `duals`. Returned routes are time-consistent and have exact reduced cost
    // above tol under `duals`.
    PricingResult price(const DualSolution& duals, PricingMode mode, std::mt19937_64& rng);

  private:
    const Instance* inst_;
    const SpaceTime* st_;
    PricingConfig config_;
    std::unique_ptr<PathProfiles> profiles_;
    TimeBuckets persisted_;
};

}
