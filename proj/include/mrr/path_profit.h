#pragma once

#include "mrr/duals.h"
#include "mrr/spacetime.h"

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace mrr
{

inline constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

// Dual-weighted step profits on the time-expanded graph.
//   wait into (c, t+1):         theta1 - lambda_{t+1} - lambda_{(c, t+1)}
//   move a -> b departing at t: theta1 + theta2 - lambda_{pair} - lambda_{t+1} - lambda_{(b, t+1)}
// The destination is charged, so a whole trip pays for its first position through its entry edge.
class StepWeights
{
  public:
    StepWeights(const Instance& inst, const SpaceTime& st, const DualSolution& duals);

    const SpaceTime& spacetime() const { return *st_; }

    // lambda_t + lambda_p of the position (cell, t).
    double node_charge(int cell, int t) const { return charge_[st_->position_id(cell, t)]; }
    // Step from neighbors(cell)[k] at t into cell at t + 1.
    double arrive(int t, int cell, int k) const { return arrive_[slot(t, cell, k)]; }
    // Step from cell at t into neighbors(cell)[k] at t + 1.
    double depart(int t, int cell, int k) const { return depart_[slot(t, cell, k)]; }
    // Entry edge into the launcher at time t.
    double launcher_entry(int t) const { return theta1_ - node_charge(launcher_, t); }
    int launcher() const { return launcher_; }
    double theta1() const { return theta1_; }

  private:
    std::size_t slot(int t, int cell, int k) const
    {
        return (static_cast<std::size_t>(t - 1) * st_->num_cells() + cell) * 5 + k;
    }

    const SpaceTime* st_;
    int launcher_;
    double theta1_;
    std::vector<double> charge_;
    std::vector<double> arrive_;
    std::vector<double> depart_;
};

// Forward layer-by-layer DP over the time-expanded DAG: the best step-profit sum
// of reaching every (cell, t) from a source. Ties keep the earliest neighbour in
// the fixed (wait, N, E, S, W) order. The referenced SpaceTime must outlive it.
class ForwardSweep
{
  public:
    // Single source at (cell, t0) with profit 0.
    ForwardSweep(const StepWeights& w, int cell, int t0, int t_max);
    // Launcher entered at any t in [1, t_max], paying the entry edge.
    static ForwardSweep from_launcher(const StepWeights& w, int t_max);

    int first_time() const { return t0_; }
    int last_time() const { return t_max_; }
    double value(int cell, int t) const
    {
        if (t < t0_ || t > t_max_)
            return kUnreachable;
        return value_[layer(t) + cell];
    }
    // Nodes from the source (or launcher entry) to (cell, t); empty when unreachable.
    std::vector<SpaceTimeNode> path_to(int cell, int t) const;

  private:
    ForwardSweep(const StepWeights& w, int t0, int t_max);
    std::size_t layer(int t) const { return static_cast<std::size_t>(t - t0_) * cells_; }
    void run(const StepWeights& w, bool launcher_entries);

    const SpaceTime* st_;
    int cells_;
    int t0_;
    int t_max_;
    std::vector<double> value_;
    std::vector<std::uint8_t> pred_;
};

// Best step-profit sum from every (cell, t) to leaving the floor at the launcher by the horizon.
class BackwardSweep
{
  public:
    explicit BackwardSweep(const StepWeights& w);

    double value(int cell, int t) const { return value_[st_->position_id(cell, t)]; }
    // Nodes from (cell, t) to the exit position at the launcher; empty when unreachable.
    std::vector<SpaceTimeNode> path_from(int cell, int t) const;

  private:
    const SpaceTime* st_;
    std::vector<double> value_;
    std::vector<std::uint8_t> succ_;
};

// Arrival-time profile from one source node to one target cell.
struct PathProfile
{
    SpaceTimeNode from;
    Cell to;
    int to_index = -1;
    int t_lo = 0;
    int t_hi = -1;
    std::vector<double> profit; // index t - t_lo; kUnreachable when no path
    std::shared_ptr<const ForwardSweep> sweep;

    double at(int t) const { return t < t_lo || t > t_hi ? kUnreachable : profit[t - t_lo]; }
};

PathProfile best_path_profit(const StepWeights& w, SpaceTimeNode from, Cell to, int t_lo, int t_hi);
std::vector<SpaceTimeNode> expand_path(const PathProfile& profile, int t);

}
