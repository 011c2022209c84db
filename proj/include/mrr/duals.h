#pragma once

#include "mrr/spacetime.h"

#include <map>
#include <vector>

namespace mrr
{

// Dual values of the master rows. Position and conflict-pair rows are lazily
// activated, so they are stored sparsely and default to zero.
struct DualSolution
{
    std::vector<double> item;   // per item index, >= 0
    std::vector<double> time;   // index t - 1, >= 0
    std::vector<double> extant; // per extant index, sign-free
    std::map<SpaceTimeNode, double> position;
    std::map<ConflictKey, double> conflict;

    static DualSolution zeros(const Instance& inst)
    {
        DualSolution d;
        d.item.assign(inst.num_items(), 0.0);
        d.time.assign(inst.horizon, 0.0);
        d.extant.assign(inst.num_extant(), 0.0);
        return d;
    }

    double time_at(int t) const { return time[t - 1]; }
    double position_at(const SpaceTimeNode& p) const
    {
        const auto it = position.find(p);
        return it == position.end() ? 0.0 : it->second;
    }
    double conflict_at(const ConflictKey& k) const
    {
        const auto it = conflict.find(k);
        return it == conflict.end() ? 0.0 : it->second;
    }
};

}
