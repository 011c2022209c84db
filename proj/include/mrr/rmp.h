#pragma once

#include "mrr/duals.h"
#include "mrr/lp.h"
#include "mrr/route.h"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace mrr
{

struct RmpOptions
{
    // Item rows become <= 1 + xi_d with a surplus column costing theta_d.
    bool doi = true;
    // Position and conflict-pair rows; off for the collision-free relaxation.
    bool collision_rows = true;
    SimplexOptions simplex;
    int ilp_node_limit = 20000;
};

enum class AddStatus
{
    Added,
    Duplicate,
    Rejected,
};

struct AddResult
{
    AddStatus status = AddStatus::Added;
    int id = -1; // column id (existing id for duplicates)
    std::string reason;
};

struct RmpLpResult
{
    double objective = 0.0;
    std::vector<double> gamma; // per column id
    std::vector<double> xi;    // per item; empty without DOI
    DualSolution duals;
    int row_rounds = 0;   // working-row generation rounds
    long simplex_iterations = 0;
};

struct RmpIlpResult
{
    double objective = 0.0;
    std::vector<int> selected; // column ids with gamma = 1, ascending
    std::vector<double> xi;
    int nodes = 0;
    bool node_limit_hit = false;
};

// Restricted master problem. Column ids 0..R-1 are the dummy routes of the
// extant robots (cost -M, extant row only); real routes follow.
//
// Position and conflict rows are activated when a column touches them, but only
// rows that a solution violates join the LP ("working rows"); every other row
// is slack at the optimum and gets dual zero.
class RmpModel
{
  public:
    RmpModel(const Instance& inst, const SpaceTime& st, RmpOptions options = {});

    const Instance& instance() const { return *inst_; }
    const RmpOptions& options() const { return options_; }

    AddResult add_column(const Route& route);

    int num_columns() const { return static_cast<int>(columns_.size()); }
    int num_dummies() const { return inst_->num_extant(); }
    bool is_dummy(int id) const { return id < num_dummies(); }
    // Real route of column `id`; dummies have none.
    const Route& route(int id) const { return routes_[id - num_dummies()]; }
    double column_profit(int id) const { return columns_[id].cost; }
    double big_m() const { return big_m_; }

    std::size_t num_active_position_rows() const { return position_rows_.size(); }
    std::size_t num_active_conflict_rows() const { return conflict_rows_.size(); }
    std::size_t num_working_rows() const { return working_.size(); }

    RmpLpResult solve_lp();
    RmpIlpResult solve_ilp();

  private:
    struct Column
    {
        double cost = 0.0;
        std::vector<int> items;
        std::vector<int> times;
        std::vector<std::int64_t> positions;
        std::vector<std::int64_t> conflicts;
        int extant = -1;
    };
    // A working row: kind 0 = position, 1 = conflict pair.
    struct RowKey
    {
        int kind = 0;
        std::int64_t id = 0;
        auto operator<=>(const RowKey&) const = default;
    };
    struct Bound
    {
        int column = 0;
        bool upper_zero = true; // gamma <= 0, otherwise gamma >= 1
    };
    struct Solved
    {
        LpSolution lp;
        int rounds = 0;
        long iterations = 0;
    };

    Solved solve_with_rows(const std::vector<Bound>& bounds, bool warm);
    LpProblem build(const std::vector<Bound>& bounds) const;
    int num_xi() const { return options_.doi ? inst_->num_items() : 0; }
    // Working rows violated by gamma that are not yet in the working set.
    std::vector<RowKey> violated_rows(const std::vector<double>& gamma) const;
    std::vector<double> gamma_of(const LpSolution& lp) const;
    std::vector<double> xi_of(const LpSolution& lp) const;
    DualSolution duals_of(const LpSolution& lp) const;

    const Instance* inst_;
    const SpaceTime* st_;
    RmpOptions options_;
    double big_m_ = 0.0;
    std::vector<Column> columns_;
    std::vector<Route> routes_;
    std::set<std::vector<std::int64_t>> keys_;
    // Activated rows -> columns touching them.
    std::unordered_map<std::int64_t, std::vector<int>> position_rows_;
    std::unordered_map<std::int64_t, std::vector<int>> conflict_rows_;
    std::vector<RowKey> working_;
    std::set<RowKey> working_set_;
    std::vector<BasisVar> last_basis_;
};

// Resolves item over-coverage left by the surplus variables: the route with the
// largest column id keeps each item, the others drop the pickup (path kept).
// Input pairs are (column id, route).
std::vector<Route> repair_solution(const Instance& inst, std::vector<std::pair<int, Route>> selected);

}
