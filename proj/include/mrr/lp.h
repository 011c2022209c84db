#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace mrr
{

enum class RowSense
{
    LessEqual,
    Equal,
};

struct LpColumn
{
    double cost = 0.0;
    std::vector<std::pair<int, double>> entries; // (row, coefficient)
};

// max c'x  s.t.  A x (<= | =) b,  x >= 0
struct LpProblem
{
    std::vector<RowSense> sense;
    std::vector<double> rhs;
    std::vector<LpColumn> columns;

    int num_rows() const { return static_cast<int>(rhs.size()); }
    int num_columns() const { return static_cast<int>(columns.size()); }
    int add_row(RowSense s, double b)
    {
        sense.push_back(s);
        rhs.push_back(b);
        return num_rows() - 1;
    }
    int add_column(double cost, std::vector<std::pair<int, double>> entries)
    {
        columns.push_back({cost, std::move(entries)});
        return num_columns() - 1;
    }
};

struct SimplexOptions
{
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_period = 100;
    // Consecutive degenerate pivots before switching to Bland's rule.
    int degenerate_limit = 50;
    // Zero selects 20 * (rows + columns) + 1000.
    long max_iterations = 0;
};

// A basic variable: a problem column or the slack of a <= row.
struct BasisVar
{
    enum class Kind
    {
        Column,
        Slack,
    };
    Kind kind = Kind::Column;
    int index = 0;

    bool operator==(const BasisVar&) const = default;
};

enum class LpStatus
{
    Optimal,
    Infeasible,
    Unbounded,
};

struct LpSolution
{
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;     // per column
    std::vector<double> duals; // per row
    long iterations = 0;
    // Final basis, one entry per row; empty when an artificial stayed basic.
    std::vector<BasisVar> basis;
    bool warm_started = false;
};

class LpError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Two-phase revised simplex with a dense basis inverse. Dantzig pricing,
// falling back to Bland's rule on runs of degenerate pivots. Throws LpError on
// numerical failure or when the iteration limit is hit. A warm basis is used
// when it is square, nonsingular and primal feasible; otherwise the solve
// starts cold.
LpSolution solve_simplex(const LpProblem& problem, const SimplexOptions& options = {},
                         const std::vector<BasisVar>* warm = nullptr);

}
