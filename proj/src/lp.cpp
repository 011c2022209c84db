#include "mrr/lp.h"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrr
{

namespace
{

// Internal variable layout: [0, n) structural, [n, n+m) slack of row i,
// [n+m, n+2m) artificial of row i.
class Simplex
{
  public:
    Simplex(const LpProblem& p, const SimplexOptions& o) :
        p_(p),
        o_(o),
        m_(p.num_rows()),
        n_(p.num_columns()),
        basis_(m_),
        position_(n_ + 2 * m_, -1),
        art_sign_(m_, 1.0),
        binv_(Eigen::MatrixXd::Identity(m_, m_)),
        xb_(m_),
        b_(m_)
    {
        max_iterations_ = o.max_iterations > 0 ? o.max_iterations : 20L * (m_ + n_) + 1000;
        for (int i = 0; i < m_; ++i)
            b_[i] = p.rhs[i];
        for (int i = 0; i < m_; ++i)
        {
            if (p.sense[i] == RowSense::LessEqual && p.rhs[i] >= 0.0)
            {
                set_basic(i, n_ + i);
            }
            else
            {
                art_sign_[i] = p.rhs[i] >= 0.0 ? 1.0 : -1.0;
                set_basic(i, n_ + m_ + i);
                binv_(i, i) = art_sign_[i];
            }
            xb_[i] = std::abs(p.rhs[i]);
        }
    }

    bool try_warm(const std::vector<BasisVar>& warm)
    {
        if (static_cast<int>(warm.size()) != m_)
            return false;
        std::vector<int> vars;
        for (const auto& v : warm)
        {
            if (v.kind == BasisVar::Kind::Column)
            {
                if (v.index < 0 || v.index >= n_)
                    return false;
                vars.push_back(v.index);
            }
            else
            {
                if (v.index < 0 || v.index >= m_ || p_.sense[v.index] != RowSense::LessEqual)
                    return false;
                vars.push_back(n_ + v.index);
            }
        }
        const auto saved_basis = basis_;
        const auto saved_position = position_;
        std::fill(position_.begin(), position_.end(), -1);
        bool ok = true;
        for (int i = 0; i < m_ && ok; ++i)
        {
            if (position_[vars[i]] >= 0)
                ok = false;
            else
                set_basic(i, vars[i]);
        }
        if (ok)
        {
            try
            {
                refactor();
            }
            catch (const LpError&)
            {
                ok = false;
            }
        }
        if (!ok)
        {
            basis_ = saved_basis;
            position_ = saved_position;
            binv_ = Eigen::MatrixXd::Identity(m_, m_);
            for (int i = 0; i < m_; ++i)
            {
                if (is_artificial(basis_[i]))
                    binv_(i, i) = art_sign_[i];
                xb_[i] = std::abs(p_.rhs[i]);
            }
            since_refactor_ = 0;
        }
        return ok;
    }

    LpSolution solve(bool warm)
    {
        LpSolution out;
        out.warm_started = warm;
        bool any_artificial = false;
        for (int i = 0; i < m_; ++i)
            any_artificial |= is_artificial(basis_[i]);
        if (any_artificial)
        {
            phase_ = 1;
            if (!iterate())
                throw LpError("phase 1 reported unbounded");
            double infeasibility = 0.0;
            for (int i = 0; i < m_; ++i)
                if (is_artificial(basis_[i]))
                    infeasibility += std::max(xb_[i], 0.0);
            double scale = 1.0;
            for (const auto v : p_.rhs)
                scale = std::max(scale, std::abs(v));
            if (infeasibility > o_.feasibility_tol * scale * 10.0)
            {
                out.status = LpStatus::Infeasible;
                out.iterations = iterations_;
                return out;
            }
            drive_out_artificials();
        }
        phase_ = 2;
        const bool bounded = iterate();
        out.iterations = iterations_;
        if (!bounded)
        {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.status = LpStatus::Optimal;
        for (int i = 0; i < m_; ++i)
        {
            if (is_artificial(basis_[i]))
            {
                out.basis.clear();
                break;
            }
            if (basis_[i] < n_)
                out.basis.push_back({BasisVar::Kind::Column, basis_[i]});
            else
                out.basis.push_back({BasisVar::Kind::Slack, basis_[i] - n_});
        }
        out.x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_)
                out.x[basis_[i]] = std::max(xb_[i], 0.0);
        out.objective = 0.0;
        for (int j = 0; j < n_; ++j)
            out.objective += p_.columns[j].cost * out.x[j];
        const auto y = duals();
        out.duals.assign(y.data(), y.data() + m_);
        return out;
    }

  private:
    bool is_artificial(int j) const { return j >= n_ + m_; }
    bool is_slack(int j) const { return j >= n_ && j < n_ + m_; }

    void set_basic(int row, int j)
    {
        basis_[row] = j;
        position_[j] = row;
    }

    bool eligible(int j) const
    {
        if (position_[j] >= 0)
            return false;
        if (is_artificial(j))
            return false;
        if (is_slack(j))
            return p_.sense[j - n_] == RowSense::LessEqual;
        return true;
    }

    double cost(int j) const
    {
        if (phase_ == 1)
            return is_artificial(j) ? -1.0 : 0.0;
        return j < n_ ? p_.columns[j].cost : 0.0;
    }

    template <class F>
    void for_each_entry(int j, F&& f) const
    {
        if (j < n_)
        {
            for (const auto& [row, coef] : p_.columns[j].entries)
                f(row, coef);
        }
        else if (is_slack(j))
        {
            f(j - n_, 1.0);
        }
        else
        {
            const int row = j - n_ - m_;
            f(row, art_sign_[row]);
        }
    }

    Eigen::VectorXd duals() const
    {
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i)
            cb[i] = cost(basis_[i]);
        return binv_.transpose() * cb;
    }

    Eigen::VectorXd column(int j) const
    {
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
        for_each_entry(j, [&](int row, double coef) { alpha.noalias() += coef * binv_.col(row); });
        return alpha;
    }

    void refactor()
    {
        Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
        for (int i = 0; i < m_; ++i)
            for_each_entry(basis_[i], [&](int row, double coef) { basis_matrix(row, i) = coef; });
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
        if (!(lu.rcond() > 1e-13))
            throw LpError(fmt::format("singular basis during refactorization (rcond {})", lu.rcond()));
        binv_ = lu.inverse();
        xb_ = binv_ * b_;
        for (int i = 0; i < m_; ++i)
        {
            if (!std::isfinite(xb_[i]))
                throw LpError("non-finite basic value after refactorization");
            if (xb_[i] < -1e-6)
                throw LpError(fmt::format("basis lost primal feasibility ({})", xb_[i]));
            if (xb_[i] < 0.0)
                xb_[i] = 0.0;
        }
        since_refactor_ = 0;
    }

    void pivot(int r, int entering, const Eigen::VectorXd& alpha)
    {
        const double pivot = alpha[r];
        Eigen::RowVectorXd row = binv_.row(r) / pivot;
        Eigen::VectorXd u = alpha;
        u[r] -= 1.0;
        binv_.noalias() -= u * row;
        position_[basis_[r]] = -1;
        set_basic(r, entering);
        ++since_refactor_;
    }

    // Returns false when unbounded.
    bool iterate()
    {
        bool bland = false;
        int degenerate_run = 0;
        while (true)
        {
            if (since_refactor_ >= o_.refactor_period)
                refactor();
            if (iterations_ >= max_iterations_)
                throw LpError(fmt::format("simplex iteration limit {} reached", max_iterations_));

            const auto y = duals();
            int entering = -1;
            double best = o_.optimality_tol;
            const int total = n_ + 2 * m_;
            for (int j = 0; j < total; ++j)
            {
                if (!eligible(j))
                    continue;
                double d = cost(j);
                for_each_entry(j, [&](int row, double coef) { d -= y[row] * coef; });
                if (d > best)
                {
                    entering = j;
                    best = d;
                    if (bland)
                        break;
                }
            }
            if (entering < 0)
                return true;
            ++iterations_;

            const auto alpha = column(entering);
            int leaving = -1;
            double ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i)
            {
                if (alpha[i] <= o_.pivot_tol)
                    continue;
                const double r = std::max(xb_[i], 0.0) / alpha[i];
                bool take = false;
                if (leaving < 0 || r < ratio - 1e-12)
                    take = true;
                else if (r <= ratio + 1e-12)
                    take = bland ? basis_[i] < basis_[leaving] : alpha[i] > alpha[leaving];
                if (take)
                {
                    leaving = i;
                    ratio = std::min(ratio, r);
                }
            }
            if (leaving < 0)
                return false;

            const double step = std::max(xb_[leaving], 0.0) / alpha[leaving];
            xb_ -= step * alpha;
            xb_[leaving] = step;
            for (int i = 0; i < m_; ++i)
                if (xb_[i] < 0.0 && xb_[i] > -o_.feasibility_tol)
                    xb_[i] = 0.0;
            pivot(leaving, entering, alpha);

            if (step <= o_.feasibility_tol)
            {
                if (++degenerate_run > o_.degenerate_limit)
                    bland = true;
            }
            else
            {
                degenerate_run = 0;
                bland = false;
            }
        }
    }

    void drive_out_artificials()
    {
        for (int r = 0; r < m_; ++r)
        {
            if (!is_artificial(basis_[r]))
                continue;
            const Eigen::RowVectorXd rho = binv_.row(r);
            int best_j = -1;
            double best_abs = 1e-7;
            for (int j = 0; j < n_ + m_; ++j)
            {
                if (!eligible(j))
                    continue;
                double v = 0.0;
                for_each_entry(j, [&](int row, double coef) { v += rho[row] * coef; });
                if (std::abs(v) > best_abs)
                {
                    best_abs = std::abs(v);
                    best_j = j;
                }
            }
            if (best_j < 0)
                continue; // redundant row; the artificial stays basic at zero
            const auto alpha = column(best_j);
            xb_[r] = 0.0;
            pivot(r, best_j, alpha);
        }
    }

    const LpProblem& p_;
    const SimplexOptions& o_;
    int m_;
    int n_;
    std::vector<int> basis_;
    std::vector<int> position_;
    std::vector<double> art_sign_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    Eigen::VectorXd b_;
    int phase_ = 1;
    long iterations_ = 0;
    long max_iterations_ = 0;
    int since_refactor_ = 0;
};

}

LpSolution solve_simplex(const LpProblem& problem, const SimplexOptions& options, const std::vector<BasisVar>* warm)
{
    for (const auto& col : problem.columns)
        for (const auto& [row, coef] : col.entries)
            if (row < 0 || row >= problem.num_rows() || !std::isfinite(coef))
                throw LpError("column entry references an invalid row or is not finite");
    Simplex simplex(problem, options);
    const bool warm_ok = warm != nullptr && simplex.try_warm(*warm);
    return simplex.solve(warm_ok);
}

}
