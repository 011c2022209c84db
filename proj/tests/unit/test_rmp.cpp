#include "mrr/rmp.h"

#include "oracles.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mrr;

namespace
{

// 5x1 corridor, launcher at the west end.
Instance corridor()
{
    Instance inst;
    inst.grid = GridMap(5, 1);
    inst.horizon = 25;
    inst.launcher = {0, 0};
    inst.fleet_size = 2;
    inst.capacity = 3;
    inst.items = {{0, {2, 0}, 30.0, 1, 1, 20}, {1, {4, 0}, 20.0, 1, 1, 25}};
    return inst;
}

Route make_route(const Instance& inst, RouteSource src, int t0, const std::vector<int>& xs,
                 const std::vector<Pickup>& pickups)
{
    Route r;
    r.source = src;
    for (std::size_t k = 0; k < xs.size(); ++k)
        r.path.push_back({{xs[k], 0}, t0 + static_cast<int>(k)});
    r.pickups = pickups;
    r.profit = route_profit(inst, r);
    return r;
}

// Subset enumeration over the real columns, every row checked directly.
double brute_ilp(const Instance& inst, const std::vector<Route>& routes, bool doi, double big_m)
{
    const int n = static_cast<int>(routes.size());
    double best = -std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < (1 << n); ++mask)
    {
        std::vector<int> cover(inst.num_items(), 0);
        std::vector<int> fleet(inst.horizon + 1, 0);
        std::vector<int> owner(inst.num_extant(), 0);
        std::map<SpaceTimeNode, int> pos;
        std::map<ConflictKey, int> pairs;
        double value = 0.0;
        bool ok = true;
        for (int i = 0; i < n; ++i)
        {
            if (!(mask >> i & 1))
                continue;
            const auto& r = routes[i];
            value += r.profit;
            for (const auto& p : r.pickups)
                ++cover[p.item];
            for (const auto& node : r.path)
            {
                ++fleet[node.t];
                ok &= ++pos[node] <= 1;
            }
            for (const auto& k : route_conflicts(r))
                ok &= ++pairs[k] <= 1;
            if (r.source.is_extant())
                ++owner[r.source.robot];
        }
        for (int t = 1; t <= inst.horizon; ++t)
            ok &= fleet[t] <= inst.fleet_size;
        for (int d = 0; d < inst.num_items(); ++d)
        {
            if (doi)
                value -= inst.items[d].reward * std::max(0, cover[d] - 1);
            else
                ok &= cover[d] <= 1;
        }
        for (int r = 0; r < inst.num_extant(); ++r)
        {
            ok &= owner[r] <= 1;
            if (owner[r] == 0)
                value -= big_m;
        }
        if (ok)
            best = std::max(best, value);
    }
    return best;
}

}

TEST_CASE("dummy columns only")
{
    auto inst = corridor();
    inst.extant = {{5, {3, 0}, 1}, {6, {1, 0}, 2}};
    const SpaceTime st(inst.grid, inst.horizon);
    RmpModel rmp(inst, st);
    CHECK(rmp.num_columns() == 2);
    CHECK(rmp.big_m() == doctest::Approx(30 + 20 + 2 * 25 * 2 + 1));
    const auto lp = rmp.solve_lp();
    CHECK(lp.objective == doctest::Approx(-2 * rmp.big_m()));
    CHECK(lp.gamma[0] == doctest::Approx(1));
    CHECK(lp.gamma[1] == doctest::Approx(1));
}

TEST_CASE("a real extant route replaces its dummy")
{
    auto inst = corridor();
    inst.theta1 = -2.0;
    inst.theta2 = -3.0;
    inst.extant = {{5, {4, 0}, 1}};
    const SpaceTime st(inst.grid, inst.horizon);
    RmpModel rmp(inst, st);
    const auto r = make_route(inst, RouteSource::extant(0), 1, {4, 3, 2, 1, 0}, {});
    CHECK(r.profit == doctest::Approx(-22)); // 5 steps * -2, 4 moves * -3
    REQUIRE(rmp.add_column(r).status == AddStatus::Added);
    const auto lp = rmp.solve_lp();
    CHECK(lp.objective == doctest::Approx(-22));
    CHECK(lp.gamma[1] == doctest::Approx(1));
    CHECK(lp.gamma[0] == doctest::Approx(0));
    CHECK(lp.duals.extant[0] == doctest::Approx(-22));

    const auto ilp = rmp.solve_ilp();
    CHECK(ilp.objective == doctest::Approx(-22));
    CHECK(ilp.selected == std::vector<int>{1});
}

TEST_CASE("add_column registers rows, dedups and rejects")
{
    const auto inst = corridor();
    const SpaceTime st(inst.grid, inst.horizon);
    RmpModel rmp(inst, st);
    const auto r = make_route(inst, RouteSource::launcher(), 4, {0, 1, 2, 1, 0}, {{0, 6}});
    const auto a = rmp.add_column(r);
    CHECK(a.status == AddStatus::Added);
    CHECK(a.id == 0);
    CHECK(rmp.num_active_position_rows() == 5);
    CHECK(rmp.num_active_conflict_rows() == 4);
    const auto again = rmp.add_column(r);
    CHECK(again.status == AddStatus::Duplicate);
    CHECK(again.id == 0);
    CHECK(rmp.num_columns() == 1);

    // Dual of item 0 shows up in the route's reduced cost, so the row carries it.
    const auto lp = rmp.solve_lp();
    CHECK(lp.objective == doctest::Approx(30 - 5 - 4));
    CHECK(lp.gamma[0] == doctest::Approx(1));

    auto heavy = inst;
    heavy.items[0].demand = 2;
    heavy.items[1].demand = 2;
    RmpModel rmp2(heavy, st);
    const auto big = make_route(heavy, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 3, 2, 1, 0}, {{0, 3}, {1, 5}});
    const auto rej = rmp2.add_column(big);
    CHECK(rej.status == AddStatus::Rejected);
    CHECK(rej.reason.find("capacity exceeded") != std::string::npos);

    auto wrong = r;
    wrong.profit += 1.0;
    CHECK(rmp.add_column(wrong).status == AddStatus::Rejected);
}

TEST_CASE("toy model matches hand-solved optimum")
{
    // Three routes: both items, item 0 only, item 1 only, at disjoint times.
    const auto inst = corridor();
    const SpaceTime st(inst.grid, inst.horizon);
    for (const bool doi : {false, true})
    {
        RmpOptions opts;
        opts.doi = doi;
        RmpModel rmp(inst, st, opts);
        const auto both = make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 4, 3, 2, 1, 0}, {{0, 3}, {1, 5}});
        const auto first = make_route(inst, RouteSource::launcher(), 10, {0, 1, 2, 1, 0}, {{0, 12}});
        const auto second = make_route(inst, RouteSource::launcher(), 15, {0, 1, 2, 3, 4, 3, 2, 1, 0}, {{1, 19}});
        CHECK(both.profit == 33);
        CHECK(first.profit == 21);
        CHECK(second.profit == 3);
        rmp.add_column(both);
        rmp.add_column(first);
        rmp.add_column(second);
        const auto lp = rmp.solve_lp();
        CHECK(lp.objective == doctest::Approx(33));
        CHECK(lp.objective == doctest::Approx(oracle::full_master_lp(inst, {both, first, second})));
        // max Gamma_both vs Gamma_first + Gamma_second, hand-solved.
        CHECK(lp.gamma[0] == doctest::Approx(1));
        for (std::size_t id = 0; id < 3; ++id)
        {
            const auto& route = rmp.route(static_cast<int>(id));
            CHECK(oracle::reduced_cost(inst, route, lp.duals) <= 1e-6);
        }
        for (const auto v : lp.duals.item)
            CHECK(v >= 0);
        if (doi)
            for (int d = 0; d < inst.num_items(); ++d)
                CHECK(lp.duals.item[d] <= inst.items[d].reward + 1e-7);
    }
}

TEST_CASE("fractional odd cycle: LP at one half, ILP picks one")
{
    Instance inst;
    inst.grid = GridMap(3, 3);
    inst.horizon = 30;
    inst.launcher = {1, 1};
    inst.fleet_size = 3;
    inst.capacity = 2;
    inst.items = {{0, {0, 1}, 40, 1, 1, 30}, {1, {1, 0}, 40, 1, 1, 30}, {2, {2, 1}, 40, 1, 1, 30}};
    const SpaceTime st(inst.grid, inst.horizon);
    auto route = [&](int t0, std::vector<Cell> cells, std::vector<Pickup> p) {
        Route r;
        for (std::size_t k = 0; k < cells.size(); ++k)
            r.path.push_back({cells[k], t0 + static_cast<int>(k)});
        r.pickups = std::move(p);
        r.profit = route_profit(inst, r);
        return r;
    };
    // Each pair of items, one route per pair, at disjoint times.
    const auto ab = route(1, {{1, 1}, {0, 1}, {0, 0}, {1, 0}, {1, 1}}, {{0, 2}, {1, 4}});
    const auto bc = route(8, {{1, 1}, {1, 0}, {2, 0}, {2, 1}, {1, 1}}, {{1, 9}, {2, 11}});
    const auto ca = route(15, {{1, 1}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}, {1, 1}}, {{2, 16}, {0, 20}});
    for (const bool doi : {false, true})
    {
        RmpOptions opts;
        opts.doi = doi;
        RmpModel rmp(inst, st, opts);
        rmp.add_column(ab);
        rmp.add_column(bc);
        rmp.add_column(ca);
        const auto lp = rmp.solve_lp();
        CHECK(lp.objective == doctest::Approx(0.5 * (ab.profit + bc.profit + ca.profit)));
        for (const auto g : lp.gamma)
            CHECK(g == doctest::Approx(0.5));
        const auto ilp = rmp.solve_ilp();
        CHECK(ilp.objective == doctest::Approx(brute_ilp(inst, {ab, bc, ca}, doi, rmp.big_m())));
        CHECK(ilp.objective <= lp.objective + 1e-6);
    }
}

TEST_CASE("integral LP needs no branching")
{
    const auto inst = corridor();
    const SpaceTime st(inst.grid, inst.horizon);
    RmpModel rmp(inst, st);
    rmp.add_column(make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 1, 0}, {{0, 3}}));
    const auto lp = rmp.solve_lp();
    const auto ilp = rmp.solve_ilp();
    CHECK(ilp.nodes == 1);
    CHECK(ilp.objective == doctest::Approx(lp.objective));
    CHECK(ilp.selected == std::vector<int>{0});
}

TEST_CASE("identical-incidence columns collapse to one")
{
    // Same items and occupied cells, different pickup time.
    auto inst = corridor();
    const SpaceTime st(inst.grid, inst.horizon);
    RmpOptions opts;
    opts.doi = false;
    RmpModel rmp(inst, st, opts);
    const auto a = make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 2, 1, 0}, {{0, 3}});
    const auto b = make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 2, 1, 0}, {{0, 4}});
    CHECK(rmp.add_column(a).status == AddStatus::Added);
    CHECK(rmp.add_column(b).status == AddStatus::Duplicate);
    rmp.solve_lp();
    const auto ilp = rmp.solve_ilp();
    CHECK(ilp.selected == std::vector<int>{0});
    CHECK(ilp.objective == doctest::Approx(a.profit));
}

TEST_CASE("ILP equals subset enumeration on random ten-column models")
{
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int trial = 0; checked < 12 && trial < 100; ++trial)
    {
        auto inst = oracle::tiny_instance(rng, 3, 3, 7, 3, 2, trial % 2, 5);
        for (auto& item : inst.items)
            item.reward += 10;
        auto all = oracle::enumerate_routes(inst);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<Route> pick;
        for (const auto& r : all)
        {
            if (pick.size() == 10)
                break;
            if (!r.pickups.empty() || r.source.is_extant())
                pick.push_back(r);
        }
        if (pick.size() < 10)
            continue;
        const SpaceTime st(inst.grid, inst.horizon);
        for (const bool doi : {false, true})
        {
            RmpOptions opts;
            opts.doi = doi;
            RmpModel rmp(inst, st, opts);
            std::vector<Route> added;
            for (const auto& r : pick)
                if (rmp.add_column(r).status == AddStatus::Added)
                    added.push_back(r);
            rmp.solve_lp();
            const auto ilp = rmp.solve_ilp();
            CHECK(ilp.objective == doctest::Approx(brute_ilp(inst, added, doi, rmp.big_m())).epsilon(1e-9));
        }
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("repair keeps the item on the largest column id")
{
    auto inst = corridor();
    inst.items.push_back({5, {3, 0}, 15.0, 1, 1, 25});
    const auto r2 = make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 3, 2, 1, 0}, {{0, 3}, {2, 4}});
    const auto r7 = make_route(inst, RouteSource::launcher(), 10, {0, 1, 2, 3, 2, 1, 0}, {{2, 13}});
    const auto fixed = repair_solution(inst, {{7, r7}, {2, r2}});
    REQUIRE(fixed.size() == 2);
    CHECK(fixed[0].pickups == std::vector<Pickup>{{0, 3}});
    CHECK(fixed[0].profit == doctest::Approx(r2.profit - 15.0));
    CHECK(fixed[0].path == r2.path);
    CHECK(fixed[1] == r7);

    const auto untouched = repair_solution(inst, {{2, r2}});
    CHECK(untouched.front() == r2);
}

TEST_CASE("working rows resolve a collision")
{
    // Two single-item routes through the same cell at the same time.
    const auto inst = corridor();
    const SpaceTime st(inst.grid, inst.horizon);
    RmpModel rmp(inst, st);
    const auto a = make_route(inst, RouteSource::launcher(), 1, {0, 1, 2, 1, 0}, {{0, 3}});
    const auto b = make_route(inst, RouteSource::launcher(), 2, {0, 1, 2, 3, 4, 3, 2, 1, 0}, {{1, 6}});
    rmp.add_column(a);
    rmp.add_column(b);
    const auto lp = rmp.solve_lp();
    CHECK(lp.objective == doctest::Approx(oracle::full_master_lp(inst, {a, b})));
    CHECK(rmp.num_working_rows() > 0);
    CHECK(lp.gamma[0] + lp.gamma[1] <= 1.5);
}
