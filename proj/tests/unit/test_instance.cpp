#include "mrr/instance.h"

#include <doctest.h>

#include <algorithm>

using namespace mrr;

namespace
{

Instance small_instance()
{
    Instance inst;
    inst.grid = GridMap(4, 4);
    inst.horizon = 10;
    inst.launcher = {0, 0};
    inst.fleet_size = 2;
    inst.capacity = 3;
    inst.items = {{0, {2, 1}, 50.0, 1, 2, 6}, {1, {3, 3}, 40.0, 2, 4, 9}};
    inst.extant = {{7, {1, 2}, 2}};
    return inst;
}

bool has(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

}

TEST_CASE("parse_map reads an open map")
{
    const auto g = parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
    CHECK(g.width() == 2);
    CHECK(g.height() == 2);
    CHECK(g.blocked_cells().empty());
}

TEST_CASE("parse_map marks blocked glyphs")
{
    const auto g = parse_map("type octile\nheight 2\nwidth 2\nmap\n.@\n..\n");
    CHECK(g.blocked_cells() == std::vector<Cell>{{1, 0}});
    const auto h = parse_map("type octile\nheight 1\nwidth 5\nmap\n.GOT@\n");
    CHECK(h.blocked_cells() == std::vector<Cell>{{2, 0}, {3, 0}, {4, 0}});
}

TEST_CASE("parse_map errors name the line")
{
    try
    {
        parse_map("type octile\nheight 3\nwidth 2\nmap\n..\n..\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK(std::string(e.what()).find("row count mismatch") != std::string::npos);
    }
    try
    {
        parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n.x\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).find("unknown glyph") != std::string::npos);
    }
    try
    {
        parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n..\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK(e.line() == 6);
    }
    CHECK_THROWS_AS(parse_map("type octile\nheigth 2\nwidth 2\nmap\n..\n..\n"), ParseError);
}

TEST_CASE("map round trip")
{
    GridMap g(5, 3, {{0, 0}, {4, 2}, {2, 1}});
    CHECK(parse_map(serialize_map(g)) == g);
    CHECK(serialize_map(parse_map(serialize_map(g))) == serialize_map(g));
}

TEST_CASE("validate_instance")
{
    auto inst = small_instance();
    CHECK(validate_instance(inst).empty());

    SUBCASE("item on blocked cell")
    {
        inst.items[1].id = 3;
        inst.grid.set_blocked(inst.items[1].cell, true);
        CHECK(has(validate_instance(inst), "item 3: cell blocked"));
    }
    SUBCASE("demand above capacity")
    {
        inst.items[0].demand = inst.capacity + 1;
        CHECK(has(validate_instance(inst), "item 0: demand exceeds capacity"));
    }
    SUBCASE("item on launcher")
    {
        inst.items[0].cell = inst.launcher;
        CHECK(has(validate_instance(inst), "item 0: cell is the launcher"));
    }
    SUBCASE("bad window")
    {
        inst.items[0].window_hi = inst.horizon + 1;
        CHECK(validate_instance(inst).size() == 1);
    }
    SUBCASE("positive costs")
    {
        inst.theta1 = 0.5;
        inst.theta2 = 1.0;
        CHECK(validate_instance(inst).size() == 2);
    }
    SUBCASE("shared extant start")
    {
        inst.extant.push_back({8, {1, 2}, 1});
        CHECK(validate_instance(inst).size() == 1);
    }
    SUBCASE("too many extant robots")
    {
        inst.fleet_size = 1;
        inst.extant.push_back({8, {3, 0}, 1});
        CHECK(has(validate_instance(inst), "extant: more extant robots than fleet_size"));
    }
}

TEST_CASE("instance JSON round trip")
{
    auto inst = small_instance();
    inst.grid.set_blocked({3, 0}, true);
    const auto text = instance_to_json(inst);
    CHECK(instance_from_json(text) == inst);
    CHECK_THROWS_AS(instance_from_json("{\"horizon\": 3}"), FormatError);
    CHECK_THROWS_AS(instance_from_json("not json"), FormatError);
}

TEST_CASE("generator, benchmark shape")
{
    GenParams p; // 25x25, 50 obstacles, 5 robots, 2 extant, T = 75, windows <= 25
    const auto inst = generate_instance(p, 42);
    CHECK(validate_instance(inst).empty());
    CHECK(inst.grid.width() == 25);
    CHECK(inst.grid.height() == 25);
    CHECK(inst.grid.blocked_cells().size() == 50);
    CHECK(inst.fleet_size == 5);
    CHECK(inst.num_extant() == 2);
    CHECK(inst.horizon == 75);
    CHECK(inst.num_items() == 10);
    for (const auto& item : inst.items)
    {
        CHECK(item.window_width() <= 25);
        CHECK(item.window_lo >= 1);
        CHECK(item.window_hi <= 75);
        CHECK(item.demand >= 1);
        CHECK(item.demand <= 3);
        CHECK(item.cell != inst.launcher);
    }
}

TEST_CASE("generator determinism and edge cases")
{
    GenParams p;
    p.num_items = 15;
    CHECK(generate_instance(p, 9) == generate_instance(p, 9));
    CHECK_FALSE(generate_instance(p, 9) == generate_instance(p, 10));

    p.num_items = 0;
    CHECK(generate_instance(p, 3).items.empty());

    p.horizon = 10;
    p.max_window = 40;
    p.num_items = 20;
    for (const auto& item : generate_instance(p, 5).items)
        CHECK(item.window_width() <= 10);

    GenParams bad;
    bad.width = bad.height = 3;
    bad.obstacles = 9;
    CHECK_THROWS_AS(generate_instance(bad, 1), std::invalid_argument);
    bad.obstacles = 0;
    bad.num_items = 9;
    CHECK_THROWS_AS(generate_instance(bad, 1), std::invalid_argument);
}

TEST_CASE("generator over many seeds stays valid")
{
    GenParams p;
    p.width = 8;
    p.height = 6;
    p.obstacles = 4;
    p.num_items = 6;
    p.horizon = 20;
    p.max_window = 7;
    for (std::uint64_t s = 0; s < 50; ++s)
    {
        const auto inst = generate_instance(p, s);
        CHECK(validate_instance(inst).empty());
        for (const auto& item : inst.items)
            CHECK(item.window_width() <= 7);
    }
}

TEST_CASE("bfs distances")
{
    GridMap g(3, 3, {{1, 0}, {1, 1}});
    const auto d = bfs_distances(g, {0, 0});
    CHECK(d[g.index({0, 0})] == 0);
    CHECK(d[g.index({2, 0})] == 6);
    CHECK(d[g.index({1, 0})] == -1);
}
