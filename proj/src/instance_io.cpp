#include "mrr/instance.h"

#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace mrr
{

namespace
{

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t begin = 0;
    while (begin <= text.size())
    {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(begin, end - begin);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        begin = end + 1;
    }
    // A trailing newline produces one empty final line.
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

int parse_header_value(std::string_view line, std::string_view key, int line_no)
{
    if (line.substr(0, key.size()) != key || line.size() <= key.size() + 1 || line[key.size()] != ' ')
        throw ParseError(line_no, fmt::format("malformed header, expected '{} <n>'", key));
    const auto digits = line.substr(key.size() + 1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value <= 0)
        throw ParseError(line_no, fmt::format("malformed header, bad {} value '{}'", key, digits));
    return value;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}

GridMap parse_map(std::string_view text)
{
    const auto lines = split_lines(text);
    if (lines.size() < 4)
        throw ParseError(static_cast<int>(lines.size()) + 1, "malformed header, expected 4 header lines");
    if (lines[0].substr(0, 5) != "type " || lines[0].size() == 5)
        throw ParseError(1, "malformed header, expected 'type <name>'");
    const int height = parse_header_value(lines[1], "height", 2);
    const int width = parse_header_value(lines[2], "width", 3);
    if (lines[3] != "map")
        throw ParseError(4, "malformed header, expected 'map'");

    const int rows = static_cast<int>(lines.size()) - 4;
    if (rows != height)
        throw ParseError(rows < height ? static_cast<int>(lines.size()) + 1 : 5 + height,
                         fmt::format("row count mismatch, header says {} but {} rows given", height, rows));

    GridMap grid(width, height);
    for (int y = 0; y < height; ++y)
    {
        const auto row = lines[4 + y];
        const int line_no = 5 + y;
        if (static_cast<int>(row.size()) != width)
            throw ParseError(line_no,
                             fmt::format("row length mismatch, expected {} but got {}", width, row.size()));
        for (int x = 0; x < width; ++x)
        {
            switch (row[x])
            {
                case '.':
                case 'G':
                    break;
                case '@':
                case 'O':
                case 'T':
                    grid.set_blocked({x, y}, true);
                    break;
                default:
                    throw ParseError(line_no, fmt::format("unknown glyph '{}' at column {}", row[x], x));
            }
        }
    }
    return grid;
}

std::string serialize_map(const GridMap& grid)
{
    std::string out = fmt::format("type octile\nheight {}\nwidth {}\nmap\n", grid.height(), grid.width());
    for (int y = 0; y < grid.height(); ++y)
    {
        for (int x = 0; x < grid.width(); ++x)
            out.push_back(grid.is_blocked({x, y}) ? '@' : '.');
        out.push_back('\n');
    }
    return out;
}

GridMap load_map(const std::string& path)
{
    return parse_map(read_file(path));
}

using nlohmann::json;

namespace
{

json cell_json(Cell c)
{
    return json::array({c.x, c.y});
}

Cell json_cell(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw FormatError("cell must be a [x, y] array");
    return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}

std::string instance_to_json(const Instance& inst)
{
    json blocked = json::array();
    for (const auto c : inst.grid.blocked_cells())
        blocked.push_back(cell_json(c));
    json items = json::array();
    for (const auto& item : inst.items)
        items.push_back({{"id", item.id},
                         {"cell", cell_json(item.cell)},
                         {"reward", item.reward},
                         {"demand", item.demand},
                         {"window", json::array({item.window_lo, item.window_hi})}});
    json extant = json::array();
    for (const auto& robot : inst.extant)
        extant.push_back({{"id", robot.id},
                          {"cell", cell_json(robot.start)},
                          {"remaining_capacity", robot.remaining_capacity}});
    const json j = {{"grid", {{"width", inst.grid.width()}, {"height", inst.grid.height()}, {"blocked", blocked}}},
                    {"horizon", inst.horizon},
                    {"launcher", cell_json(inst.launcher)},
                    {"theta1", inst.theta1},
                    {"theta2", inst.theta2},
                    {"capacity", inst.capacity},
                    {"fleet_size", inst.fleet_size},
                    {"items", items},
                    {"extant", extant}};
    return j.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text)
{
    try
    {
        const auto j = json::parse(text);
        Instance inst;
        const auto& g = j.at("grid");
        std::vector<Cell> blocked;
        for (const auto& c : g.at("blocked"))
            blocked.push_back(json_cell(c));
        inst.grid = GridMap(g.at("width").get<int>(), g.at("height").get<int>(), blocked);
        inst.horizon = j.at("horizon").get<int>();
        inst.launcher = json_cell(j.at("launcher"));
        inst.theta1 = j.at("theta1").get<double>();
        inst.theta2 = j.at("theta2").get<double>();
        inst.capacity = j.at("capacity").get<int>();
        inst.fleet_size = j.at("fleet_size").get<int>();
        for (const auto& ji : j.at("items"))
        {
            Item item;
            item.id = ji.at("id").get<int>();
            item.cell = json_cell(ji.at("cell"));
            item.reward = ji.at("reward").get<double>();
            item.demand = ji.at("demand").get<int>();
            const auto& w = ji.at("window");
            if (!w.is_array() || w.size() != 2)
                throw FormatError("item window must be a [lo, hi] array");
            item.window_lo = w.at(0).get<int>();
            item.window_hi = w.at(1).get<int>();
            inst.items.push_back(item);
        }
        for (const auto& jr : j.at("extant"))
        {
            ExtantRobot robot;
            robot.id = jr.at("id").get<int>();
            robot.start = json_cell(jr.at("cell"));
            robot.remaining_capacity = jr.at("remaining_capacity").get<int>();
            inst.extant.push_back(robot);
        }
        return inst;
    }
    catch (const json::exception& e)
    {
        throw FormatError(fmt::format("instance JSON: {}", e.what()));
    }
    catch (const std::logic_error& e)
    {
        throw FormatError(fmt::format("instance JSON: {}", e.what()));
    }
}

Instance load_instance(const std::string& path)
{
    return instance_from_json(read_file(path));
}

void save_instance(const Instance& inst, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out << instance_to_json(inst);
}

}
