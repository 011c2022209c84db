#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mrr
{

// Largest item count the pricing label sets can represent.
inline constexpr int kMaxItems = 256;

struct Cell
{
    int x = 0;
    int y = 0;

    auto operator<=>(const Cell&) const = default;
};

// Rectangular 4-neighbour grid. Cells are indexed row-major, y * width + x.
class GridMap
{
  public:
    GridMap() = default;
    GridMap(int width, int height, const std::vector<Cell>& blocked = {});

    int width() const { return width_; }
    int height() const { return height_; }
    int num_cells() const { return width_ * height_; }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
    bool is_blocked(Cell c) const { return blocked_[index(c)] != 0; }
    bool passable(Cell c) const { return in_bounds(c) && !is_blocked(c); }
    void set_blocked(Cell c, bool blocked);

    int index(Cell c) const { return c.y * width_ + c.x; }
    Cell cell(int index) const { return {index % width_, index / width_}; }

    // Blocked cells in lexicographic (x, y) order.
    std::vector<Cell> blocked_cells() const;
    int free_count() const;

    bool operator==(const GridMap&) const = default;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> blocked_;
};

struct Item
{
    int id = 0;
    Cell cell;
    double reward = 0.0;
    int demand = 1;
    int window_lo = 1;
    int window_hi = 1;

    int window_width() const { return window_hi - window_lo + 1; }
    bool operator==(const Item&) const = default;
};

struct ExtantRobot
{
    int id = 0;
    Cell start;
    int remaining_capacity = 0;

    bool operator==(const ExtantRobot&) const = default;
};

// Times are 1-based: t in {1, ..., horizon}.
struct Instance
{
    GridMap grid;
    int horizon = 1;
    Cell launcher;
    std::vector<Item> items;
    std::vector<ExtantRobot> extant;
    int fleet_size = 1;
    double theta1 = -1.0;
    double theta2 = -1.0;
    int capacity = 1;

    int num_items() const { return static_cast<int>(items.size()); }
    int num_extant() const { return static_cast<int>(extant.size()); }

    // Position of the item/robot with the given external id, or -1.
    int item_index(int id) const;
    int extant_index(int id) const;

    bool operator==(const Instance&) const = default;
};

// Every violated invariant, one message per violation naming the field and rule.
std::vector<std::string> validate_instance(const Instance& inst);

// Shortest 4-neighbour distance from `from` to every cell (-1 if unreachable or blocked).
std::vector<int> bfs_distances(const GridMap& grid, Cell from);

// ---------------------------------------------------------------------------
// MovingAI map format
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

GridMap parse_map(std::string_view text);
std::string serialize_map(const GridMap& grid);
GridMap load_map(const std::string& path);

// ---------------------------------------------------------------------------
// Instance JSON
// ---------------------------------------------------------------------------

class FormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(std::string_view text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

struct GenParams
{
    // Benchmark map; when set the launcher is the free cell closest to the centre.
    std::optional<GridMap> map;
    // Synthetic open grid with random obstacles, used when `map` is empty.
    int width = 25;
    int height = 25;
    int obstacles = 50;

    int num_items = 10;
    int fleet_size = 5;
    int num_extant = 2;
    int horizon = 75;
    int max_window = 25;
    int capacity = 6;
    double reward = 100.0;
    double theta1 = -1.0;
    double theta2 = -1.0;
    std::vector<int> demand_choices{1, 2, 3};
    // Remaining capacity of extant robots; a negative value means full capacity.
    int extant_capacity = -1;
};

Instance generate_instance(const GenParams& params, std::uint64_t seed);

}
