#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfov {

struct GridDims {
    int width{};
    int height{};

    bool operator==(const GridDims&) const = default;
};

struct CellCoord {
    int col{};
    int row{};

    bool operator==(const CellCoord&) const = default;
    auto operator<=>(const CellCoord&) const = default;
};

enum class CellStatus : std::uint8_t {
    NotVisible = 0,
    Visible = 1,
};

// Row-major: cells[row * width + col]. Row fills are contiguous writes.
struct VisibilityGrid {
    GridDims dims;
    std::vector<CellStatus> cells;

    CellStatus at(CellCoord c) const
    {
        return cells[static_cast<std::size_t>(c.row) * dims.width + c.col];
    }

    CellStatus& at(CellCoord c)
    {
        return cells[static_cast<std::size_t>(c.row) * dims.width + c.col];
    }

    bool in_bounds(CellCoord c) const
    {
        return c.col >= 0 && c.col < dims.width && c.row >= 0 && c.row < dims.height;
    }

    bool operator==(const VisibilityGrid&) const = default;
};

inline VisibilityGrid new_grid(GridDims dims, CellStatus init)
{
    if (dims.width < 1 || dims.height < 1)
        throw std::invalid_argument("new_grid: dims must be at least 1x1");
    VisibilityGrid g;
    g.dims = dims;
    g.cells.assign(static_cast<std::size_t>(dims.width) * dims.height, init);
    return g;
}

inline void reset_grid(VisibilityGrid& grid, CellStatus status)
{
    std::fill(grid.cells.begin(), grid.cells.end(), status);
}

inline void fill_row_span(VisibilityGrid& grid, int row, int col_lo, int col_hi, CellStatus status)
{
    if (row < 0 || row >= grid.dims.height)
        throw std::invalid_argument("fill_row_span: row out of range");
    if (col_lo > col_hi || col_lo < 0 || col_hi >= grid.dims.width)
        throw std::invalid_argument("fill_row_span: bad column span");
    auto* base = grid.cells.data() + static_cast<std::size_t>(row) * grid.dims.width;
    std::fill(base + col_lo, base + col_hi + 1, status);
}

inline std::vector<CellCoord> diff_grids(const VisibilityGrid& a, const VisibilityGrid& b)
{
    if (a.dims != b.dims)
        throw std::invalid_argument("diff_grids: dimension mismatch");
    std::vector<CellCoord> out;
    std::size_t i = 0;
    for (int row = 0; row < a.dims.height; ++row)
        for (int col = 0; col < a.dims.width; ++col, ++i)
            if (a.cells[i] != b.cells[i])
                out.push_back({col, row});
    return out;
}

// FOV dump format: line 1 "fovgrid <width> <height>", then height rows of
// width chars, '.' = Visible, '#' = NotVisible, row 0 first.
inline std::string dump_grid(const VisibilityGrid& grid)
{
    std::string out = "fovgrid " + std::to_string(grid.dims.width) + ' '
        + std::to_string(grid.dims.height) + '\n';
    std::size_t i = 0;
    for (int row = 0; row < grid.dims.height; ++row) {
        for (int col = 0; col < grid.dims.width; ++col, ++i)
            out += grid.cells[i] == CellStatus::Visible ? '.' : '#';
        out += '\n';
    }
    return out;
}

struct ParseError : std::runtime_error {
    int line;

    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_)
    {
    }
};

inline VisibilityGrid parse_grid_dump(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, "empty input");
    std::istringstream header(line);
    std::string magic;
    int width = 0, height = 0;
    if (!(header >> magic >> width >> height) || magic != "fovgrid")
        throw ParseError(1, "expected 'fovgrid <width> <height>'");
    if (width < 1 || height < 1)
        throw ParseError(1, "bad dimensions");
    VisibilityGrid g = new_grid({width, height}, CellStatus::Visible);
    for (int row = 0; row < height; ++row) {
        if (!std::getline(in, line))
            throw ParseError(row + 2, "missing grid row");
        if (static_cast<int>(line.size()) != width)
            throw ParseError(row + 2, "row width mismatch");
        for (int col = 0; col < width; ++col) {
            if (line[col] == '.')
                g.at({col, row}) = CellStatus::Visible;
            else if (line[col] == '#')
                g.at({col, row}) = CellStatus::NotVisible;
            else
                throw ParseError(row + 2, "unexpected character");
        }
    }
    return g;
}

} // namespace rfov
