#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "grid.hpp"

namespace rfov {

struct BlockMask {
    GridDims dims;
    std::vector<std::uint8_t> blocked; // row-major, 1 = vision-blocking

    bool at(CellCoord c) const
    {
        return blocked[static_cast<std::size_t>(c.row) * dims.width + c.col] != 0;
    }

    void set(CellCoord c, bool value = true)
    {
        blocked[static_cast<std::size_t>(c.row) * dims.width + c.col] = value ? 1 : 0;
    }
};

inline BlockMask empty_mask(GridDims dims)
{
    if (dims.width < 1 || dims.height < 1)
        throw std::invalid_argument("empty_mask: dims must be at least 1x1");
    return {dims, std::vector<std::uint8_t>(static_cast<std::size_t>(dims.width) * dims.height, 0)};
}

inline BlockMask mask_from_rects(const std::vector<Rect>& rects, GridDims dims)
{
    BlockMask m = empty_mask(dims);
    for (const Rect& r : rects)
        for (int row = r.row_lo; row <= r.row_hi; ++row)
            for (int col = r.col_lo; col <= r.col_hi; ++col)
                m.set({col, row});
    return m;
}

// Maximal 4-connected set of blocked cells, sorted by (row, col).
struct RectilinearRegion {
    std::vector<CellCoord> cells;
};

inline std::vector<RectilinearRegion> extract_regions(const BlockMask& mask)
{
    const int w = mask.dims.width, h = mask.dims.height;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<RectilinearRegion> out;
    std::vector<CellCoord> stack;
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            const std::size_t idx = static_cast<std::size_t>(row) * w + col;
            if (!mask.blocked[idx] || seen[idx])
                continue;
            RectilinearRegion region;
            stack.push_back({col, row});
            seen[idx] = 1;
            while (!stack.empty()) {
                const CellCoord c = stack.back();
                stack.pop_back();
                region.cells.push_back(c);
                const CellCoord nbrs[4] = {
                    {c.col - 1, c.row}, {c.col + 1, c.row}, {c.col, c.row - 1}, {c.col, c.row + 1}};
                for (const CellCoord& n : nbrs) {
                    if (n.col < 0 || n.col >= w || n.row < 0 || n.row >= h)
                        continue;
                    const std::size_t ni = static_cast<std::size_t>(n.row) * w + n.col;
                    if (mask.blocked[ni] && !seen[ni]) {
                        seen[ni] = 1;
                        stack.push_back(n);
                    }
                }
            }
            std::sort(region.cells.begin(), region.cells.end(),
                [](CellCoord a, CellCoord b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
            out.push_back(std::move(region));
        }
    }
    return out;
}

namespace detail {

// Kuhn's augmenting-path bipartite matching.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(int left, int right)
        : adj_(left), match_left_(left, -1), match_right_(right, -1)
    {
    }

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    int solve()
    {
        int matched = 0;
        for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
            visited_.assign(match_right_.size(), 0);
            if (try_augment(l))
                ++matched;
        }
        return matched;
    }

    const std::vector<int>& match_left() const { return match_left_; }
    const std::vector<int>& match_right() const { return match_right_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

private:
    bool try_augment(int l)
    {
        for (int r : adj_[l]) {
            if (visited_[r])
                continue;
            visited_[r] = 1;
            if (match_right_[r] < 0 || try_augment(match_right_[r])) {
                match_left_[l] = r;
                match_right_[r] = l;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_;
    std::vector<std::uint8_t> visited_;
};

} // namespace detail

// Minimal partition of a rectilinear region into rectangles: cut a maximum
// independent set of chords joining cogrid concave vertices (Konig's theorem
// on the chord conflict graph), then resolve leftover concave vertices with
// single axis cuts. Lattice points where two region cells meet only
// diagonally need no cut: the cells are not 4-adjacent, so no rectangle can
// span the contact anyway.
inline std::vector<Rect> dissect_min_rects(const RectilinearRegion& region)
{
    if (region.cells.empty())
        throw std::invalid_argument("dissect_min_rects: empty region");

    int x0 = region.cells.front().col, x1 = x0;
    int y0 = region.cells.front().row, y1 = y0;
    for (const CellCoord& c : region.cells) {
        x0 = std::min(x0, c.col);
        x1 = std::max(x1, c.col);
        y0 = std::min(y0, c.row);
        y1 = std::max(y1, c.row);
    }
    const int w = x1 - x0 + 1, h = y1 - y0 + 1;

    std::vector<std::uint8_t> in(static_cast<std::size_t>(w) * h, 0);
    auto in_region = [&](int x, int y) {
        // absolute cell coords
        if (x < x0 || x > x1 || y < y0 || y > y1)
            return false;
        return in[static_cast<std::size_t>(y - y0) * w + (x - x0)] != 0;
    };
    for (const CellCoord& c : region.cells)
        in[static_cast<std::size_t>(c.row - y0) * w + (c.col - x0)] = 1;

    // Lattice points use absolute coordinates; point (x,y) touches cells
    // (x-1,y-1), (x,y-1), (x-1,y), (x,y).
    struct Vertex {
        int x, y;
        bool missing_up; // the absent quadrant is NE or NW
    };
    std::vector<Vertex> concave;
    for (int y = y0; y <= y1 + 1; ++y) {
        for (int x = x0; x <= x1 + 1; ++x) {
            const bool nw = in_region(x - 1, y - 1), ne = in_region(x, y - 1);
            const bool sw = in_region(x - 1, y), se = in_region(x, y);
            if (nw + ne + sw + se == 3)
                concave.push_back({x, y, !(nw && ne)});
        }
    }

    struct Chord {
        int x1, y1, x2, y2; // endpoints, x1 <= x2, y1 <= y2
    };
    std::vector<Chord> h_chords, v_chords;

    // Chords join consecutive cogrid concave vertices; every unit edge on
    // the open chord must have region cells on both sides.
    {
        auto by_row = concave;
        std::sort(by_row.begin(), by_row.end(),
            [](const Vertex& a, const Vertex& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
        for (std::size_t i = 1; i < by_row.size(); ++i) {
            const Vertex &a = by_row[i - 1], &b = by_row[i];
            if (a.y != b.y)
                continue;
            bool interior = a.x < b.x;
            for (int x = a.x; x < b.x && interior; ++x)
                interior = in_region(x, a.y - 1) && in_region(x, a.y);
            if (interior)
                h_chords.push_back({a.x, a.y, b.x, b.y});
        }
        auto by_col = concave;
        std::sort(by_col.begin(), by_col.end(),
            [](const Vertex& a, const Vertex& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
        for (std::size_t i = 1; i < by_col.size(); ++i) {
            const Vertex &a = by_col[i - 1], &b = by_col[i];
            if (a.x != b.x)
                continue;
            bool interior = a.y < b.y;
            for (int y = a.y; y < b.y && interior; ++y)
                interior = in_region(a.x - 1, y) && in_region(a.x, y);
            if (interior)
                v_chords.push_back({a.x, a.y, a.x, b.y});
        }
    }

    // Conflict graph: an H chord and a V chord conflict when they share a
    // point (proper crossing or common endpoint). Maximum independent set =
    // complement of a minimum vertex cover, via Konig from a maximum
    // matching.
    detail::BipartiteMatcher matcher(static_cast<int>(h_chords.size()), static_cast<int>(v_chords.size()));
    for (int i = 0; i < static_cast<int>(h_chords.size()); ++i)
        for (int j = 0; j < static_cast<int>(v_chords.size()); ++j) {
            const Chord &hc = h_chords[i], &vc = v_chords[j];
            if (vc.x1 >= hc.x1 && vc.x1 <= hc.x2 && hc.y1 >= vc.y1 && hc.y1 <= vc.y2)
                matcher.add_edge(i, j);
        }
    matcher.solve();

    std::vector<std::uint8_t> h_reach(h_chords.size(), 0), v_reach(v_chords.size(), 0);
    {
        std::vector<int> stack;
        for (int i = 0; i < static_cast<int>(h_chords.size()); ++i)
            if (matcher.match_left()[i] < 0) {
                h_reach[i] = 1;
                stack.push_back(i);
            }
        while (!stack.empty()) {
            const int l = stack.back();
            stack.pop_back();
            for (int r : matcher.adjacency()[l]) {
                if (v_reach[r])
                    continue;
                v_reach[r] = 1;
                const int l2 = matcher.match_right()[r];
                if (l2 >= 0 && !h_reach[l2]) {
                    h_reach[l2] = 1;
                    stack.push_back(l2);
                }
            }
        }
    }

    std::vector<Chord> cuts;
    for (int i = 0; i < static_cast<int>(h_chords.size()); ++i)
        if (h_reach[i])
            cuts.push_back(h_chords[i]);
    for (int j = 0; j < static_cast<int>(v_chords.size()); ++j)
        if (!v_reach[j])
            cuts.push_back(v_chords[j]);

    // Wall edges: region boundary plus cuts. wall_h (x,y) separates cells
    // (x,y-1) | (x,y); wall_v (x,y) separates (x-1,y) | (x,y). Lattice
    // bitmaps are (w+1) x (h+1) in local coords.
    const int lw = w + 1, lh = h + 1;
    std::vector<std::uint8_t> wall_h(static_cast<std::size_t>(lw) * lh, 0);
    std::vector<std::uint8_t> wall_v(static_cast<std::size_t>(lw) * lh, 0);
    std::vector<std::uint8_t> cut_at(static_cast<std::size_t>(lw) * lh, 0);
    auto lidx = [&](int x, int y) { return static_cast<std::size_t>(y - y0) * lw + (x - x0); };
    for (int y = y0; y <= y1 + 1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (in_region(x, y - 1) != in_region(x, y))
                wall_h[lidx(x, y)] = 1;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1 + 1; ++x)
            if (in_region(x - 1, y) != in_region(x, y))
                wall_v[lidx(x, y)] = 1;

    auto place_h = [&](int x, int y) {
        wall_h[lidx(x, y)] = 1;
        cut_at[lidx(x, y)] = 1;
        cut_at[lidx(x + 1, y)] = 1;
    };
    auto place_v = [&](int x, int y) {
        wall_v[lidx(x, y)] = 1;
        cut_at[lidx(x, y)] = 1;
        cut_at[lidx(x, y + 1)] = 1;
    };
    for (const Chord& c : cuts) {
        if (c.y1 == c.y2)
            for (int x = c.x1; x < c.x2; ++x)
                place_h(x, c.y1);
        else
            for (int y = c.y1; y < c.y2; ++y)
                place_v(c.x1, y);
    }

    // Single cuts from still-unresolved concave vertices, along the interior
    // vertical direction, until the boundary or an existing cut.
    for (const Vertex& v : concave) {
        if (cut_at[lidx(v.x, v.y)])
            continue;
        const int step = v.missing_up ? +1 : -1; // down when NE/NW absent
        int y = v.y;
        for (;;) {
            const int edge_y = step > 0 ? y : y - 1;
            if (!(in_region(v.x - 1, edge_y) && in_region(v.x, edge_y)))
                break;
            place_v(v.x, edge_y);
            y += step;
            if (wall_h[lidx(v.x - 1, y)] || wall_h[lidx(v.x, y)]
                || wall_v[lidx(v.x, step > 0 ? y : y - 1)])
                break;
        }
    }

    // Sweep the cut pieces; each must now be a rectangle.
    std::vector<std::uint8_t> assigned(static_cast<std::size_t>(w) * h, 0);
    std::vector<Rect> out;
    std::vector<CellCoord> stack;
    for (const CellCoord& start : region.cells) {
        if (assigned[static_cast<std::size_t>(start.row - y0) * w + (start.col - x0)])
            continue;
        Rect piece{start.col, start.row, start.col, start.row};
        std::int64_t count = 0;
        stack.push_back(start);
        assigned[static_cast<std::size_t>(start.row - y0) * w + (start.col - x0)] = 1;
        while (!stack.empty()) {
            const CellCoord c = stack.back();
            stack.pop_back();
            ++count;
            piece.col_lo = std::min(piece.col_lo, c.col);
            piece.col_hi = std::max(piece.col_hi, c.col);
            piece.row_lo = std::min(piece.row_lo, c.row);
            piece.row_hi = std::max(piece.row_hi, c.row);
            struct Step {
                CellCoord to;
                bool vertical_wall;
                int wx, wy;
            };
            const Step steps[4] = {
                {{c.col - 1, c.row}, true, c.col, c.row},
                {{c.col + 1, c.row}, true, c.col + 1, c.row},
                {{c.col, c.row - 1}, false, c.col, c.row},
                {{c.col, c.row + 1}, false, c.col, c.row + 1},
            };
            for (const Step& s : steps) {
                if (!in_region(s.to.col, s.to.row))
                    continue;
                if (s.vertical_wall ? wall_v[lidx(s.wx, s.wy)] : wall_h[lidx(s.wx, s.wy)])
                    continue;
                auto& flag = assigned[static_cast<std::size_t>(s.to.row - y0) * w + (s.to.col - x0)];
                if (!flag) {
                    flag = 1;
                    stack.push_back(s.to);
                }
            }
        }
        if (count != piece.cell_count())
            throw std::logic_error("dissect_min_rects: piece is not rectangular");
        out.push_back(piece);
    }
    return out;
}

} // namespace rfov
