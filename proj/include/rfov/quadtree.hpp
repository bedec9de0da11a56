#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "grid.hpp"

namespace rfov {

// Squared Euclidean distance from the source to the closed geometric extent
// of a cell-space region; 0 when the source is inside.
inline std::int64_t region_distance(const Rect& region, GeomPoint source)
{
    const Extent e = extent_of(region);
    const std::int64_t dx = std::max<std::int64_t>({e.x_lo - source.x, 0, source.x - e.x_hi});
    const std::int64_t dy = std::max<std::int64_t>({e.y_lo - source.y, 0, source.y - e.y_hi});
    return dx * dx + dy * dy;
}

// Closed geometric extents touch or overlap (shared boundary counts).
constexpr bool rects_touch(const Rect& a, const Rect& b)
{
    return a.col_lo <= b.col_hi + 1 && b.col_lo <= a.col_hi + 1 && a.row_lo <= b.row_hi + 1
        && b.row_lo <= a.row_hi + 1;
}

// Cell ranges share at least one cell (geometric interiors overlap).
constexpr bool rects_overlap(const Rect& a, const Rect& b)
{
    return a.col_lo <= b.col_hi && b.col_lo <= a.col_hi && a.row_lo <= b.row_hi
        && b.row_lo <= a.row_hi;
}

struct QuadNode {
    Rect region;
    std::array<int, 4> child{-1, -1, -1, -1}; // NW, NE, SW, SE; -1 = absent
    std::vector<int> rect_ids;                // leaf payload
    bool leaf{true};
};

// A rect is stored in every leaf whose region's closed extent it touches, so
// a point on a leaf boundary still finds every rectangle incident to it.
struct Quadtree {
    GridDims dims;
    int leaf_capacity{4};
    std::vector<Rect> rects; // by id
    std::vector<QuadNode> nodes;

    const QuadNode& root() const { return nodes[0]; }
};

inline Quadtree build_quadtree(const std::vector<Rect>& rects, GridDims dims, int n = 4)
{
    if (n < 1)
        throw std::invalid_argument("build_quadtree: capacity must be at least 1");
    if (dims.width < 1 || dims.height < 1)
        throw std::invalid_argument("build_quadtree: dims must be at least 1x1");
    for (const Rect& r : rects) {
        if (r.col_lo < 0 || r.row_lo < 0 || r.col_hi >= dims.width || r.row_hi >= dims.height
            || r.col_lo > r.col_hi || r.row_lo > r.row_hi)
            throw std::invalid_argument("build_quadtree: rect out of bounds");
    }
    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = i + 1; j < rects.size(); ++j)
            if (rects_overlap(rects[i], rects[j]))
                throw std::invalid_argument("build_quadtree: rects overlap");

    Quadtree qt;
    qt.dims = dims;
    qt.leaf_capacity = n;
    qt.rects = rects;
    qt.nodes.reserve(rects.size() * 2 + 1);

    std::vector<int> all_ids(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i)
        all_ids[i] = static_cast<int>(i);

    struct Frame {
        Rect region;
        std::vector<int> ids;
        int parent;
        int slot;
    };
    std::vector<Frame> work;
    work.push_back({{0, 0, dims.width - 1, dims.height - 1}, std::move(all_ids), -1, 0});
    while (!work.empty()) {
        Frame f = std::move(work.back());
        work.pop_back();
        const int idx = static_cast<int>(qt.nodes.size());
        qt.nodes.push_back({f.region, {-1, -1, -1, -1}, {}, true});
        if (f.parent >= 0)
            qt.nodes[f.parent].child[f.slot] = idx;

        const bool single_cell = f.region.col_lo == f.region.col_hi && f.region.row_lo == f.region.row_hi;
        if (static_cast<int>(f.ids.size()) <= n || single_cell) {
            qt.nodes[idx].rect_ids = std::move(f.ids);
            continue;
        }
        qt.nodes[idx].leaf = false;
        const int mid_c = (f.region.col_lo + f.region.col_hi) / 2;
        const int mid_r = (f.region.row_lo + f.region.row_hi) / 2;
        const Rect quads[4] = {
            {f.region.col_lo, f.region.row_lo, mid_c, mid_r},
            {mid_c + 1, f.region.row_lo, f.region.col_hi, mid_r},
            {f.region.col_lo, mid_r + 1, mid_c, f.region.row_hi},
            {mid_c + 1, mid_r + 1, f.region.col_hi, f.region.row_hi},
        };
        for (int s = 3; s >= 0; --s) {
            if (quads[s].col_lo > quads[s].col_hi || quads[s].row_lo > quads[s].row_hi)
                continue;
            std::vector<int> sub;
            for (int id : f.ids)
                if (rects_touch(qt.rects[id], quads[s]))
                    sub.push_back(id);
            work.push_back({quads[s], std::move(sub), idx, s});
        }
    }
    return qt;
}

// The unique leaf whose cell region contains the cell.
inline int leaf_for_cell(const Quadtree& qt, CellCoord c)
{
    if (c.col < 0 || c.col >= qt.dims.width || c.row < 0 || c.row >= qt.dims.height)
        throw std::invalid_argument("leaf_for_cell: cell out of range");
    int idx = 0;
    while (!qt.nodes[idx].leaf) {
        int next = -1;
        for (int s = 0; s < 4; ++s) {
            const int ch = qt.nodes[idx].child[s];
            if (ch >= 0 && qt.nodes[ch].region.contains_cell(c)) {
                next = ch;
                break;
            }
        }
        idx = next;
    }
    return idx;
}

// All leaves whose closed extent contains the point (up to four when the
// point sits on leaf boundaries).
inline void leaves_touching_point(const Quadtree& qt, GeomPoint p, std::vector<int>& out)
{
    out.clear();
    std::array<int, 8> stack;
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const int idx = stack[--top];
        const QuadNode& node = qt.nodes[idx];
        if (!point_in_closed_extent(p, extent_of(node.region)))
            continue;
        if (node.leaf) {
            out.push_back(idx);
            continue;
        }
        for (int s = 3; s >= 0; --s)
            if (node.child[s] >= 0)
                stack[top++] = node.child[s];
    }
}

// Best-first traversal: nodes expand by ascending region distance and leaf
// rects surface by ascending distance to the source, so the output sequence
// is globally ordered closest to furthest (ties by id). Each rect is pushed
// at its first encounter only. A plain depth-first walk with sorted children
// can emit a farther rect first when a near leaf holds only far rects; the
// best-first queue keeps the closest-first guarantee exact.
inline void ordered_rect_ids(const Quadtree& qt, GeomPoint source, std::vector<int>& out)
{
    out.clear();
    std::vector<std::uint8_t> seen(qt.rects.size(), 0);

    struct Entry {
        std::int64_t key;
        int is_rect; // nodes expand before rects at equal distance
        int id;

        bool operator>(const Entry& o) const
        {
            if (key != o.key)
                return key > o.key;
            if (is_rect != o.is_rect)
                return is_rect > o.is_rect;
            return id > o.id;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    pq.push({region_distance(qt.nodes[0].region, source), 0, 0});
    while (!pq.empty()) {
        const Entry e = pq.top();
        pq.pop();
        if (e.is_rect) {
            out.push_back(e.id);
            continue;
        }
        const QuadNode& node = qt.nodes[e.id];
        if (node.leaf) {
            for (int id : node.rect_ids)
                if (!seen[id]) {
                    seen[id] = 1;
                    pq.push({region_distance(qt.rects[id], source), 1, id});
                }
            continue;
        }
        for (int s = 0; s < 4; ++s)
            if (node.child[s] >= 0)
                pq.push({region_distance(qt.nodes[node.child[s]].region, source), 0, node.child[s]});
    }
}

inline std::vector<Rect> ordered_rects(const Quadtree& qt, GeomPoint source)
{
    std::vector<int> ids;
    ordered_rect_ids(qt, source, ids);
    std::vector<Rect> out;
    out.reserve(ids.size());
    for (int id : ids)
        out.push_back(qt.rects[id]);
    return out;
}

// Ids of all rects whose closed extent intersects the box, first-encounter
// DFS order, deduplicated.
inline void rect_ids_in_extent(const Quadtree& qt, const Extent& box, std::vector<int>& out,
    std::vector<std::uint8_t>& seen_scratch)
{
    out.clear();
    seen_scratch.assign(qt.rects.size(), 0);
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const QuadNode& node = qt.nodes[idx];
        const Extent ne = extent_of(node.region);
        if (ne.x_lo > box.x_hi || box.x_lo > ne.x_hi || ne.y_lo > box.y_hi || box.y_lo > ne.y_hi)
            continue;
        if (node.leaf) {
            for (int id : node.rect_ids) {
                if (seen_scratch[id])
                    continue;
                const Extent re = extent_of(qt.rects[id]);
                if (re.x_lo > box.x_hi || box.x_lo > re.x_hi || re.y_lo > box.y_hi
                    || box.y_lo > re.y_hi)
                    continue;
                seen_scratch[id] = 1;
                out.push_back(id);
            }
            continue;
        }
        for (int s = 3; s >= 0; --s)
            if (node.child[s] >= 0)
                stack.push_back(node.child[s]);
    }
}

} // namespace rfov
