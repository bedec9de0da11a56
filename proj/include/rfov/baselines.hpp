#pragma once

// Prior-art FOV algorithms over a cell mask, plus an exact visibility
// oracle used as the correctness ground truth.
//
// The ray casters share one supercover traversal: every cell whose closed
// area the segment passes through, in order of first contact. The oracle
// realizes the "any point of the cell sees the source" definition directly
// with an angular sweep over rectangle corners; all comparisons are exact
// integer or rational arithmetic in doubled coordinates.

#include <rfov/dissection.hpp>
#include <rfov/geometry.hpp>
#include <rfov/grid.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rfov {

namespace detail {

// Cells whose closed span [2c, 2c+2] meets the closed interval [a, b],
// both ends given as fractions with positive denominators.
inline std::pair<std::int64_t, std::int64_t> touched_cell_range(Frac a, Frac b)
{
    return {ceil_div(a.num, 2 * a.den) - 1, floor_div(b.num, 2 * b.den)};
}

// Supercover walk from p to q. Calls visit(cell) for every grid cell whose
// closed area the segment touches, ordered by first contact; at a corner
// crossing the two edge-adjacent cells come before the diagonal one.
// visit returns false to stop the walk early; walk_ray_cells returns false
// if it was stopped.
template <typename Visit>
bool walk_ray_cells(GeomPoint p, GeomPoint q, GridDims dims, Visit&& visit)
{
    const std::int64_t dx = q.x - p.x;
    const std::int64_t dy = q.y - p.y;

    auto emit = [&](std::int64_t col, std::int64_t row) {
        if (col < 0 || col >= dims.width || row < 0 || row >= dims.height)
            return true;
        return visit(CellCoord{static_cast<int>(col), static_cast<int>(row)});
    };

    if (dy == 0) {
        // Horizontal (or empty) segment: one row strip, or two when the
        // segment lies on a shared horizontal cell edge. Advance the rows
        // together so emission stays ordered by contact.
        const auto [r_lo, r_hi] = touched_cell_range({p.y, 1}, {p.y, 1});
        const auto [c_lo, c_hi] =
            touched_cell_range({std::min(p.x, q.x), 1}, {std::max(p.x, q.x), 1});
        const std::int64_t c_first = dx < 0 ? c_hi : c_lo;
        const std::int64_t c_last = dx < 0 ? c_lo : c_hi;
        const std::int64_t c_step = dx < 0 ? -1 : 1;
        for (std::int64_t c = c_first;; c += c_step) {
            for (std::int64_t r = r_lo; r <= r_hi; ++r)
                if (!emit(c, r))
                    return false;
            if (c == c_last)
                break;
        }
        return true;
    }

    // x position of the segment at height y, clamped to the segment.
    auto x_at = [&](std::int64_t y) {
        std::int64_t k = y - p.y;
        if (dy > 0)
            k = std::clamp<std::int64_t>(k, 0, dy);
        else
            k = std::clamp<std::int64_t>(k, dy, 0);
        Frac f{p.x * dy + k * dx, dy};
        if (f.den < 0) {
            f.num = -f.num;
            f.den = -f.den;
        }
        return f;
    };

    const auto [r_lo, r_hi] =
        touched_cell_range({std::min(p.y, q.y), 1}, {std::max(p.y, q.y), 1});
    const std::int64_t r_first = dy > 0 ? r_lo : r_hi;
    const std::int64_t r_last = dy > 0 ? r_hi : r_lo;
    const std::int64_t r_step = dy > 0 ? 1 : -1;
    for (std::int64_t r = r_first;; r += r_step) {
        Frac xa = x_at(2 * r);
        Frac xb = x_at(2 * r + 2);
        if (xb < xa)
            std::swap(xa, xb);
        const auto [c_lo, c_hi] = touched_cell_range(xa, xb);
        if (dx >= 0) {
            for (std::int64_t c = c_lo; c <= c_hi; ++c)
                if (!emit(c, r))
                    return false;
        } else {
            for (std::int64_t c = c_hi; c >= c_lo; --c)
                if (!emit(c, r))
                    return false;
        }
        if (r == r_last)
            break;
    }
    return true;
}

} // namespace detail

inline std::vector<CellCoord> cast_ray_cells(GeomPoint from, GeomPoint to, GridDims dims)
{
    std::vector<CellCoord> cells;
    detail::walk_ray_cells(from, to, dims, [&](CellCoord c) {
        cells.push_back(c);
        return true;
    });
    return cells;
}

inline VisibilityGrid mass_ray_fov(const BlockMask& mask, CellCoord source)
{
    if (mask.at(source))
        throw std::invalid_argument("mass_ray_fov: source cell is vision-blocking");
    VisibilityGrid grid = new_grid(mask.dims, CellStatus::NotVisible);
    const GeomPoint s = cell_center(source);
    for (int row = 0; row < mask.dims.height; ++row) {
        for (int col = 0; col < mask.dims.width; ++col) {
            const CellCoord target{col, row};
            detail::walk_ray_cells(s, cell_center(target), mask.dims, [&](CellCoord c) {
                if (c == target) {
                    grid.at(target) = CellStatus::Visible;
                    return false;
                }
                return !mask.at(c);
            });
        }
    }
    return grid;
}

inline VisibilityGrid perimeter_ray_fov(const BlockMask& mask, CellCoord source)
{
    if (mask.at(source))
        throw std::invalid_argument("perimeter_ray_fov: source cell is vision-blocking");
    VisibilityGrid grid = new_grid(mask.dims, CellStatus::NotVisible);
    const GeomPoint s = cell_center(source);
    auto cast = [&](int col, int row) {
        detail::walk_ray_cells(s, cell_center({col, row}), mask.dims, [&](CellCoord c) {
            grid.at(c) = CellStatus::Visible;
            return !mask.at(c); // mark through the first blocker, then stop
        });
    };
    const int w = mask.dims.width;
    const int h = mask.dims.height;
    for (int col = 0; col < w; ++col) {
        cast(col, 0);
        if (h > 1)
            cast(col, h - 1);
    }
    for (int row = 1; row + 1 < h; ++row) {
        cast(0, row);
        if (w > 1)
            cast(w - 1, row);
    }
    return grid;
}

namespace detail {

// Closed interval of slopes, kept sorted and pairwise disjoint per octant.
struct SlopeBand {
    Frac lo;
    Frac hi;
};

} // namespace detail

inline VisibilityGrid recursive_shadowcasting(const BlockMask& mask, CellCoord source, VisibilityGrid grid)
{
    if (!(grid.dims == mask.dims))
        throw std::invalid_argument("recursive_shadowcasting: grid dims do not match mask");
    if (mask.at(source))
        throw std::invalid_argument("recursive_shadowcasting: source cell is vision-blocking");
    reset_grid(grid, CellStatus::NotVisible);
    grid.at(source) = CellStatus::Visible;

    // Octant frames: local cell (d, j) sits at source + d*(px,py) + j*(sx,sy),
    // 0 <= j <= d. Slopes run 0 (axis) to 1 (diagonal); a cell at (d, j)
    // subtends the closed slope interval [(2j-1)/(2d+1), (2j+1)/(2d-1)]
    // (far-low and near-high corners) and, when blocked, removes the open
    // version of that interval. Keeping the interval ends closed preserves
    // visibility along grazing rays, matching the oracle's semantics.
    static constexpr int frames[8][4] = {
        {1, 0, 0, 1},
        {1, 0, 0, -1},
        {-1, 0, 0, 1},
        {-1, 0, 0, -1},
        {0, 1, 1, 0},
        {0, 1, -1, 0},
        {0, -1, 1, 0},
        {0, -1, -1, 0},
    };

    std::vector<detail::SlopeBand> vis;
    std::vector<detail::SlopeBand> next;
    std::vector<std::pair<detail::Frac, detail::Frac>> removals;

    for (const auto& f : frames) {
        const int px = f[0];
        const int py = f[1];
        const int sx = f[2];
        const int sy = f[3];
        const int d_max = px != 0 ? (px > 0 ? mask.dims.width - 1 - source.col : source.col)
                                  : (py > 0 ? mask.dims.height - 1 - source.row : source.row);
        const int j_max = sx != 0 ? (sx > 0 ? mask.dims.width - 1 - source.col : source.col)
                                  : (sy > 0 ? mask.dims.height - 1 - source.row : source.row);
        vis.assign(1, {{0, 1}, {1, 1}});
        for (int d = 1; d <= d_max && !vis.empty(); ++d) {
            removals.clear();
            const std::int64_t dd = d;
            std::int64_t run_lo = 0;
            std::int64_t run_hi = -2; // empty run
            auto flush_run = [&]() {
                if (run_lo <= run_hi)
                    removals.push_back(
                        {{2 * run_lo - 1, 2 * dd + 1}, {2 * run_hi + 1, 2 * dd - 1}});
                run_hi = -2;
            };
            const std::int64_t j_cap = std::min<std::int64_t>(d, j_max);
            std::int64_t prev_hi = -1;
            for (const auto& band : vis) {
                std::int64_t j_lo =
                    detail::ceil_div(band.lo.num * (2 * dd - 1) - band.lo.den, 2 * band.lo.den);
                std::int64_t j_hi =
                    detail::floor_div(band.hi.num * (2 * dd + 1) + band.hi.den, 2 * band.hi.den);
                j_lo = std::max({j_lo, std::int64_t{0}, prev_hi + 1});
                j_hi = std::min(j_hi, j_cap);
                if (j_lo > j_hi)
                    continue;
                for (std::int64_t j = j_lo; j <= j_hi; ++j) {
                    const CellCoord cell{source.col + d * px + static_cast<int>(j) * sx,
                        source.row + d * py + static_cast<int>(j) * sy};
                    grid.at(cell) = CellStatus::Visible;
                    if (mask.at(cell)) {
                        if (j != run_hi + 1) {
                            flush_run();
                            run_lo = j;
                        }
                        run_hi = j;
                    } else {
                        flush_run();
                    }
                }
                prev_hi = j_hi;
            }
            flush_run();
            // Shadows take effect from the next row on; rebuild the band
            // list once per blocked run.
            for (const auto& rem : removals) {
                next.clear();
                for (const auto& band : vis) {
                    if (!(rem.first < band.hi) || !(band.lo < rem.second)) {
                        next.push_back(band);
                        continue;
                    }
                    if (!(rem.first < band.lo))
                        next.push_back({band.lo, rem.first});
                    if (!(band.hi < rem.second))
                        next.push_back({rem.second, band.hi});
                }
                vis.swap(next);
            }
        }
    }
    return grid;
}

namespace detail {

// Homogeneous rational point in doubled coordinates, den > 0.
struct RatPoint {
    std::int64_t xn;
    std::int64_t yn;
    std::int64_t den;
};

constexpr RatPoint rat_point(GeomPoint p)
{
    return {p.x, p.y, 1};
}

// p + t*v with t = num/den, den > 0.
constexpr RatPoint ray_point(GeomPoint p, GeomPoint v, Frac t)
{
    return {p.x * t.den + t.num * v.x, p.y * t.den + t.num * v.y, t.den};
}

constexpr std::int64_t floor_div128(__int128 n, __int128 d)
{
    const __int128 q = n / d;
    return static_cast<std::int64_t>((n % d != 0 && n < 0) ? q - 1 : q);
}

constexpr std::int64_t ceil_div128(__int128 n, __int128 d)
{
    return -floor_div128(-n, d);
}

constexpr int angular_half(GeomPoint v)
{
    return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}

// Counterclockwise order starting at the +x axis.
constexpr bool angular_less(GeomPoint a, GeomPoint b)
{
    if (angular_half(a) != angular_half(b))
        return angular_half(a) < angular_half(b);
    return cross(a, b) > 0;
}

constexpr bool same_direction(GeomPoint a, GeomPoint b)
{
    return angular_half(a) == angular_half(b) && cross(a, b) == 0;
}

// Axis-aligned line: x = coord (axis 0) or y = coord (axis 1).
struct SweepLine {
    int axis;
    std::int64_t coord;
};

// First t > 0 where s + t*v enters the open box, with the edge line it
// enters through. Grazing contact (corner or edge-on) does not count.
inline bool open_entry(GeomPoint s, GeomPoint v, const Extent& e, Frac& t_entry, SweepLine& line)
{
    bool has = false;
    Frac lo{0, 1};
    Frac hi{0, 1};
    SweepLine lo_line{};
    auto clip = [&](std::int64_t d, std::int64_t w, std::int64_t w_lo, std::int64_t w_hi, int axis) {
        if (d == 0)
            return w > w_lo && w < w_hi;
        Frac a{w_lo - w, d};
        Frac b{w_hi - w, d};
        std::int64_t near_line = w_lo;
        if (d < 0) {
            a = {w - w_hi, -d};
            b = {w - w_lo, -d};
            near_line = w_hi;
        }
        if (!has) {
            lo = a;
            hi = b;
            lo_line = {axis, near_line};
            has = true;
            return true;
        }
        if (lo < a) {
            lo = a;
            lo_line = {axis, near_line};
        }
        if (b < hi)
            hi = b;
        return true;
    };
    if (!clip(v.x, s.x, e.x_lo, e.x_hi, 0))
        return false;
    if (!clip(v.y, s.y, e.y_lo, e.y_hi, 1))
        return false;
    const Frac zero{0, 1};
    if (!(lo < hi) || !(zero < hi))
        return false;
    t_entry = lo;
    line = lo_line;
    return true;
}

// Exit parameter of the ray s + t*v from the closed box around an interior s.
inline Frac box_exit(GeomPoint s, GeomPoint v, const Extent& box, SweepLine& line)
{
    bool has = false;
    Frac best{0, 1};
    auto consider = [&](std::int64_t d, std::int64_t w, std::int64_t w_lo, std::int64_t w_hi, int axis) {
        if (d == 0)
            return;
        const Frac t = d > 0 ? Frac{w_hi - w, d} : Frac{w - w_lo, -d};
        const std::int64_t far_line = d > 0 ? w_hi : w_lo;
        if (!has || t < best) {
            best = t;
            line = {axis, far_line};
            has = true;
        }
    };
    consider(v.x, s.x, box.x_lo, box.x_hi, 0);
    consider(v.y, s.y, box.y_lo, box.y_hi, 1);
    return best;
}

// Mark every cell whose closed extent meets the closed convex hull of pts
// (a segment or a triangle), one row band at a time.
inline void mark_convex(VisibilityGrid& grid, const std::vector<RatPoint>& pts)
{
    auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
    std::int64_t r_lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t r_hi = std::numeric_limits<std::int64_t>::min();
    for (const RatPoint& p : pts) {
        r_lo = std::min(r_lo, ceil_div(p.yn, 2 * p.den) - 1);
        r_hi = std::max(r_hi, floor_div(p.yn, 2 * p.den));
    }
    r_lo = std::max<std::int64_t>(r_lo, 0);
    r_hi = std::min<std::int64_t>(r_hi, grid.dims.height - 1);
    const std::size_t k = pts.size();
    for (std::int64_t r = r_lo; r <= r_hi; ++r) {
        const std::int64_t y_lo = 2 * r;
        const std::int64_t y_hi = 2 * r + 2;
        std::int64_t c_lo = std::numeric_limits<std::int64_t>::max();
        std::int64_t c_hi = std::numeric_limits<std::int64_t>::min();
        auto candidate = [&](__int128 xn, __int128 xd) {
            c_lo = std::min(c_lo, ceil_div128(xn, 2 * xd) - 1);
            c_hi = std::max(c_hi, floor_div128(xn, 2 * xd));
        };
        for (const RatPoint& p : pts)
            if (p.yn >= y_lo * p.den && p.yn <= y_hi * p.den)
                candidate(p.xn, p.den);
        for (std::size_t i = 0; i < k; ++i) {
            const RatPoint& p = pts[i];
            const RatPoint& q = pts[(i + 1) % k];
            for (const std::int64_t yv : {y_lo, y_hi}) {
                const int sp = sgn(p.yn - yv * p.den);
                const int sq = sgn(q.yn - yv * q.den);
                if (sp * sq >= 0)
                    continue;
                const __int128 dyq = static_cast<__int128>(q.yn) * p.den - static_cast<__int128>(p.yn) * q.den;
                const __int128 dxq = static_cast<__int128>(q.xn) * p.den - static_cast<__int128>(p.xn) * q.den;
                __int128 num = static_cast<__int128>(p.xn) * dyq
                    + (static_cast<__int128>(yv) * p.den - p.yn) * dxq;
                __int128 den = static_cast<__int128>(p.den) * dyq;
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
                candidate(num, den);
            }
        }
        if (c_lo > c_hi)
            continue;
        c_lo = std::max<std::int64_t>(c_lo, 0);
        c_hi = std::min<std::int64_t>(c_hi, grid.dims.width - 1);
        if (c_lo > c_hi)
            continue;
        const auto base = static_cast<std::size_t>(r) * grid.dims.width;
        std::fill(grid.cells.begin() + base + c_lo, grid.cells.begin() + base + c_hi + 1,
            CellStatus::Visible);
    }
}

} // namespace detail

// Exact visible region from the source cell center among rectangle
// occluders. The plane around the source is swept between consecutive
// corner directions; within each gap the nearest blocking edge is constant,
// so the visible part of the gap is the triangle reaching that edge.
// Separate runs along every event ray keep grazing visibility through
// diagonal corner gaps. A cell is Visible iff its closed extent meets the
// closed visible region.
inline VisibilityGrid oracle_fov(const std::vector<Rect>& rects, GridDims dims, CellCoord source)
{
    VisibilityGrid grid = new_grid(dims, CellStatus::NotVisible);
    if (source.col < 0 || source.col >= dims.width || source.row < 0 || source.row >= dims.height)
        throw std::invalid_argument("oracle_fov: source cell outside the grid");
    for (const Rect& r : rects)
        if (r.contains_cell(source))
            throw std::invalid_argument("oracle_fov: source cell inside a rect");

    const GeomPoint s = cell_center(source);
    const Extent box{0, 0, 2 * static_cast<std::int64_t>(dims.width),
        2 * static_cast<std::int64_t>(dims.height)};

    std::vector<Extent> extents;
    extents.reserve(rects.size());
    for (const Rect& r : rects)
        extents.push_back(extent_of(r));

    std::vector<GeomPoint> dirs;
    dirs.reserve(4 * extents.size() + 4);
    auto add_corner = [&](std::int64_t x, std::int64_t y) {
        dirs.push_back({x - s.x, y - s.y});
    };
    for (const Extent& e : extents) {
        add_corner(e.x_lo, e.y_lo);
        add_corner(e.x_hi, e.y_lo);
        add_corner(e.x_lo, e.y_hi);
        add_corner(e.x_hi, e.y_hi);
    }
    add_corner(box.x_lo, box.y_lo);
    add_corner(box.x_hi, box.y_lo);
    add_corner(box.x_lo, box.y_hi);
    add_corner(box.x_hi, box.y_hi);
    std::sort(dirs.begin(), dirs.end(), detail::angular_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end(), detail::same_direction), dirs.end());

    // Nearest interior entry along v, or the grid wall if nothing blocks.
    auto frontier = [&](GeomPoint v) {
        detail::SweepLine line{};
        detail::Frac best = detail::box_exit(s, v, box, line);
        detail::Frac t{};
        detail::SweepLine l{};
        for (const Extent& e : extents) {
            if (detail::open_entry(s, v, e, t, l) && t < best) {
                best = t;
                line = l;
            }
        }
        return std::pair{best, line};
    };

    auto line_point = [&](GeomPoint v, const detail::SweepLine& line) {
        const std::int64_t d = line.axis == 0 ? v.x : v.y;
        const std::int64_t w = line.axis == 0 ? s.x : s.y;
        if (d == 0)
            throw std::logic_error("oracle_fov: event ray parallel to its frontier line");
        detail::Frac t{line.coord - w, d};
        if (t.den < 0) {
            t.num = -t.num;
            t.den = -t.den;
        }
        return detail::ray_point(s, v, t);
    };

    std::vector<detail::RatPoint> poly;
    const std::size_t n = dirs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const GeomPoint a = dirs[i];
        const GeomPoint b = dirs[(i + 1) % n];
        // Visible slice between the two event rays. The four grid corners
        // are always events, so every gap spans less than a half turn and
        // a + b points strictly inside it.
        const auto [t_gap, line] = frontier({a.x + b.x, a.y + b.y});
        poly.assign({detail::rat_point(s), line_point(a, line), line_point(b, line)});
        detail::mark_convex(grid, poly);
        // Visible run along the event ray itself: it may graze corners and
        // reach farther than either adjacent slice.
        detail::SweepLine unused{};
        detail::Frac t_end = detail::box_exit(s, a, box, unused);
        detail::Frac t{};
        detail::SweepLine l{};
        for (const Extent& e : extents)
            if (detail::open_entry(s, a, e, t, l) && t < t_end)
                t_end = t;
        poly.assign({detail::rat_point(s), detail::ray_point(s, a, t_end)});
        detail::mark_convex(grid, poly);
    }
    return grid;
}

} // namespace rfov
