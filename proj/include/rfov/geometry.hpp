#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "grid.hpp"

namespace rfov {

// All geometry uses doubled integer coordinates: cell (c,r) spans
// [2c,2c+2] x [2r,2r+2], so cell corners are even lattice points and the
// center of cell (c,r) is the odd point (2c+1, 2r+1). Every predicate below
// is an integer sign test; no floating point anywhere.

struct GeomPoint {
    std::int64_t x{};
    std::int64_t y{};

    bool operator==(const GeomPoint&) const = default;
    auto operator<=>(const GeomPoint&) const = default;
};

constexpr GeomPoint cell_center(CellCoord c)
{
    return {2 * static_cast<std::int64_t>(c.col) + 1, 2 * static_cast<std::int64_t>(c.row) + 1};
}

constexpr std::int64_t cross(GeomPoint a, GeomPoint b)
{
    return a.x * b.y - a.y * b.x;
}

constexpr GeomPoint sub(GeomPoint a, GeomPoint b)
{
    return {a.x - b.x, a.y - b.y};
}

constexpr std::int64_t dot(GeomPoint a, GeomPoint b)
{
    return a.x * b.x + a.y * b.y;
}

constexpr std::int64_t sq_dist(GeomPoint a, GeomPoint b)
{
    return dot(sub(a, b), sub(a, b));
}

// Inclusive cell-index rectangle; geometric extent is
// [2*col_lo, 2*col_hi+2] x [2*row_lo, 2*row_hi+2].
struct Rect {
    int col_lo{};
    int row_lo{};
    int col_hi{};
    int row_hi{};

    bool operator==(const Rect&) const = default;

    bool contains_cell(CellCoord c) const
    {
        return c.col >= col_lo && c.col <= col_hi && c.row >= row_lo && c.row <= row_hi;
    }

    std::int64_t cell_count() const
    {
        return static_cast<std::int64_t>(col_hi - col_lo + 1) * (row_hi - row_lo + 1);
    }
};

// Geometric extent in doubled coordinates (closed box).
struct Extent {
    std::int64_t x_lo{};
    std::int64_t y_lo{};
    std::int64_t x_hi{};
    std::int64_t y_hi{};

    bool operator==(const Extent&) const = default;
};

constexpr Extent extent_of(const Rect& r)
{
    return {2 * static_cast<std::int64_t>(r.col_lo), 2 * static_cast<std::int64_t>(r.row_lo),
        2 * static_cast<std::int64_t>(r.col_hi) + 2, 2 * static_cast<std::int64_t>(r.row_hi) + 2};
}

constexpr bool point_in_closed_extent(GeomPoint p, const Extent& e)
{
    return p.x >= e.x_lo && p.x <= e.x_hi && p.y >= e.y_lo && p.y <= e.y_hi;
}

// Half-line origin + t*dir, t >= 0; dir is not normalized.
struct Ray {
    GeomPoint origin;
    GeomPoint dir;

    bool operator==(const Ray&) const = default;
};

// Oriented line a*x + b*y + c = 0; "inside" means strictly positive.
struct HalfPlane {
    std::int64_t a{};
    std::int64_t b{};
    std::int64_t c{};

    std::int64_t eval(GeomPoint p) const { return a * p.x + b * p.y + c; }
    bool strictly_inside(GeomPoint p) const { return eval(p) > 0; }
};

// Line through p and q, sign not yet chosen.
constexpr HalfPlane line_through(GeomPoint p, GeomPoint q)
{
    const std::int64_t a = -(q.y - p.y);
    const std::int64_t b = q.x - p.x;
    return {a, b, -(a * p.x + b * p.y)};
}

namespace detail {

constexpr std::int64_t floor_div(std::int64_t n, std::int64_t d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t q = n / d;
    return (n % d != 0 && n < 0) ? q - 1 : q;
}

constexpr std::int64_t ceil_div(std::int64_t n, std::int64_t d)
{
    return -floor_div(-n, d);
}

// Open-segment / open-box intersection test via exact slab clipping.
// Maintains the t interval (lo, hi) as fractions with positive denominators.
struct Frac {
    std::int64_t num;
    std::int64_t den; // > 0

    bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
};

inline bool open_segment_meets_open_box(GeomPoint p, GeomPoint q, const Extent& e)
{
    if (p == q)
        return false; // open segment is empty
    const std::int64_t dx = q.x - p.x;
    const std::int64_t dy = q.y - p.y;
    Frac lo{0, 1};
    Frac hi{1, 1};
    auto clip_axis = [&](std::int64_t d, std::int64_t w, std::int64_t w_lo, std::int64_t w_hi) {
        if (d == 0)
            return w > w_lo && w < w_hi;
        Frac t_in{w_lo - w, d};
        Frac t_out{w_hi - w, d};
        if (d < 0) {
            t_in = {w - w_hi, -d};
            t_out = {w - w_lo, -d};
        }
        if (lo < t_in)
            lo = t_in;
        if (t_out < hi)
            hi = t_out;
        return true;
    };
    if (!clip_axis(dx, p.x, e.x_lo, e.x_hi))
        return false;
    if (!clip_axis(dy, p.y, e.y_lo, e.y_hi))
        return false;
    return lo < hi;
}

} // namespace detail

// True iff the open segment (p,q) intersects the interior of r.
inline bool segment_blocked(GeomPoint p, GeomPoint q, const Extent& e)
{
    return detail::open_segment_meets_open_box(p, q, e);
}

inline bool segment_blocked(GeomPoint p, GeomPoint q, const Rect& r)
{
    return segment_blocked(p, q, extent_of(r));
}

// A rectangle corner is visible when the open segment from the source to it
// misses the rectangle's interior.
inline std::pair<GeomPoint, GeomPoint> relevant_points(const Extent& e, GeomPoint source)
{
    if (point_in_closed_extent(source, e))
        throw std::invalid_argument("relevant_points: source inside or on rectangle");
    const std::array<GeomPoint, 4> corners{
        GeomPoint{e.x_lo, e.y_lo},
        GeomPoint{e.x_hi, e.y_lo},
        GeomPoint{e.x_lo, e.y_hi},
        GeomPoint{e.x_hi, e.y_hi},
    };
    // Brute force over the 4 corners; the maximal visible pair is unique
    // (aligned source: exactly the two near-face corners are visible;
    // diagonal source: the anti-diagonal pair beats any pair with the near
    // corner).
    GeomPoint best_a{}, best_b{};
    std::int64_t best = -1;
    for (int i = 0; i < 4; ++i) {
        if (segment_blocked(source, corners[i], e))
            continue;
        for (int j = i + 1; j < 4; ++j) {
            if (segment_blocked(source, corners[j], e))
                continue;
            const std::int64_t d = sq_dist(corners[i], corners[j]);
            if (d > best) {
                best = d;
                best_a = corners[i];
                best_b = corners[j];
            }
        }
    }
    if (best < 0)
        throw std::logic_error("relevant_points: no visible corner pair");
    if (best_b < best_a)
        std::swap(best_a, best_b);
    return {best_a, best_b};
}

inline std::pair<GeomPoint, GeomPoint> relevant_points(const Rect& r, GeomPoint source)
{
    return relevant_points(extent_of(r), source);
}

// Open convex region of points whose open segment to the source crosses the
// rectangle interior: strict far side of the two source->relevant-point
// lines, plus strictly beyond each near face (one if the source is axially
// aligned with the rectangle's span, two if diagonal). The bounding rays
// themselves are not part of the region.
struct OccludedRegion {
    GeomPoint source;
    GeomPoint p1, p2; // relevant points, lexicographic order
    std::array<HalfPlane, 4> planes{};
    int n_planes{};
    std::array<GeomPoint, 3> verts{}; // closure corners: p1, p2 [, near corner]
    int n_verts{};

    bool member(GeomPoint q) const
    {
        for (int i = 0; i < n_planes; ++i)
            if (!planes[i].strictly_inside(q))
                return false;
        return true;
    }
};

inline OccludedRegion occluded_region(const Extent& e, GeomPoint source)
{
    const auto [p1, p2] = relevant_points(e, source);
    OccludedRegion reg;
    reg.source = source;
    reg.p1 = p1;
    reg.p2 = p2;

    // Interior sample, doubled to stay integral: plane sign is chosen so the
    // rectangle interior (and with it the whole occluded area) is positive.
    const GeomPoint center2{e.x_lo + e.x_hi, e.y_lo + e.y_hi};
    for (GeomPoint p : {p1, p2}) {
        HalfPlane h = line_through(source, p);
        const std::int64_t s = h.a * center2.x + h.b * center2.y + 2 * h.c;
        if (s < 0) {
            h.a = -h.a;
            h.b = -h.b;
            h.c = -h.c;
        }
        reg.planes[reg.n_planes++] = h;
    }

    int face_planes = 0;
    if (source.x < e.x_lo) {
        reg.planes[reg.n_planes++] = {1, 0, -e.x_lo}; // x > x_lo
        ++face_planes;
    } else if (source.x > e.x_hi) {
        reg.planes[reg.n_planes++] = {-1, 0, e.x_hi}; // x < x_hi
        ++face_planes;
    }
    if (source.y < e.y_lo) {
        reg.planes[reg.n_planes++] = {0, 1, -e.y_lo};
        ++face_planes;
    } else if (source.y > e.y_hi) {
        reg.planes[reg.n_planes++] = {0, -1, e.y_hi};
        ++face_planes;
    }

    reg.verts[reg.n_verts++] = p1;
    reg.verts[reg.n_verts++] = p2;
    if (face_planes == 2) {
        // Diagonal source: the two near faces meet at the near corner.
        const std::int64_t nx = source.x < e.x_lo ? e.x_lo : e.x_hi;
        const std::int64_t ny = source.y < e.y_lo ? e.y_lo : e.y_hi;
        reg.verts[reg.n_verts++] = {nx, ny};
    }
    return reg;
}

inline OccludedRegion occluded_region(const Rect& r, GeomPoint source)
{
    return occluded_region(extent_of(r), source);
}

// The region is an intersection of open half-planes, hence open and convex:
// if all four corners are strictly inside, the whole closed cell is.
inline bool cell_fully_occluded(const OccludedRegion& reg, CellCoord cell)
{
    const std::int64_t x = 2 * static_cast<std::int64_t>(cell.col);
    const std::int64_t y = 2 * static_cast<std::int64_t>(cell.row);
    for (int i = 0; i < reg.n_planes; ++i) {
        const HalfPlane& h = reg.planes[i];
        if (!(h.strictly_inside({x, y}) && h.strictly_inside({x + 2, y})
                && h.strictly_inside({x, y + 2}) && h.strictly_inside({x + 2, y + 2})))
            return false;
    }
    return true;
}

// Minimal and maximal columns c with cell (c,row) fully occluded, clipped to
// the grid; absent when no cell in the row qualifies. Per half-plane the
// worst cell corner is linear in c, so each plane contributes one bound.
inline std::optional<std::pair<int, int>> row_occluded_span(
    const OccludedRegion& reg, int row, GridDims dims)
{
    if (row < 0 || row >= dims.height)
        throw std::invalid_argument("row_occluded_span: row out of range");
    const std::int64_t y0 = 2 * static_cast<std::int64_t>(row);
    std::int64_t c_lo = 0;
    std::int64_t c_hi = dims.width - 1;
    for (int i = 0; i < reg.n_planes; ++i) {
        const HalfPlane& h = reg.planes[i];
        const std::int64_t y_worst = h.b >= 0 ? y0 : y0 + 2;
        const std::int64_t k = h.b * y_worst + h.c;
        if (h.a == 0) {
            if (k <= 0)
                return std::nullopt;
            continue;
        }
        if (h.a > 0) {
            // a*2c + k > 0  =>  c >= floor(-k / 2a) + 1
            c_lo = std::max(c_lo, detail::floor_div(-k, 2 * h.a) + 1);
        } else {
            // a*(2c+2) + k > 0  =>  c <= ceil((-k - 2a) / 2a) - 1
            c_hi = std::min(c_hi, detail::ceil_div(-k - 2 * h.a, 2 * h.a) - 1);
        }
    }
    if (c_lo > c_hi)
        return std::nullopt;
    return std::make_pair(static_cast<int>(c_lo), static_cast<int>(c_hi));
}

} // namespace rfov
