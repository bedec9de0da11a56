#pragma once

// Shared test-side oracles, independent of the library implementations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <rfov/dissection.hpp>
#include <rfov/grid.hpp>

namespace testutil {

using Shape = std::vector<rfov::CellCoord>; // normalized, sorted by (row, col)

inline Shape normalize(Shape s)
{
    int min_col = s[0].col, min_row = s[0].row;
    for (const auto& c : s) {
        min_col = std::min(min_col, c.col);
        min_row = std::min(min_row, c.row);
    }
    for (auto& c : s) {
        c.col -= min_col;
        c.row -= min_row;
    }
    std::sort(s.begin(), s.end(),
        [](rfov::CellCoord a, rfov::CellCoord b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return s;
}

// Canonical form under the 8 plane symmetries.
inline Shape canonical(const Shape& s)
{
    Shape best;
    for (int t = 0; t < 8; ++t) {
        Shape v = s;
        for (auto& c : v) {
            int x = c.col, y = c.row;
            if (t & 1)
                x = -x;
            if (t & 2)
                y = -y;
            if (t & 4)
                std::swap(x, y);
            c = {x, y};
        }
        v = normalize(std::move(v));
        if (best.empty() || v < best)
            best = v;
    }
    return best;
}

// All free polyominoes with cell counts in [1, max_cells].
inline std::vector<Shape> enumerate_polyominoes(int max_cells)
{
    std::vector<Shape> out;
    std::set<Shape> seen;
    std::vector<Shape> frontier{{{0, 0}}};
    seen.insert(frontier[0]);
    out.push_back(frontier[0]);
    for (int n = 2; n <= max_cells; ++n) {
        std::vector<Shape> next;
        for (const Shape& s : frontier) {
            std::set<rfov::CellCoord> cells(s.begin(), s.end());
            for (const auto& c : s) {
                const rfov::CellCoord nbrs[4] = {{c.col - 1, c.row}, {c.col + 1, c.row},
                    {c.col, c.row - 1}, {c.col, c.row + 1}};
                for (const auto& nb : nbrs) {
                    if (cells.count(nb))
                        continue;
                    Shape grown = s;
                    grown.push_back(nb);
                    Shape canon = canonical(normalize(std::move(grown)));
                    if (seen.insert(canon).second) {
                        next.push_back(canon);
                        out.push_back(canon);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// Exact minimum rectangle-partition size by DP over uncovered-cell subsets.
// Usable for shapes of up to ~20 cells.
inline int brute_min_partition(const Shape& shape)
{
    const int n = static_cast<int>(shape.size());
    std::map<rfov::CellCoord, int> bit;
    for (int i = 0; i < n; ++i)
        bit[shape[i]] = i;
    std::vector<int> memo(std::size_t{1} << n, -1);
    const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1);

    auto solve = [&](auto&& self, std::uint32_t uncovered) -> int {
        if (uncovered == 0)
            return 0;
        int& m = memo[uncovered];
        if (m >= 0)
            return m;
        int first = 0;
        while (!(uncovered & (1u << first)))
            ++first;
        const rfov::CellCoord c0 = shape[first];
        int best = n;
        // Any rectangle covering the first uncovered cell has its top-left
        // corner there (cells above and to the left are already covered).
        bool column_open = true;
        for (int h = 1; column_open; ++h) {
            std::uint32_t bits = 0;
            for (int w = 1;; ++w) {
                std::uint32_t strip = 0;
                bool fits = true;
                for (int dy = 0; dy < h && fits; ++dy) {
                    auto it = bit.find({c0.col + w - 1, c0.row + dy});
                    if (it == bit.end() || !(uncovered & (1u << it->second)))
                        fits = false;
                    else
                        strip |= 1u << it->second;
                }
                if (!fits) {
                    if (w == 1)
                        column_open = false; // taller rects contain this strip too
                    break;
                }
                bits |= strip;
                best = std::min(best, 1 + self(self, uncovered & ~bits));
            }
        }
        m = best;
        return best;
    };
    return solve(solve, full);
}

} // namespace testutil
