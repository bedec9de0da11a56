#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <rfov/dissection.hpp>

#include "test_util.hpp"

using namespace rfov;

namespace {

BlockMask mask_from_shape(const testutil::Shape& shape)
{
    int w = 1, h = 1;
    for (const auto& c : shape) {
        w = std::max(w, c.col + 1);
        h = std::max(h, c.row + 1);
    }
    BlockMask m = empty_mask({w, h});
    for (const auto& c : shape)
        m.set(c);
    return m;
}

// Union must cover the region exactly once, rects pairwise interior-disjoint.
void check_exact_cover(const RectilinearRegion& region, const std::vector<Rect>& rects)
{
    std::set<CellCoord> covered;
    for (const Rect& r : rects)
        for (int row = r.row_lo; row <= r.row_hi; ++row)
            for (int col = r.col_lo; col <= r.col_hi; ++col)
                REQUIRE(covered.insert({col, row}).second);
    const std::set<CellCoord> want(region.cells.begin(), region.cells.end());
    REQUIRE(covered == want);
}

} // namespace

TEST_CASE("region extraction basics")
{
    CHECK(extract_regions(empty_mask({4, 4})).empty());

    BlockMask m = empty_mask({4, 4});
    m.set({1, 1});
    m.set({2, 1});
    auto regions = extract_regions(m);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].cells.size() == 2);

    BlockMask d = empty_mask({4, 4});
    d.set({1, 1});
    d.set({2, 2});
    CHECK(extract_regions(d).size() == 2);
}

TEST_CASE("regions partition the blocked cells and are maximal")
{
    std::mt19937_64 rng(8881u);
    std::bernoulli_distribution blocked(0.35);
    for (int iter = 0; iter < 50; ++iter) {
        BlockMask m = empty_mask({16, 16});
        int total = 0;
        for (int row = 0; row < 16; ++row)
            for (int col = 0; col < 16; ++col)
                if (blocked(rng)) {
                    m.set({col, row});
                    ++total;
                }
        const auto regions = extract_regions(m);
        std::set<CellCoord> seen;
        for (const auto& region : regions) {
            std::set<CellCoord> cells(region.cells.begin(), region.cells.end());
            for (const auto& c : region.cells) {
                REQUIRE(m.at(c));
                REQUIRE(seen.insert(c).second);
                // maximality: blocked 4-neighbors belong to the same region
                const CellCoord nbrs[4] = {{c.col - 1, c.row}, {c.col + 1, c.row},
                    {c.col, c.row - 1}, {c.col, c.row + 1}};
                for (const auto& nb : nbrs)
                    if (nb.col >= 0 && nb.col < 16 && nb.row >= 0 && nb.row < 16 && m.at(nb))
                        CHECK(cells.count(nb) == 1);
            }
        }
        CHECK(static_cast<int>(seen.size()) == total);
    }
}

TEST_CASE("single rectangle dissects to itself")
{
    BlockMask m = empty_mask({8, 8});
    for (int row = 2; row <= 4; ++row)
        for (int col = 1; col <= 5; ++col)
            m.set({col, row});
    const auto regions = extract_regions(m);
    REQUIRE(regions.size() == 1);
    const auto rects = dissect_min_rects(regions[0]);
    REQUIRE(rects.size() == 1);
    CHECK(rects[0] == Rect{1, 2, 5, 4});
}

TEST_CASE("L tromino needs two rectangles")
{
    RectilinearRegion region{{{0, 0}, {0, 1}, {1, 1}}};
    const auto rects = dissect_min_rects(region);
    CHECK(rects.size() == 2);
    check_exact_cover(region, rects);
}

TEST_CASE("plus pentomino needs three rectangles")
{
    RectilinearRegion region{{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}};
    const auto rects = dissect_min_rects(region);
    CHECK(rects.size() == 3);
    check_exact_cover(region, rects);
}

TEST_CASE("dissection rejects empty regions")
{
    CHECK_THROWS_AS(dissect_min_rects(RectilinearRegion{}), std::invalid_argument);
}

TEST_CASE("ring with hole dissects minimally")
{
    // 4x4 ring around a 2x2 hole: 12 cells, minimum 4 rectangles.
    RectilinearRegion region;
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col)
            if (row == 0 || row == 3 || col == 0 || col == 3)
                region.cells.push_back({col, row});
    const auto rects = dissect_min_rects(region);
    CHECK(rects.size() == 4);
    check_exact_cover(region, rects);
}

TEST_CASE("diagonal point contacts split naturally")
{
    // Two squares joined through a path, touching diagonally at one corner.
    testutil::Shape shape{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {3, 0}, {3, 1}, {2, 2}, {3, 2}};
    const auto regions = extract_regions(mask_from_shape(testutil::normalize(shape)));
    REQUIRE(regions.size() == 1);
    const auto rects = dissect_min_rects(regions[0]);
    check_exact_cover(regions[0], rects);
    CHECK(static_cast<int>(rects.size()) == testutil::brute_min_partition(testutil::normalize(shape)));
}

TEST_CASE("exhaustive minimality for small polyominoes")
{
    const auto shapes = testutil::enumerate_polyominoes(8);
    for (const auto& shape : shapes) {
        const auto regions = extract_regions(mask_from_shape(shape));
        REQUIRE(regions.size() == 1);
        const auto rects = dissect_min_rects(regions[0]);
        check_exact_cover(regions[0], rects);
        const int want = testutil::brute_min_partition(shape);
        INFO("shape of " << shape.size() << " cells");
        CHECK(static_cast<int>(rects.size()) == want);
    }
}

TEST_CASE("random masks dissect to exact covers")
{
    std::mt19937_64 rng(140872u);
    std::bernoulli_distribution blocked(0.45);
    for (int iter = 0; iter < 30; ++iter) {
        BlockMask m = empty_mask({24, 24});
        for (int row = 0; row < 24; ++row)
            for (int col = 0; col < 24; ++col)
                if (blocked(rng))
                    m.set({col, row});
        for (const auto& region : extract_regions(m))
            check_exact_cover(region, dissect_min_rects(region));
    }
}
