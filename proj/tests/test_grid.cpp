#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include <rfov/grid.hpp>

using namespace rfov;

TEST_CASE("new_grid fills uniformly")
{
    const auto g = new_grid({2, 2}, CellStatus::Visible);
    REQUIRE(g.cells.size() == 4);
    for (auto s : g.cells)
        CHECK(s == CellStatus::Visible);

    const auto h = new_grid({1, 1}, CellStatus::NotVisible);
    REQUIRE(h.cells.size() == 1);
    CHECK(h.cells[0] == CellStatus::NotVisible);

    const auto big = new_grid({128, 128}, CellStatus::Visible);
    CHECK(big.cells.size() == 128u * 128u);
    CHECK(std::count(big.cells.begin(), big.cells.end(), CellStatus::Visible) == 128 * 128);
}

TEST_CASE("new_grid rejects zero-sized dims")
{
    CHECK_THROWS_AS(new_grid({0, 4}, CellStatus::Visible), std::invalid_argument);
    CHECK_THROWS_AS(new_grid({4, 0}, CellStatus::Visible), std::invalid_argument);
}

TEST_CASE("fill_row_span writes exactly the span")
{
    auto g = new_grid({2, 2}, CellStatus::Visible);
    fill_row_span(g, 0, 0, 0, CellStatus::NotVisible);
    CHECK(g.at({0, 0}) == CellStatus::NotVisible);
    CHECK(std::count(g.cells.begin(), g.cells.end(), CellStatus::NotVisible) == 1);

    auto h = new_grid({4, 4}, CellStatus::Visible);
    const auto before = h;
    fill_row_span(h, 1, 0, 3, CellStatus::NotVisible);
    CHECK(diff_grids(before, h).size() == 4);

    SECTION("refilling the same span is idempotent")
    {
        const auto once = h;
        fill_row_span(h, 1, 0, 3, CellStatus::NotVisible);
        CHECK(h == once);
    }
}

TEST_CASE("fill_row_span validates indices")
{
    auto g = new_grid({4, 4}, CellStatus::Visible);
    CHECK_THROWS_AS(fill_row_span(g, 4, 0, 1, CellStatus::Visible), std::invalid_argument);
    CHECK_THROWS_AS(fill_row_span(g, -1, 0, 1, CellStatus::Visible), std::invalid_argument);
    CHECK_THROWS_AS(fill_row_span(g, 0, 2, 1, CellStatus::Visible), std::invalid_argument);
    CHECK_THROWS_AS(fill_row_span(g, 0, 0, 4, CellStatus::Visible), std::invalid_argument);
}

TEST_CASE("fill_row_span touches span-size many cells")
{
    for (int lo = 0; lo < 6; ++lo) {
        for (int hi = lo; hi < 6; ++hi) {
            auto g = new_grid({6, 3}, CellStatus::Visible);
            const auto before = g;
            fill_row_span(g, 2, lo, hi, CellStatus::NotVisible);
            CHECK(diff_grids(before, g).size() == static_cast<std::size_t>(hi - lo + 1));
        }
    }
}

TEST_CASE("diff_grids finds differing coordinates")
{
    auto a = new_grid({3, 3}, CellStatus::Visible);
    auto b = a;
    CHECK(diff_grids(a, b).empty());

    b.at({2, 1}) = CellStatus::NotVisible;
    const auto d = diff_grids(a, b);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == CellCoord{2, 1});
    CHECK(diff_grids(a, b) == diff_grids(b, a));

    const auto dark = new_grid({3, 3}, CellStatus::NotVisible);
    CHECK(diff_grids(a, dark).size() == 9);
}

TEST_CASE("diff_grids rejects mismatched dims")
{
    const auto a = new_grid({3, 3}, CellStatus::Visible);
    const auto b = new_grid({3, 4}, CellStatus::Visible);
    CHECK_THROWS_AS(diff_grids(a, b), std::invalid_argument);
}

TEST_CASE("grid dump round-trips")
{
    auto g = new_grid({5, 3}, CellStatus::Visible);
    g.at({0, 0}) = CellStatus::NotVisible;
    g.at({4, 2}) = CellStatus::NotVisible;
    g.at({2, 1}) = CellStatus::NotVisible;

    const auto text = dump_grid(g);
    CHECK(text == "fovgrid 5 3\n#....\n..#..\n....#\n");
    CHECK(parse_grid_dump(text) == g);
}

TEST_CASE("grid dump parse errors carry line numbers")
{
    CHECK_THROWS_AS(parse_grid_dump(""), ParseError);
    CHECK_THROWS_AS(parse_grid_dump("fovgrid 2 2\n..\n"), ParseError);
    CHECK_THROWS_AS(parse_grid_dump("fovgrid 2 2\n..\n.x\n"), ParseError);
    try {
        parse_grid_dump("fovgrid 2 2\n...\n..\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}
