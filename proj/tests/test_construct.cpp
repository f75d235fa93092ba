#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mobgraph/construct.hpp"
#include "grids.hpp"

using namespace mobgraph;

namespace {

Ring square(double x0, double y0, double side) {
    return {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}, {x0, y0}};
}

Region square_region(std::string id, double x0, double y0, double side = 1.0) {
    Region r;
    r.id = std::move(id);
    r.polygons = {{square(x0, y0, side)}};
    return r;
}

} // namespace

TEST_CASE("centroid of a rectangle is its center") {
    Point c = centroid({square(0, 0, 2)});
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(1.0));
    // orientation does not move the centroid
    Ring cw = square(0, 0, 2);
    std::reverse(cw.begin(), cw.end());
    Point c2 = centroid({cw});
    CHECK(c2[0] == doctest::Approx(1.0));
    CHECK(c2[1] == doctest::Approx(1.0));
}

TEST_CASE("centroid of an L-shape is area-weighted") {
    // 2x1 base plus 1x1 cap: area 3, centroid (5/6, 5/6)
    Ring ell = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 0}};
    Point c = centroid({ell});
    CHECK(c[0] == doctest::Approx(5.0 / 6.0));
    CHECK(c[1] == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("clockwise hole shifts the centroid away from itself") {
    // outer 4x2 box, unit hole centered at (1,1)
    Ring outer = {{0, 0}, {4, 0}, {4, 2}, {0, 2}, {0, 0}};
    Ring hole = {{0.5, 0.5}, {0.5, 1.5}, {1.5, 1.5}, {1.5, 0.5}, {0.5, 0.5}}; // clockwise
    Point c = centroid({outer, hole});
    CHECK(c[0] == doctest::Approx(15.0 / 7.0)); // (8*2 - 1*1) / 7
    CHECK(c[1] == doctest::Approx(1.0));
}

TEST_CASE("degenerate rings are rejected") {
    Ring collinear = {{0, 0}, {1, 1}, {2, 2}, {0, 0}};
    CHECK_THROWS_AS((void)centroid({collinear}), Error);
    Ring open = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK_THROWS_AS((void)centroid({open}), Error);
}

TEST_CASE("region centroid fixes ring orientation from structure") {
    // both rings counter-clockwise: the hole would *add* area if taken as-is,
    // but the polygon layout says ring 1 is a hole
    Ring outer = {{0, 0}, {4, 0}, {4, 2}, {0, 2}, {0, 0}};
    Ring hole_ccw = {{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}, {0.5, 0.5}};
    Region r;
    r.id = "donut";
    r.polygons = {{outer, hole_ccw}};
    Point c = region_centroid(r);
    CHECK(c[0] == doctest::Approx(15.0 / 7.0));
    CHECK(c[1] == doctest::Approx(1.0));
}

TEST_CASE("multipolygon centroid weights the parts by area") {
    Region r;
    r.id = "twin";
    r.multi = true;
    r.polygons = {{square(0, 0, 1)}, {square(10, 0, 2)}}; // areas 1 and 4
    Point c = region_centroid(r);
    CHECK(c[0] == doctest::Approx((0.5 * 1 + 11.0 * 4) / 5.0));
    CHECK(c[1] == doctest::Approx((0.5 * 1 + 1.0 * 4) / 5.0));
}

TEST_CASE("partition validation catches duplicate and empty ids") {
    Partition p;
    p.regions = {square_region("a", 0, 0), square_region("a", 2, 0)};
    CHECK_THROWS_AS(validate_partition(p), Error);
    Partition q;
    q.regions = {square_region("", 0, 0)};
    CHECK_THROWS_AS(validate_partition(q), Error);
}

TEST_CASE("queen vs rook on a corner touch") {
    // two unit squares sharing only the corner (1,1)
    Partition p;
    p.regions = {square_region("a", 0, 0), square_region("b", 1, 1)};
    Graph queen = region_adjacency_graph(p, Contiguity::Queen);
    CHECK(queen.adjacency().coeff(0, 1) == 1.0);
    Graph rook = region_adjacency_graph(p, Contiguity::Rook);
    CHECK(rook.adjacency().coeff(0, 1) == 0.0);
    CHECK(rook.nonzero_count() == 0);
}

TEST_CASE("shared edges count for both contiguity rules") {
    Partition p;
    p.regions = {square_region("a", 0, 0), square_region("b", 1, 0)};
    CHECK(region_adjacency_graph(p, Contiguity::Queen).adjacency().coeff(0, 1) == 1.0);
    CHECK(region_adjacency_graph(p, Contiguity::Rook).adjacency().coeff(0, 1) == 1.0);
}

TEST_CASE("contiguity tolerance separates near misses") {
    Partition p;
    p.regions = {square_region("a", 0, 0), square_region("b", 1.0 + 2e-9, 0)};
    Graph far = region_adjacency_graph(p, Contiguity::Queen, 1e-9);
    CHECK(far.nonzero_count() == 0);
    Graph near = region_adjacency_graph(p, Contiguity::Queen, 5e-9);
    CHECK(near.adjacency().coeff(0, 1) == 1.0);
}

TEST_CASE("rook needs a positive-length overlap, not a touching point") {
    // b sits to the right of a, shifted up so the shared border is only the
    // corner point (1,1)..(1,1): no overlap length
    Partition p;
    p.regions = {square_region("a", 0, 0), square_region("b", 1, 1)};
    CHECK(region_adjacency_graph(p, Contiguity::Rook).nonzero_count() == 0);
    // shifted up by half: overlap length 1/2 > tol
    Partition q;
    q.regions = {square_region("a", 0, 0), square_region("b", 1, 0.5)};
    CHECK(region_adjacency_graph(q, Contiguity::Rook).adjacency().coeff(0, 1) == 1.0);
}

TEST_CASE("grid partitions produce lattice adjacency counts") {
    // unit grid, a x b squares: rook edges 2ab-a-b, queen adds 2(a-1)(b-1)
    for (auto [rows, cols] : {std::pair<int, int>{3, 3}, {2, 4}, {4, 5}}) {
        Partition p = testgrids::grid_partition(rows, cols);
        auto edge_count = [](const Graph& g) { return g.nonzero_count() / 2; };
        std::size_t rook_expected = 2 * rows * cols - rows - cols;
        std::size_t queen_expected = rook_expected + 2 * (rows - 1) * (cols - 1);
        Graph rook = region_adjacency_graph(p, Contiguity::Rook);
        Graph queen = region_adjacency_graph(p, Contiguity::Queen);
        CHECK(edge_count(rook) == rook_expected);
        CHECK(edge_count(queen) == queen_expected);

        // rook edges are a subset of queen edges
        for (std::size_t i = 0; i < p.regions.size(); ++i)
            for (std::size_t j = 0; j < p.regions.size(); ++j)
                if (rook.adjacency().coeff(i, j) != 0.0)
                    CHECK(queen.adjacency().coeff(i, j) != 0.0);
    }
}

TEST_CASE("adjacency graph carries centroids as node coordinates") {
    Partition p = testgrids::grid_partition(2, 2);
    Graph g = region_adjacency_graph(p);
    REQUIRE(g.coords());
    CHECK((*g.coords())[0][0] == doctest::Approx(0.5));
    CHECK((*g.coords())[3][0] == doctest::Approx(1.5));
    CHECK(g.labels()[0] == "r0c0");
}

TEST_CASE("single region partitions build a one-node graph") {
    Partition p;
    p.regions = {square_region("only", 0, 0)};
    Graph g = region_adjacency_graph(p);
    CHECK(g.node_count() == 1);
    CHECK(g.nonzero_count() == 0);
    Partition empty;
    CHECK_THROWS_AS((void)region_adjacency_graph(empty), Error);
}

TEST_CASE("od matrix validates flows") {
    std::vector<std::string> ids{"a", "b"};
    CHECK_THROWS_AS((void)make_od_matrix(ids, {{0, 1, -1.0}}), Error);
    CHECK_THROWS_AS((void)make_od_matrix(ids, {{0, 1, 1.0}, {0, 1, 2.0}}), Error);
    CHECK_THROWS_AS((void)make_od_matrix({"a", "a"}, {}), Error);
    // zeros are dropped, not stored
    ODMatrix m = make_od_matrix(ids, {{0, 1, 0.0}, {1, 0, 3.0}});
    CHECK(m.flows.nonZeros() == 1);
}

TEST_CASE("od graph keeps isolated zones and drops the diagonal by default") {
    ODMatrix m = make_od_matrix({"a", "b", "c"},
                                {{0, 1, 5.0}, {1, 0, 2.0}, {0, 0, 7.0}});
    Graph g = od_graph(m);
    CHECK(g.node_count() == 3);
    CHECK(g.nonzero_count() == 2);
    CHECK(g.adjacency().coeff(0, 0) == 0.0);
    CHECK(g.adjacency().coeff(0, 1) == 5.0);
    CHECK(g.directed());

    Graph loops = od_graph(m, true);
    CHECK(loops.nonzero_count() == 3);
    CHECK(loops.adjacency().coeff(0, 0) == 7.0);
}
