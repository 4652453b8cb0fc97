#include "doctest.h"

#include <nlohmann/json.hpp>

#include "legrid/grid.hpp"
#include "legrid/io.hpp"
#include "oracles.hpp"

using namespace legrid;
using namespace legrid::testing;

TEST_CASE("two by two unknot") {
    GridDiagram g = unknot2();
    CHECK(g.size() == 2);
    CHECK(g.is_knot());
    CHECK(g.component_count() == 1);
    CHECK(g.sign_at(0, 0) == 1);
    CHECK(g.sign_at(0, 1) == -1);
    CHECK(g.sign_at(1, 1) == 1);
    CHECK(g.sign_at(0, 2) == 0);
}

TEST_CASE("construction compacts sparse levels") {
    // Same unknot spread over levels {3, 7} x {2, 9}.
    GridDiagram g = GridDiagram::from_vertices(
        {{3, 2, 1}, {3, 9, -1}, {7, 2, -1}, {7, 9, 1}});
    CHECK(g.size() == 2);
    CHECK(g == unknot2());
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(GridDiagram::from_vertices({}), GridError);
    // Three vertices in a column.
    CHECK_THROWS_AS(GridDiagram::from_vertices({{0, 0, 1},
                                                {0, 1, -1},
                                                {0, 2, 1},
                                                {1, 0, -1},
                                                {1, 1, 1},
                                                {2, 2, -1}}),
                    GridError);
    // Equal signs in a column.
    CHECK_THROWS_AS(GridDiagram::from_vertices(
                        {{0, 0, 1}, {0, 1, 1}, {1, 0, -1}, {1, 1, -1}}),
                    GridError);
    // Duplicate vertex.
    CHECK_THROWS_AS(GridDiagram::from_vertices(
                        {{0, 0, 1}, {0, 0, -1}, {1, 1, 1}, {1, 1, -1}}),
                    GridError);
    // Unequal numbers of occupied columns and rows.
    CHECK_THROWS_AS(UnorientedGridDiagram::from_points(
                        {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}}),
                    GridError);
}

TEST_CASE("component count") {
    // Two stacked unknots.
    GridDiagram g = GridDiagram::from_vertices({{0, 0, 1},
                                                {0, 1, -1},
                                                {1, 0, -1},
                                                {1, 1, 1},
                                                {2, 2, 1},
                                                {2, 3, -1},
                                                {3, 2, -1},
                                                {3, 3, 1}});
    CHECK(g.component_count() == 2);
    CHECK(!g.is_knot());
    CHECK(g.components()[0].size() == 4);
    CHECK_THROWS_AS(
        GridDiagram::from_vertices(g.vertices(), /*require_knot=*/true),
        GridError);
}

TEST_CASE("orientation of unoriented diagrams") {
    auto u = UnorientedGridDiagram::from_points({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    GridDiagram g = u.orient();
    CHECK(g.is_knot());
    CHECK(g.sign_at(0, 0) == 1);  // least vertex becomes positive
    CHECK(g.unoriented() == u);
    // Orienting twice is deterministic.
    CHECK(u.orient() == g);
}

TEST_CASE("traversal alternates vertical and horizontal edges") {
    GridDiagram g = trefoil_positive();
    auto cyc = g.component_cycle(0);
    REQUIRE(cyc.size() == 10);
    for (size_t k = 0; k < cyc.size(); ++k) {
        const Vertex& p = cyc[k];
        const Vertex& q = cyc[(k + 1) % cyc.size()];
        if (k % 2 == 0) {
            CHECK(p.col == q.col);
            // Vertical edges run from the positive vertex to the negative.
            CHECK(p.sign == 1);
            CHECK(q.sign == -1);
        } else {
            CHECK(p.row == q.row);
        }
    }
}

TEST_CASE("canonical form identifies translates") {
    GridDiagram g = trefoil_positive();
    for (int dc = 0; dc < g.size(); ++dc)
        for (int dr = 0; dr < g.size(); ++dr) {
            GridDiagram t = g.translated(dc, dr);
            CHECK(t.canonical_key() == g.canonical_key());
            CHECK(equivalent(t, g));
            CHECK(t.canonical_form() == g.canonical_form());
        }
    CHECK(!equivalent(trefoil_positive(), trefoil_negative()));
    CHECK(!equivalent(g, g.reversed()));
    // The canonical form is itself a translate of the diagram.
    bool found = false;
    for (int dc = 0; dc < g.size() && !found; ++dc)
        for (int dr = 0; dr < g.size() && !found; ++dr)
            found = g.canonical_form() == g.translated(dc, dr);
    CHECK(found);
}

TEST_CASE("symmetries are involutions") {
    for (const GridDiagram& g :
         {trefoil_positive(), trefoil_negative(), unknot2()}) {
        CHECK(g.flip_cols().flip_cols() == g);
        CHECK(g.flip_rows().flip_rows() == g);
        CHECK(g.rotate180().rotate180() == g);
        CHECK(g.reversed().reversed() == g);
        CHECK(g.flip_cols().flip_rows() == g.rotate180());
    }
}

TEST_CASE("unoriented canonical key ignores orientation") {
    GridDiagram g = trefoil_positive();
    CHECK(g.unoriented().canonical_key() ==
          g.reversed().unoriented().canonical_key());
    CHECK(g.unoriented().canonical_key() ==
          g.translated(2, 3).unoriented().canonical_key());
    CHECK(g.unoriented().canonical_key() !=
          trefoil_negative().unoriented().canonical_key());
}

TEST_CASE("json round trip") {
    GridDiagram g = trefoil_positive();
    auto j = grid_to_json(g);
    CHECK(j["n"] == 5);
    CHECK(grid_from_json(j) == g);
    // Unsigned vertex lists are oriented automatically.
    auto plain = nlohmann::json::parse(
        R"({"n": 2, "vertices": [[0, 0], [0, 1], [1, 0], [1, 1]]})");
    CHECK(grid_from_json(plain) == unknot2());
}

TEST_CASE("text format") {
    // O marks positive vertices, X negative ones.
    GridDiagram g = parse_grid_text("# unknot\nO 0 0\nX 0 1\nX 1 0\nO 1 1\n");
    CHECK(g == unknot2());
    GridDiagram h = parse_grid_text("0 0\n0 1\n1 0\n1 1\n");
    CHECK(h == unknot2());
    CHECK_THROWS_AS(parse_grid_text("O 0\n"), GridError);
    CHECK_THROWS_AS(parse_grid_text("O 0 0 7\n"), GridError);
    CHECK_THROWS_AS(parse_grid_text("O 0 0\n1 1\n"), GridError);
}

TEST_CASE("k1 fixture loads") {
    GridDiagram k1 = k1_diagram();
    CHECK(k1.size() == 37);
    CHECK(k1.is_knot());
}
