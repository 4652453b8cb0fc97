#include "legrid/surface.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace legrid;
using namespace legrid::testing;

namespace {

template <typename F>
std::optional<SurfaceErrorCode> surface_error(F&& f) {
    try {
        f();
    } catch (const SurfaceError& e) {
        return e.code();
    }
    return std::nullopt;
}

SurfaceRect rnd_rect(int m, std::mt19937& rng) {
    auto lvl = [&] { return int(rng() % m); };
    SurfaceRect r;
    r.th1 = lvl();
    do r.th2 = lvl();
    while (r.th2 == r.th1);
    r.ph1 = lvl();
    do r.ph2 = lvl();
    while (r.ph2 == r.ph1);
    return r;
}

// The square staircase along the main diagonal: rects [i;i+1]x[i;i+1].
std::vector<SurfaceRect> diagonal_staircase(int count) {
    std::vector<SurfaceRect> rects;
    for (int i = 0; i < count; ++i)
        rects.push_back({i, (i + 1) % count, i, (i + 1) % count});
    return rects;
}

std::vector<CanonicalKey> component_keys(const GridDiagram& g) {
    std::vector<CanonicalKey> keys;
    for (const auto& comp : g.components()) {
        std::vector<std::pair<int, int>> pts;
        for (const auto& v : comp) pts.emplace_back(v.col, v.row);
        keys.push_back(
            UnorientedGridDiagram::from_points(std::move(pts)).canonical_key());
    }
    return keys;
}

// Replays a recorded slide: every move must re-classify to what was
// recorded, the final diagram must match, and its two components must be
// copies of the annulus core `core`.
void check_slide(const SurfaceDiagram& pi, const AnnulusSlide& slide,
                 const UnorientedGridDiagram& core) {
    REQUIRE(slide.moves.size() == pi.rects.size());
    CHECK(slide.start.unoriented() == boundary(pi));
    CHECK(slide.moves.front().kind == MoveKind::Stabilization);
    CHECK(slide.moves.front().type == StabType::II);
    CHECK(slide.moves.back().kind == MoveKind::Destabilization);
    CHECK(slide.moves.back().type == StabType::II);
    for (size_t i = 1; i + 1 < slide.moves.size(); ++i)
        CHECK(slide.moves[i].kind == MoveKind::Exchange);

    GridDiagram d = slide.start;
    for (const ClassifiedMove& cm : slide.moves) {
        ClassifiedMove again = classify_move(d, cm.move);
        CHECK(again.kind == cm.kind);
        CHECK(again.type == cm.type);
        d = apply_move(d, cm.move);
    }
    CHECK(d == slide.result);

    std::vector<CanonicalKey> keys = component_keys(slide.result);
    REQUIRE(keys.size() == 2);
    CHECK(keys[0] == keys[1]);
    CHECK(keys[0] == core.canonical_key());
}

}  // namespace

TEST_CASE("cyclic rectangle compatibility matches a bitmap oracle") {
    // Hand-picked contacts first: corner-to-corner chains, a two-corner
    // share, a transversal crossing, overlaps and segment contacts.
    CHECK(compatible({0, 1, 0, 1}, {1, 2, 1, 2}, 3));       // one shared corner
    CHECK(compatible({0, 1, 1, 2}, {1, 2, 0, 1}, 3));       // one shared corner
    CHECK(compatible({0, 1, 0, 1}, {1, 2, 1, 0}, 3));       // two shared corners
    CHECK(compatible({0, 2, 0, 2}, {2, 0, 2, 0}, 4));       // sphere: four corners
    CHECK(compatible({0, 3, 1, 2}, {1, 2, 0, 3}, 4));       // clean crossing
    CHECK(compatible({0, 1, 0, 1}, {2, 3, 2, 3}, 5));       // disjoint
    CHECK_FALSE(compatible({0, 2, 0, 2}, {1, 3, 1, 3}, 4)); // corner inside
    CHECK_FALSE(compatible({0, 2, 0, 1}, {2, 4, 0, 1}, 5)); // shared segment
    CHECK_FALSE(compatible({0, 2, 0, 1}, {1, 3, 0, 1}, 5)); // overlapping strip
    CHECK_FALSE(compatible({0, 1, 0, 1}, {0, 1, 0, 1}, 3)); // duplicate
    CHECK_FALSE(compatible({0, 2, 0, 2}, {1, 3, 2, 4}, 5)); // corner touches side

    // Near-complementary arcs: the theta intersection has two components,
    // so the overlap is two strips, not one.
    CHECK_FALSE(compatible({2, 1, 0, 1}, {1, 2, 0, 1}, 4));

    std::mt19937 rng(20260816);
    for (int trial = 0; trial < 600; ++trial) {
        int m = 4 + int(rng() % 6);
        SurfaceRect a = rnd_rect(m, rng), b = rnd_rect(m, rng);
        bool expected = oracle_compatible(a, b, m);
        CAPTURE(m);
        CAPTURE(a.th1);
        CAPTURE(a.th2);
        CAPTURE(a.ph1);
        CAPTURE(a.ph2);
        CAPTURE(b.th1);
        CAPTURE(b.th2);
        CAPTURE(b.ph1);
        CAPTURE(b.ph2);
        CHECK(compatible(a, b, m) == expected);
    }
}

TEST_CASE("surface validation accepts corner contacts and rejects bad input") {
    CHECK(validate_surface({{0, 1, 0, 1}}, 2).rects.size() == 1);
    CHECK(validate_surface({}, 1).rects.empty());
    CHECK(validate_surface({{0, 1, 0, 1}, {1, 2, 1, 2}}, 3).rects.size() == 2);

    CHECK(surface_error([] { return validate_surface({{0, 1, 0, 1}}, 0); }) ==
          SurfaceErrorCode::BadInput);
    CHECK(surface_error([] { return validate_surface({{0, 0, 0, 1}}, 2); }) ==
          SurfaceErrorCode::BadInput);
    CHECK(surface_error([] { return validate_surface({{0, 1, 0, 2}}, 2); }) ==
          SurfaceErrorCode::BadInput);
    CHECK(surface_error([] { return validate_surface({{0, 1, 0, -1}}, 3); }) ==
          SurfaceErrorCode::BadInput);

    CHECK(surface_error([] {
              return validate_surface({{0, 2, 0, 2}, {1, 3, 1, 3}}, 4);
          }) == SurfaceErrorCode::IncompatiblePair);
    CHECK(surface_error([] {
              return validate_surface({{0, 2, 0, 1}, {2, 4, 0, 1}}, 5);
          }) == SurfaceErrorCode::IncompatiblePair);
    CHECK(surface_error([] {
              return validate_surface({{0, 1, 0, 1}, {0, 1, 0, 1}}, 2);
          }) == SurfaceErrorCode::IncompatiblePair);

    // Three parallel rectangles hang six free vertices on two meridians.
    CHECK(surface_error([] {
              return validate_surface(
                  {{0, 1, 0, 1}, {0, 1, 2, 3}, {0, 1, 4, 5}}, 6);
          }) == SurfaceErrorCode::FreeVertexOverflow);
}

TEST_CASE("the boundary is the compacted set of free vertices") {
    // A single rectangle bounds the 4-vertex unknot.
    SurfaceDiagram one = validate_surface({{0, 3, 1, 2}}, 4);
    UnorientedGridDiagram b1 = boundary(one);
    CHECK(b1.size() == 2);
    CHECK(b1.points() ==
          std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(b1.orient().is_knot());

    // Two rectangles closing up a sphere have no free vertices.
    SurfaceDiagram sphere = validate_surface({{0, 2, 0, 2}, {2, 0, 2, 0}}, 4);
    CHECK(free_vertices(sphere).empty());
    CHECK(boundary(sphere).size() == 0);

    // A corner-to-corner pair bounds a single hexagonal unknot.
    SurfaceDiagram pair = validate_surface({{0, 1, 0, 1}, {1, 2, 1, 2}}, 3);
    CHECK(free_vertices(pair).size() == 6);
    UnorientedGridDiagram b2 = boundary(pair);
    CHECK(b2.size() == 3);
    CHECK(b2.orient().is_knot());

    // A clean crossing of two rectangles bounds a two-component diagram.
    SurfaceDiagram cross = validate_surface({{0, 3, 1, 2}, {1, 2, 0, 3}}, 4);
    CHECK(free_vertices(cross).size() == 8);
    CHECK(boundary(cross).orient().component_count() == 2);
}

TEST_CASE("dividing codes record the corner relations") {
    // The two definition shapes: ascending and descending contact.
    DividingCode asc = dividing_code(validate_surface({{0, 1, 0, 1}, {1, 2, 1, 2}}, 3));
    REQUIRE(asc.entries.size() == 1);
    CHECK(asc.entries[0] ==
          DividingCode::Entry{0, 1, DividingRelation::Ascending});

    DividingCode desc = dividing_code(validate_surface({{0, 1, 1, 2}, {1, 2, 0, 1}}, 3));
    REQUIRE(desc.entries.size() == 1);
    CHECK(desc.entries[0] ==
          DividingCode::Entry{0, 1, DividingRelation::Descending});

    // Disjoint rectangles: no relation.
    CHECK(dividing_code(validate_surface({{0, 1, 0, 1}, {2, 3, 2, 3}}, 5))
              .entries.empty());

    // A two-corner share is both ascending and descending.
    DividingCode both = dividing_code(validate_surface({{0, 1, 0, 1}, {1, 2, 1, 0}}, 3));
    CHECK(both.entries ==
          std::vector<DividingCode::Entry>{
              {0, 1, DividingRelation::Ascending},
              {0, 1, DividingRelation::Descending}});

    // The sphere: each rectangle follows the other in both relations.
    DividingCode sphere = dividing_code(validate_surface({{0, 2, 0, 2}, {2, 0, 2, 0}}, 4));
    CHECK(sphere.entries ==
          std::vector<DividingCode::Entry>{
              {0, 1, DividingRelation::Ascending},
              {0, 1, DividingRelation::Descending},
              {1, 0, DividingRelation::Ascending},
              {1, 0, DividingRelation::Descending}});
}

TEST_CASE("code equivalence is a relation-preserving bijection") {
    auto perm_code = [](const DividingCode& c, const std::vector<int>& p) {
        DividingCode out;
        out.size = c.size;
        for (const auto& e : c.entries)
            out.entries.push_back({p[e.a], p[e.b], e.rel});
        std::sort(out.entries.begin(), out.entries.end());
        return out;
    };

    DividingCode empty;
    CHECK(codes_equivalent(empty, empty));

    // Random sparse codes against the brute-force bijection search.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + int(rng() % 5);
        auto random_code = [&] {
            DividingCode c;
            c.size = n;
            int edges = int(rng() % (2 * n));
            std::set<DividingCode::Entry> seen;
            for (int e = 0; e < edges; ++e) {
                int a = int(rng() % n), b = int(rng() % n);
                if (a == b) continue;
                DividingRelation rel = (rng() % 2) ? DividingRelation::Ascending
                                                   : DividingRelation::Descending;
                seen.insert({a, b, rel});
            }
            c.entries.assign(seen.begin(), seen.end());
            return c;
        };
        DividingCode a = random_code();

        // A relabeled copy must always be equivalent.
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        DividingCode b = perm_code(a, p);
        CHECK(codes_equivalent(a, b));
        CHECK(oracle_codes_equivalent(a, b));

        // An independent random code agrees with the oracle either way.
        DividingCode c = random_code();
        CHECK(codes_equivalent(a, c) == oracle_codes_equivalent(a, c));
    }

    // Dropping an entry or changing the size breaks equivalence.
    DividingCode chain;
    chain.size = 3;
    chain.entries = {{0, 1, DividingRelation::Ascending},
                     {1, 2, DividingRelation::Ascending}};
    DividingCode shorter = chain;
    shorter.entries.pop_back();
    CHECK_FALSE(codes_equivalent(chain, shorter));
    DividingCode bigger = chain;
    bigger.size = 4;
    CHECK_FALSE(codes_equivalent(chain, bigger));
}

TEST_CASE("the special surface keeps the link on its boundary") {
    std::mt19937 rng(99);
    std::vector<GridDiagram> inputs = {unknot2(), trefoil_positive(),
                                       random_knot(4, rng),
                                       random_knot(6, rng)};
    for (const GridDiagram& r : inputs) {
        const int n = r.size();
        SurfaceDiagram pi = special_surface(r);
        CHECK(pi.m == 7 * n);

        // The scaled link vertices are free vertices of the surface.
        auto fv = free_vertices(pi);
        std::set<std::pair<int, int>> fvset(fv.begin(), fv.end());
        for (const Vertex& v : r.vertices())
            CHECK(fvset.contains({7 * v.col, 7 * v.row}));

        // Every strip boundary meridian is occupied by some rectangle side.
        std::set<int> th_sides;
        std::set<std::pair<int, int>> corners;
        for (const SurfaceRect& rect : pi.rects) {
            th_sides.insert(rect.th1);
            th_sides.insert(rect.th2);
            for (int x : {rect.th1, rect.th2})
                for (int y : {rect.ph1, rect.ph2}) corners.insert({x, y});
        }
        for (int c = 0; c < n; ++c)
            for (int j : {1, 2, 4, 5}) CHECK(th_sides.contains(7 * c + j));

        // Vertex uniqueness: every refined meridian level meets the first
        // strip longitude of every row in a rectangle vertex.
        for (const Vertex& v : r.vertices())
            for (int c = 0; c < n; ++c)
                for (int j : {1, 2, 4, 5})
                    CHECK(corners.contains({7 * c + j, 7 * v.row + 1}));
    }
}

TEST_CASE("the special surface is translation equivariant") {
    std::mt19937 rng(1234);
    GridDiagram r = random_knot(5, rng);
    SurfaceDiagram pi = special_surface(r);
    SurfaceDiagram pi_t = special_surface(r.translated(2, 3));
    const int m = pi.m;
    std::vector<SurfaceRect> moved;
    for (const SurfaceRect& rect : pi.rects)
        moved.push_back({(rect.th1 + 14) % m, (rect.th2 + 14) % m,
                         (rect.ph1 + 21) % m, (rect.ph2 + 21) % m});
    std::sort(moved.begin(), moved.end());
    CHECK(moved == pi_t.rects);

    // Equivalent inputs give code-isomorphic outputs.
    CHECK(codes_equivalent(dividing_code(pi), dividing_code(pi_t)));
}

TEST_CASE("staircase push-off annuli bound two copies of the knot") {
    std::mt19937 rng(42);
    std::vector<GridDiagram> inputs = {unknot2(), trefoil_positive(),
                                       trefoil_negative(), random_knot(5, rng)};
    for (const GridDiagram& k : inputs) {
        SurfaceDiagram pi = staircase_of(k);
        CHECK(int(pi.rects.size()) == 2 * k.size());
        GridDiagram b = boundary(pi).orient();
        std::vector<CanonicalKey> keys = component_keys(b);
        REQUIRE(keys.size() == 2);
        CHECK(keys[0] == keys[1]);
        CHECK(keys[0] == k.unoriented().canonical_key());
    }
}

TEST_CASE("the annulus slide replays across a square staircase") {
    SurfaceDiagram square = validate_surface(diagonal_staircase(4), 4);
    AnnulusSlide slide = slide_annulus_boundary(square);
    CHECK(slide.moves.size() == 4);
    check_slide(square, slide, unknot2().unoriented());

    SurfaceDiagram six = validate_surface(diagonal_staircase(6), 6);
    AnnulusSlide slide6 = slide_annulus_boundary(six);
    CHECK(slide6.moves.size() == 6);
    check_slide(six, slide6, unknot2().unoriented());
}

TEST_CASE("the annulus slide crosses knotted staircases") {
    std::mt19937 rng(5150);
    std::vector<GridDiagram> inputs = {trefoil_positive(), random_knot(4, rng),
                                       random_knot(6, rng)};
    for (const GridDiagram& k : inputs) {
        SurfaceDiagram pi = staircase_of(k);
        AnnulusSlide slide = slide_annulus_boundary(pi);
        CHECK(int(slide.moves.size()) == 2 * k.size());
        check_slide(pi, slide, k.unoriented());
    }
}

TEST_CASE("the annulus slide crosses the reference staircase") {
    GridDiagram k1 = k1_diagram();
    SurfaceDiagram pi = staircase_of(k1);
    CHECK(pi.rects.size() == 74);
    AnnulusSlide slide = slide_annulus_boundary(pi);
    CHECK(slide.moves.size() == 74);
    check_slide(pi, slide, k1.unoriented());
}

TEST_CASE("non-staircases are rejected") {
    auto code = [](std::vector<SurfaceRect> rects, int m) {
        return surface_error(
            [&] { return slide_annulus_boundary(validate_surface(rects, m)); });
    };
    // Too small, closed, or simply not chained.
    CHECK(code({{0, 1, 0, 1}}, 2) == SurfaceErrorCode::NotStaircase);
    CHECK(code({{0, 2, 0, 2}, {2, 0, 2, 0}}, 4) ==
          SurfaceErrorCode::NotStaircase);
    CHECK(code({{0, 1, 0, 1}, {2, 3, 2, 3}, {4, 5, 4, 5}, {6, 7, 6, 7}}, 8) ==
          SurfaceErrorCode::NotStaircase);
    CHECK(code({{0, 3, 1, 2}, {1, 2, 0, 3}}, 4) ==
          SurfaceErrorCode::NotStaircase);
    // An odd cycle is not an annulus.
    CHECK(code(diagonal_staircase(5), 5) == SurfaceErrorCode::NotStaircase);
    // A two-corner contact breaks the staircase condition.
    CHECK(code({{0, 1, 0, 1}, {1, 2, 1, 0}}, 3) ==
          SurfaceErrorCode::NotStaircase);
    // The special surface of a knot is no staircase either.
    CHECK(surface_error([] {
              return slide_annulus_boundary(special_surface(unknot2()));
          }) == SurfaceErrorCode::NotStaircase);
    // Invalid diagrams fail validation, not staircase detection.
    CHECK(surface_error([] {
              SurfaceDiagram bad;
              bad.m = 4;
              bad.rects = {{0, 2, 0, 2}, {1, 3, 1, 3}};
              return slide_annulus_boundary(bad);
          }) == SurfaceErrorCode::IncompatiblePair);
}
