#include "doctest.h"

#include <set>

#include "legrid/legendrian.hpp"
#include "oracles.hpp"

using namespace legrid;
using namespace legrid::testing;

namespace {

void check_against_oracle(const GridDiagram& g) {
    for (Side s : {Side::Plus, Side::Minus}) {
        FrontInvariants f = front_data(g, s);
        OracleFront o = oracle_front(g, s);
        REQUIRE(f.writhe == o.writhe);
        REQUIRE(f.crossings == o.crossings);
        REQUIRE(f.cusps_up == o.cusps_up);
        REQUIRE(f.cusps_down == o.cusps_down);
        REQUIRE(f.tb == o.tb);
        REQUIRE(f.r == o.r);
    }
}

}  // namespace

TEST_CASE("unknot fronts") {
    GridDiagram u = unknot2();
    for (Side s : {Side::Plus, Side::Minus}) {
        auto [tb, r] = tb_r(u, s);
        CHECK(tb == -1);
        CHECK(r == 0);
    }
    check_against_oracle(u);
}

TEST_CASE("trefoil fronts") {
    // The positive trefoil staircase realizes the maximal invariants tb = 1,
    // r = 0 on side +.
    GridDiagram tp = trefoil_positive();
    FrontInvariants fp = front_data(tp, Side::Plus);
    CHECK(fp.writhe == 3);
    CHECK(fp.tb == 1);
    CHECK(fp.r == 0);
    // Side - carries the mirror's invariants: the clockwise front of the
    // right trefoil is a left trefoil front, pinned at its maximum -6.
    FrontInvariants fpm = front_data(tp, Side::Minus);
    CHECK(fpm.writhe == -3);
    CHECK(fpm.tb == -6);
    CHECK(fpm.r == -1);

    // The left trefoil staircase: tb is bounded by -6 on side + and the
    // staircase attains the bound; side - peaks at the mirror's maximum 1.
    GridDiagram tn = trefoil_negative();
    FrontInvariants fn = front_data(tn, Side::Plus);
    CHECK(fn.writhe == -3);
    CHECK(fn.tb == -6);
    CHECK(fn.r == -1);
    FrontInvariants fnm = front_data(tn, Side::Minus);
    CHECK(fnm.tb == 1);
    CHECK(fnm.r == 0);

    check_against_oracle(tp);
    check_against_oracle(tn);

    // tb_+ + tb_- = -n on every knot diagram: the drawn writhe enters the
    // two front readings with opposite signs and cancels, which is exactly
    // what makes both sides invariant under exchange moves.
    for (const GridDiagram& g : {tp, tn, unknot2()}) {
        FrontInvariants a = front_data(g, Side::Plus);
        FrontInvariants b = front_data(g, Side::Minus);
        CHECK(a.writhe == -b.writhe);
        CHECK(a.tb + b.tb == -g.size());
    }
}

TEST_CASE("front census: all knots up to size 5 match the rotated geometry") {
    int count = 0;
    for (int n = 2; n <= 5; ++n)
        for (const GridDiagram& g : all_diagrams(n, true)) {
            check_against_oracle(g);
            ++count;
        }
    CHECK(count > 1000);
}

TEST_CASE("front invariants match the oracle on random larger knots") {
    std::mt19937 rng(20260816);
    for (int n = 7; n <= 10; ++n)
        for (int trial = 0; trial < 50; ++trial)
            check_against_oracle(random_knot(n, rng));
}

TEST_CASE("symmetries act on the invariants as expected") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        GridDiagram g = random_knot(6, rng);
        FrontInvariants p = front_data(g, Side::Plus);
        FrontInvariants m = front_data(g, Side::Minus);

        // Reversal keeps tb, negates r, swaps cusp kinds.
        FrontInvariants pr = front_data(g.reversed(), Side::Plus);
        CHECK(pr.tb == p.tb);
        CHECK(pr.r == -p.r);
        CHECK(pr.cusps_up == p.cusps_down);

        // A vertical-axis flip swaps the two sides.
        CHECK(tb_r(g.flip_cols(), Side::Plus) ==
              std::pair(m.tb, m.r));
        CHECK(tb_r(g.flip_cols(), Side::Minus) ==
              std::pair(p.tb, p.r));

        // A horizontal-axis flip swaps sides and negates r.
        CHECK(tb_r(g.flip_rows(), Side::Plus) ==
              std::pair(m.tb, -m.r));

        // A half turn keeps sides and negates r.
        CHECK(tb_r(g.rotate180(), Side::Plus) == std::pair(p.tb, -p.r));
        CHECK(tb_r(g.rotate180(), Side::Minus) == std::pair(m.tb, -m.r));
    }
}

TEST_CASE("stabilizations shift the invariants by their type and arrow") {
    // Type I moves keep side +; the side - pair shifts by (-1, +1) for a
    // right arrow and (-1, -1) for a left one. Type II mirrors this.
    std::mt19937 rng(4242);
    int seen = 0;
    for (int trial = 0; trial < 25; ++trial) {
        GridDiagram g = random_knot(6, rng);
        FrontInvariants p = front_data(g, Side::Plus);
        FrontInvariants m = front_data(g, Side::Minus);
        MoveFilter f;
        f.exchanges = f.destabilizations = false;
        for (const auto& mv : enumerate_moves(g, f)) {
            GridDiagram h = apply_move(g, mv.move);
            auto [tbp, rp] = tb_r(h, Side::Plus);
            auto [tbm, rm] = tb_r(h, Side::Minus);
            int dir = (mv.arrow == StabArrow::Right) ? +1 : -1;
            if (mv.type == StabType::I) {
                CHECK(std::pair(tbp, rp) == std::pair(p.tb, p.r));
                CHECK(std::pair(tbm, rm) == std::pair(m.tb - 1, m.r + dir));
            } else {
                CHECK(std::pair(tbm, rm) == std::pair(m.tb, m.r));
                CHECK(std::pair(tbp, rp) == std::pair(p.tb - 1, p.r - dir));
            }
            ++seen;
        }
    }
    CHECK(seen >= 500);
}

TEST_CASE("exchanges preserve both sides") {
    std::mt19937 rng(17);
    int seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        GridDiagram g = random_knot(6, rng);
        FrontInvariants p = front_data(g, Side::Plus);
        FrontInvariants m = front_data(g, Side::Minus);
        for (const auto& mv : enumerate_exchanges(g)) {
            GridDiagram h = apply_move(g, mv.move);
            CHECK(tb_r(h, Side::Plus) == std::pair(p.tb, p.r));
            CHECK(tb_r(h, Side::Minus) == std::pair(m.tb, m.r));
            ++seen;
        }
    }
    CHECK(seen >= 100);
}

TEST_CASE("front svg renders") {
    std::string svg = front_svg(trefoil_positive(), Side::Plus);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
    // One marker per cusp.
    size_t marks = 0;
    for (size_t pos = svg.find("<circle"); pos != std::string::npos;
         pos = svg.find("<circle", pos + 1))
        ++marks;
    FrontInvariants f = front_data(trefoil_positive(), Side::Plus);
    CHECK(marks == size_t(f.cusps_up + f.cusps_down));
}

TEST_CASE("decide: identical diagrams") {
    GridDiagram g = trefoil_positive();
    LegendrianDecision d = decide_legendrian_pair(g, g.translated(2, 1));
    CHECK(d.plus.verdict == Verdict::Equivalent);
    CHECK(d.minus.verdict == Verdict::Equivalent);
}

TEST_CASE("decide: opposite rotation numbers split one side only") {
    // Stabilize the unknot in the two type II directions: side + invariants
    // become (-2, +1) and (-2, -1), side - stays (-1, 0) for both.
    GridDiagram u = unknot2();
    MoveFilter f;
    f.exchanges = f.destabilizations = false;
    f.type = StabType::II;
    GridDiagram left, right;
    bool have_l = false, have_r = false;
    for (const auto& mv : enumerate_moves(u, f)) {
        if (mv.arrow == StabArrow::Left && !have_l) {
            left = apply_move(u, mv.move);
            have_l = true;
        }
        if (mv.arrow == StabArrow::Right && !have_r) {
            right = apply_move(u, mv.move);
            have_r = true;
        }
    }
    REQUIRE(have_l);
    REQUIRE(have_r);
    CHECK(tb_r(left, Side::Plus) == std::pair(-2, 1));
    CHECK(tb_r(right, Side::Plus) == std::pair(-2, -1));

    LegendrianDecision d = decide_legendrian_pair(left, right);
    CHECK(d.plus.verdict == Verdict::NotEquivalent);
    CHECK(d.plus.reason.find("invariant mismatch") != std::string::npos);
    CHECK(d.minus.verdict == Verdict::Equivalent);
}

TEST_CASE("decide: stabilize, exchange, compare") {
    GridDiagram g = trefoil_positive();
    MoveFilter f;
    f.exchanges = f.destabilizations = false;
    f.type = StabType::I;
    auto stabs = enumerate_moves(g, f);
    REQUIRE(!stabs.empty());
    GridDiagram h = apply_move(g, stabs.front().move);
    auto exch = enumerate_exchanges(h);
    if (!exch.empty()) h = apply_move(h, exch.front().move);

    LegendrianDecision d = decide_legendrian_pair(g, h);
    // Type I preserves side +; side - differs already on tb.
    CHECK(d.plus.verdict == Verdict::Equivalent);
    CHECK(d.minus.verdict == Verdict::NotEquivalent);
    CHECK(d.minus.reason.find("invariant mismatch") != std::string::npos);
}

TEST_CASE("decide: same class reached from different stabilizations") {
    // Two type II stabilizations of the unknot at different vertices with the
    // same arrow give the same Legendrian class on both sides.
    GridDiagram u = unknot2();
    MoveFilter f;
    f.exchanges = f.destabilizations = false;
    f.type = StabType::II;
    std::vector<GridDiagram> lefts;
    for (const auto& mv : enumerate_moves(u, f))
        if (mv.arrow == StabArrow::Left) lefts.push_back(apply_move(u, mv.move));
    REQUIRE(lefts.size() >= 2);
    LegendrianDecision d = decide_legendrian_pair(lefts[0], lefts[1]);
    CHECK(d.plus.verdict == Verdict::Equivalent);
    CHECK(d.minus.verdict == Verdict::Equivalent);
}
