#include "legrid/legendrian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace legrid {

namespace {

int sgn(int x) { return (x > 0) - (x < 0); }

// Direction the two edges leave a vertex: dx = +1 means the horizontal edge
// extends east (partner in a higher column), dy = +1 north. In the planar
// picture the vertex sits at the (-dx, -dy) corner of the L formed by its
// edges; e.g. dx = +1, dy = -1 puts it at the northwest corner.
struct CornerDirs {
    int dx, dy;
};

CornerDirs corner_dirs(const GridDiagram& g, const Vertex& v) {
    auto cp = g.column(v.col);
    auto rp = g.row(v.row);
    const Vertex& pv = (cp[0].row == v.row) ? cp[1] : cp[0];
    const Vertex& ph = (rp[0].col == v.col) ? rp[1] : rp[0];
    return {sgn(ph.col - v.col), sgn(pv.row - v.row)};
}

}  // namespace

FrontInvariants front_data(const GridDiagram& g, Side side) {
    if (!g.is_knot())
        throw GridError(GridErrorCode::NotAKnot,
                        "front invariants need a knot diagram");
    FrontInvariants out;
    const int n = g.size();

    // Crossings of the planar picture: vertical edges pass over horizontal
    // ones. With rows growing northward, the drawn crossing is positive
    // exactly when -v_y * h_x > 0 (v_y = motion of the over strand, from
    // positive to negative vertex; h_x = motion of the under strand,
    // negative to positive).
    //
    // The writhe we report is the writhe of the *front*, read with the
    // standard convention that the strand of lesser slope passes in front.
    // After the counterclockwise rotation the vertical segments have the
    // lesser slope, so the front reading agrees with the drawn picture;
    // after the clockwise rotation the horizontal segments do, so every
    // drawn crossing flips. Only this reading makes tb = writhe - cusps/2
    // independent of where the torus is cut (it gives tb+ + tb- = -n, with
    // the writhe of the drawn picture cancelling between the sides).
    const int w_sign = (side == Side::Plus) ? +1 : -1;
    for (int c = 0; c < n; ++c) {
        auto cp = g.column(c);
        int rlo = cp[0].row, rhi = cp[1].row;  // sorted by row
        int v_y = (cp[0].sign > 0) ? +1 : -1;  // + at bottom: moves north
        for (int r = rlo + 1; r < rhi; ++r) {
            auto rp = g.row(r);
            int clo = rp[0].col, chi = rp[1].col;  // sorted by column
            if (!(clo < c && c < chi)) continue;
            int h_x = (rp[1].sign > 0) ? +1 : -1;  // + at right: moves east
            ++out.crossings;
            out.writhe += w_sign * -v_y * h_x;
        }
    }

    // Rotating counterclockwise turns the northwest and southeast corners
    // into cusps, clockwise the other two. Among cusp vertices, the cusp
    // points up exactly when the vertex sign matches the direction of its
    // vertical edge.
    for (const auto& v : g.vertices()) {
        auto [dx, dy] = corner_dirs(g, v);
        int want = (side == Side::Plus) ? -1 : +1;
        if (dx * dy != want) continue;
        if (v.sign * dy > 0)
            ++out.cusps_up;
        else
            ++out.cusps_down;
    }

    out.tb = out.writhe - (out.cusps_up + out.cusps_down) / 2;
    out.r = (out.cusps_down - out.cusps_up) / 2;
    return out;
}

std::pair<int, int> tb_r(const GridDiagram& g, Side side) {
    FrontInvariants f = front_data(g, side);
    return {f.tb, f.r};
}

std::string front_svg(const GridDiagram& g, Side side) {
    if (!g.is_knot())
        throw GridError(GridErrorCode::NotAKnot, "front needs a knot diagram");
    const int n = g.size();
    const double unit = 40.0, margin = 30.0;
    const double alpha = (side == Side::Plus ? 1.0 : -1.0) * 0.26;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    auto map = [&](double x, double y) {
        double u = x * ca - y * sa, v = x * sa + y * ca;
        // SVG y axis points down.
        return std::pair{margin + unit * (u + n * 0.5),
                         margin + unit * (n - 0.3 - v)};
    };

    std::ostringstream svg;
    double w = 2 * margin + unit * (n + 2), h = 2 * margin + unit * (n + 1);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
        << "\">\n";
    svg << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\" "
           "stroke-linecap=\"round\">\n";

    // Horizontal edges are split where a vertical edge passes over them.
    const double gap = 0.18;
    for (int r = 0; r < n; ++r) {
        auto rp = g.row(r);
        double x0 = rp[0].col, x1 = rp[1].col;
        std::vector<double> cuts;
        for (int c = rp[0].col + 1; c < rp[1].col; ++c) {
            auto cp = g.column(c);
            if (cp[0].row < r && r < cp[1].row) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        double cur = x0;
        auto seg = [&](double xa, double xb) {
            auto [ua, va] = map(xa, r);
            auto [ub, vb] = map(xb, r);
            svg << "<line x1=\"" << ua << "\" y1=\"" << va << "\" x2=\"" << ub
                << "\" y2=\"" << vb << "\"/>\n";
        };
        for (double cut : cuts) {
            seg(cur, cut - gap);
            cur = cut + gap;
        }
        seg(cur, x1);
    }
    for (int c = 0; c < n; ++c) {
        auto cp = g.column(c);
        auto [ua, va] = map(c, cp[0].row);
        auto [ub, vb] = map(c, cp[1].row);
        svg << "<line x1=\"" << ua << "\" y1=\"" << va << "\" x2=\"" << ub
            << "\" y2=\"" << vb << "\"/>\n";
    }
    svg << "</g>\n";

    // Mark cusp vertices.
    for (const auto& v : g.vertices()) {
        auto [dx, dy] = corner_dirs(g, v);
        int want = (side == Side::Plus) ? -1 : +1;
        if (dx * dy != want) continue;
        auto [u, vv] = map(v.col, v.row);
        svg << "<circle cx=\"" << u << "\" cy=\"" << vv
            << "\" r=\"3.5\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

// Meet-in-the-middle search used by decide_legendrian_pair. Side A grows the
// closure of `a` under exchanges plus stabilizations/destabilizations of
// `type_a`; side B does the same from `b` with the other type. A diagram seen
// from both sides has the side-relevant class of `a` and the complementary
// class of `b`.
struct MeetResult {
    bool found = false;
    GridDiagram witness;
    size_t explored = 0;
    bool exhausted_a = false, exhausted_b = false;
};

MeetResult meet_search(const GridDiagram& a, const GridDiagram& b,
                       StabType type_a, StabType type_b, int max_size,
                       size_t node_budget) {
    struct SideState {
        std::unordered_map<CanonicalKey, size_t, CanonicalKeyHash> seen;
        std::vector<GridDiagram> members;
        std::deque<size_t> frontier;
        StabType type;
        bool done = false;  // frontier exhausted (class closed within bounds)
        bool cut = false;   // stopped by the node budget
    };
    SideState s[2];
    s[0].type = type_a;
    s[1].type = type_b;
    MeetResult res;
    for (int i = 0; i < 2; ++i) {
        GridDiagram start = (i == 0 ? a : b).canonical_form();
        s[i].seen.emplace(start.canonical_key(), 0);
        s[i].members.push_back(std::move(start));
        s[i].frontier.push_back(0);
    }
    {
        CanonicalKey k0 = s[0].members[0].canonical_key();
        if (s[1].seen.contains(k0)) {
            res.found = true;
            res.witness = s[0].members[0];
            res.explored = 2;
            return res;
        }
    }
    while (true) {
        int i;
        bool live0 = !s[0].frontier.empty(), live1 = !s[1].frontier.empty();
        if (!live0 && !live1) break;
        if (live0 && live1)
            i = (s[0].frontier.size() <= s[1].frontier.size()) ? 0 : 1;
        else
            i = live0 ? 0 : 1;
        size_t idx = s[i].frontier.front();
        s[i].frontier.pop_front();
        GridDiagram cur = s[i].members[idx];
        MoveFilter f;
        f.type = s[i].type;
        f.stabilizations = cur.size() < max_size;
        for (const auto& mv : enumerate_moves(cur, f)) {
            GridDiagram next = apply_move(cur, mv.move).canonical_form();
            CanonicalKey key = next.canonical_key();
            if (s[1 - i].seen.contains(key)) {
                res.found = true;
                res.witness = std::move(next);
                res.explored = s[0].members.size() + s[1].members.size();
                return res;
            }
            if (s[i].seen.contains(key)) continue;
            if (s[0].members.size() + s[1].members.size() >= node_budget) {
                s[i].cut = true;
                break;
            }
            s[i].seen.emplace(std::move(key), s[i].members.size());
            s[i].frontier.push_back(s[i].members.size());
            s[i].members.push_back(std::move(next));
        }
        if (s[i].cut) break;
    }
    res.explored = s[0].members.size() + s[1].members.size();
    res.exhausted_a = s[0].cut;
    res.exhausted_b = s[1].cut;
    return res;
}

SideDecision decide_side(const GridDiagram& a, const GridDiagram& b, Side side,
                         const DecideOptions& opts) {
    SideDecision dec;
    auto [tba, ra] = tb_r(a, side);
    auto [tbb, rb] = tb_r(b, side);
    dec.tb_a = tba;
    dec.r_a = ra;
    dec.tb_b = tbb;
    dec.r_b = rb;
    if (tba != tbb || ra != rb) {
        dec.verdict = Verdict::NotEquivalent;
        dec.reason = (tba != tbb) ? "invariant mismatch: tb"
                                  : "invariant mismatch: r";
        return dec;
    }
    if (equivalent(a, b)) {
        dec.verdict = Verdict::Equivalent;
        dec.reason = "identical up to translation";
        return dec;
    }
    // Moves that preserve this side's class for diagram a, and the
    // complementary ones for b.
    StabType keep = (side == Side::Plus) ? StabType::I : StabType::II;
    StabType other = (keep == StabType::I) ? StabType::II : StabType::I;
    int max_size = std::max(a.size(), b.size()) + opts.extra_levels;
    MeetResult meet =
        meet_search(a, b, keep, other, max_size, opts.node_budget);
    dec.explored = meet.explored;
    if (!meet.found) {
        dec.verdict = Verdict::Unknown;
        dec.reason = "no common refinement found within budget";
        return dec;
    }
    // The witness carries a's class on this side and b's on the other; it
    // matches b outright exactly when it is exchange-equivalent to b.
    ExchangeDecision ex =
        exchange_equivalent(meet.witness, b, opts.exchange_budget);
    dec.explored += ex.explored;
    if (ex.verdict == Verdict::Equivalent) {
        dec.verdict = Verdict::Equivalent;
        dec.reason = "joined through a common diagram";
    } else if (ex.verdict == Verdict::NotEquivalent) {
        if (opts.assume_trivial_symmetry) {
            dec.verdict = Verdict::NotEquivalent;
            dec.reason = "exchange classes differ (trivial symmetry assumed)";
        } else {
            dec.verdict = Verdict::Unknown;
            dec.reason = "exchange classes differ; distinguishing them needs "
                         "the trivial-symmetry assumption";
        }
    } else {
        dec.verdict = Verdict::Unknown;
        dec.reason = "exchange search exceeded its budget";
    }
    return dec;
}

}  // namespace

LegendrianDecision decide_legendrian_pair(const GridDiagram& a,
                                          const GridDiagram& b,
                                          const DecideOptions& opts) {
    LegendrianDecision out;
    out.plus = decide_side(a, b, Side::Plus, opts);
    out.minus = decide_side(a, b, Side::Minus, opts);
    return out;
}

}  // namespace legrid
