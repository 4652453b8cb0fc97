#include "legrid/moves.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace legrid {

namespace {

int mod(int x, int m) { return (x % m + m) % m; }

// Closed cyclic arc from a to b, counterclockwise.
bool in_arc(int x, int a, int b, int m) {
    return mod(x - a, m) <= mod(b - a, m);
}

struct Pt {
    int c, r;
    friend bool operator==(const Pt&, const Pt&) = default;
    friend auto operator<=>(const Pt&, const Pt&) = default;
};

struct Analysis {
    std::vector<Vertex> result;  // doubled coordinates, compacted by caller
    MoveKind kind;
    StabType type;
    StabArrow arrow;
};

[[noreturn]] void fail(MoveErrorCode code, const char* msg) {
    throw MoveError(code, msg);
}

Analysis analyze(const GridDiagram& g, const ElementaryMove& m,
                 bool require_same_components) {
    const int n = g.size(), M = 2 * n;
    int a = mod(m.col_a, M), b = mod(m.col_b, M);
    int c = mod(m.row_a, M), d = mod(m.row_b, M);
    if (a == b || c == d) fail(MoveErrorCode::BadCorners, "degenerate corners");

    auto src_sign = [&](int x, int y) {
        if (x % 2 != 0 || y % 2 != 0) return 0;
        return g.sign_at(x / 2, y / 2);
    };

    const Pt corners[4] = {{a, c}, {a, d}, {b, c}, {b, d}};
    std::vector<Pt> removed, added;
    for (const Pt& p : corners)
        (src_sign(p.c, p.r) != 0 ? removed : added).push_back(p);

    if (removed.empty() || added.empty() || removed.size() == 4 ||
        added.size() == 4)
        fail(MoveErrorCode::BadCorners,
             "corner set must exchange, stabilize or destabilize");

    // The symmetric difference must contain a whole edge of one diagram:
    // two removed corners on a common line (an edge of the source) or two
    // added ones (an edge of the result). With 3 corners on one side this
    // always holds; the diagonal 2+2 pattern is the one that fails.
    auto has_edge = [](const std::vector<Pt>& pts) {
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i].c == pts[j].c || pts[i].r == pts[j].r) return true;
        return false;
    };
    if (!has_edge(removed) && !has_edge(added))
        fail(MoveErrorCode::NoEdge,
             "symmetric difference carries no edge of either diagram");

    // Build the result vertex set in doubled coordinates.
    std::vector<Vertex> result;
    result.reserve(g.vertices().size() + 2);
    for (const auto& v : g.vertices()) {
        Pt p{2 * v.col, 2 * v.row};
        bool gone = std::find(removed.begin(), removed.end(), p) !=
                    removed.end();
        if (!gone) result.push_back({p.c, p.r, v.sign});
    }
    for (const Pt& p : added) result.push_back({p.c, p.r, 0});

    // The result must have exactly two vertices per occupied line.
    {
        std::map<int, int> colcnt, rowcnt;
        for (const auto& v : result) {
            ++colcnt[v.col];
            ++rowcnt[v.row];
        }
        for (auto [_, k] : colcnt)
            if (k != 2) fail(MoveErrorCode::InvalidDiagram,
                             "result column does not have two vertices");
        for (auto [_, k] : rowcnt)
            if (k != 2) fail(MoveErrorCode::InvalidDiagram,
                             "result row does not have two vertices");
        if (colcnt.size() != rowcnt.size())
            fail(MoveErrorCode::InvalidDiagram,
                 "result occupies unequal numbers of columns and rows");
    }

    // Propagate signs to the added vertices: each occupied line must end up
    // with one vertex of each sign.
    {
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto& v : result) {
                if (v.sign != 0) continue;
                for (const auto& w : result) {
                    if (&w == &v || w.sign == 0) continue;
                    if (w.col == v.col || w.row == v.row) {
                        v.sign = -w.sign;
                        progress = true;
                        break;
                    }
                }
            }
        }
        for (const auto& v : result)
            if (v.sign == 0)
                fail(MoveErrorCode::SignClash, "vertex signs undetermined");
        std::map<int, int> colsum, rowsum;
        for (const auto& v : result) {
            colsum[v.col] += v.sign;
            rowsum[v.row] += v.sign;
        }
        for (auto [_, s] : colsum)
            if (s != 0) fail(MoveErrorCode::SignClash,
                             "no consistent signs for a column");
        for (auto [_, s] : rowsum)
            if (s != 0) fail(MoveErrorCode::SignClash,
                             "no consistent signs for a row");
    }

    // The interchange rectangle spanned by one pair of complementary arcs
    // must meet the union of both diagrams in its four corners only.
    std::vector<Pt> uni;
    for (const auto& v : g.vertices()) uni.push_back({2 * v.col, 2 * v.row});
    for (const Pt& p : added) uni.push_back(p);
    auto clean = [&](int c_from, int c_to, int r_from, int r_to) {
        for (const Pt& p : uni) {
            if (!in_arc(p.c, c_from, c_to, M) || !in_arc(p.r, r_from, r_to, M))
                continue;
            bool corner = (p.c == c_from || p.c == c_to) &&
                          (p.r == r_from || p.r == r_to);
            if (!corner) return false;
        }
        return true;
    };
    // Labelings: (theta1, theta2) x (phi1, phi2) over both arc choices.
    struct Labeling {
        int t1, t2, p1, p2;
    };
    std::vector<Labeling> cleanlab;
    for (auto [t1, t2] : {std::pair{a, b}, std::pair{b, a}})
        for (auto [p1, p2] : {std::pair{c, d}, std::pair{d, c}})
            if (clean(t1, t2, p1, p2)) cleanlab.push_back({t1, t2, p1, p2});
    if (cleanlab.empty())
        fail(MoveErrorCode::DirtyRectangle,
             "every interchange rectangle meets other vertices");

    Analysis out;
    out.result = std::move(result);
    out.type = StabType::None;
    out.arrow = StabArrow::None;
    if (removed.size() == 2) {
        out.kind = MoveKind::Exchange;
    } else {
        out.kind = removed.size() == 1 ? MoveKind::Stabilization
                                       : MoveKind::Destabilization;
        // The lone vertex: the removed one for a stabilization, the added one
        // for a destabilization. Exactly one labeling is clean here.
        Pt lone = removed.size() == 1 ? removed[0] : added[0];
        const Labeling& L = cleanlab[0];
        bool diag_main = (lone == Pt{L.t1, L.p1}) || (lone == Pt{L.t2, L.p2});
        out.type = diag_main ? StabType::I : StabType::II;
        // Orientation: phi0 is the row of the small square both of whose
        // vertices lie in the bigger diagram; the arrow follows the sign of
        // the vertex at (theta2, phi0) there.
        int phi0 = (lone.r == L.p1) ? L.p2 : L.p1;
        int s = 0;
        if (removed.size() == 1) {
            for (const auto& v : out.result)
                if (v.col == L.t2 && v.row == phi0) s = v.sign;
        } else {
            s = src_sign(L.t2, phi0);
        }
        if (s == 0)
            fail(MoveErrorCode::BadCorners,
                 "oriented type undetermined");  // cannot happen when legal
        out.arrow = s > 0 ? StabArrow::Right : StabArrow::Left;
    }

    if (require_same_components) {
        GridDiagram h = GridDiagram::from_vertices(out.result);
        if (h.component_count() != g.component_count())
            fail(MoveErrorCode::SplitsLink,
                 "move changes the number of components");
    }
    return out;
}

}  // namespace

GridDiagram apply_move(const GridDiagram& g, const ElementaryMove& m,
                       bool require_same_components) {
    Analysis a = analyze(g, m, require_same_components);
    return GridDiagram::from_vertices(std::move(a.result));
}

ClassifiedMove classify_move(const GridDiagram& g, const ElementaryMove& m) {
    Analysis a = analyze(g, m, false);
    return {m, a.kind, a.type, a.arrow};
}

std::vector<ClassifiedMove> enumerate_moves(const GridDiagram& g,
                                            const MoveFilter& filter) {
    const int n = g.size();
    std::vector<ClassifiedMove> out;
    auto consider = [&](const ElementaryMove& m) {
        Analysis a;
        try {
            a = analyze(g, m, true);
        } catch (const MoveError&) {
            return;
        }
        if (a.kind == MoveKind::Exchange && !filter.exchanges) return;
        if (a.kind == MoveKind::Stabilization && !filter.stabilizations)
            return;
        if (a.kind == MoveKind::Destabilization && !filter.destabilizations)
            return;
        if (a.kind != MoveKind::Exchange && filter.type != StabType::None &&
            a.type != filter.type)
            return;
        out.push_back({m, a.kind, a.type, a.arrow});
    };

    if (filter.exchanges) {
        for (int cc = 0; cc < n; ++cc) {
            auto pair = g.column(cc);
            for (int gap = 0; gap < n; ++gap)
                consider({2 * cc, 2 * gap + 1, 2 * pair[0].row,
                          2 * pair[1].row});
        }
        for (int rr = 0; rr < n; ++rr) {
            auto pair = g.row(rr);
            for (int gap = 0; gap < n; ++gap)
                consider({2 * pair[0].col, 2 * pair[1].col, 2 * rr,
                          2 * gap + 1});
        }
    }
    if (filter.stabilizations) {
        for (const auto& v : g.vertices())
            for (int dc : {-1, 1})
                for (int dr : {-1, 1})
                    consider({2 * v.col, mod(2 * v.col + dc, 2 * n),
                              2 * v.row, mod(2 * v.row + dr, 2 * n)});
    }
    if (filter.destabilizations) {
        for (const auto& v : g.vertices()) {
            auto cp = g.column(v.col);
            auto rp = g.row(v.row);
            const Vertex& pv = (cp[0].row == v.row) ? cp[1] : cp[0];
            const Vertex& ph = (rp[0].col == v.col) ? rp[1] : rp[0];
            consider({2 * v.col, 2 * ph.col, 2 * v.row, 2 * pv.row});
        }
    }
    return out;
}

std::vector<ClassifiedMove> enumerate_exchanges(const GridDiagram& g) {
    MoveFilter f;
    f.stabilizations = f.destabilizations = false;
    return enumerate_moves(g, f);
}

ExchangeClassResult exchange_class(const GridDiagram& g, size_t max_members) {
    ExchangeClassResult res;
    std::unordered_map<CanonicalKey, size_t, CanonicalKeyHash> seen;
    std::deque<size_t> queue;
    GridDiagram start = g.canonical_form();
    seen.emplace(start.canonical_key(), 0);
    res.members.push_back(std::move(start));
    queue.push_back(0);
    res.complete = true;
    while (!queue.empty()) {
        size_t idx = queue.front();
        queue.pop_front();
        GridDiagram cur = res.members[idx];
        for (const auto& mv : enumerate_exchanges(cur)) {
            GridDiagram next = apply_move(cur, mv.move).canonical_form();
            CanonicalKey key = next.canonical_key();
            if (seen.contains(key)) continue;
            if (res.members.size() >= max_members) {
                res.complete = false;
                return res;
            }
            seen.emplace(std::move(key), res.members.size());
            queue.push_back(res.members.size());
            res.members.push_back(std::move(next));
        }
    }
    return res;
}

ExchangeDecision exchange_equivalent(const GridDiagram& a,
                                     const GridDiagram& b,
                                     size_t max_members) {
    ExchangeDecision dec;
    if (a.size() != b.size()) {
        // Exchange moves preserve the diagram size.
        dec.verdict = Verdict::NotEquivalent;
        dec.complete = true;
        return dec;
    }
    struct SideState {
        std::unordered_map<CanonicalKey, size_t, CanonicalKeyHash> seen;
        std::vector<GridDiagram> members;
        std::deque<size_t> frontier;
        bool exhausted = false;
    };
    SideState s[2];
    for (int i = 0; i < 2; ++i) {
        GridDiagram start = (i == 0 ? a : b).canonical_form();
        s[i].seen.emplace(start.canonical_key(), 0);
        s[i].members.push_back(std::move(start));
        s[i].frontier.push_back(0);
    }
    if (s[1].seen.contains(s[0].members[0].canonical_key())) {
        dec.verdict = Verdict::Equivalent;
        dec.explored = 2;
        dec.complete = true;
        return dec;
    }
    while (true) {
        // One fully enumerated side settles the question; stop early.
        if ((!s[0].exhausted && s[0].frontier.empty()) ||
            (!s[1].exhausted && s[1].frontier.empty()))
            break;
        // Expand the side with the smaller live frontier.
        int i = (s[0].frontier.size() <= s[1].frontier.size()) ? 0 : 1;
        if (s[i].frontier.empty() || s[i].exhausted) i = 1 - i;
        if (s[i].frontier.empty() || s[i].exhausted) break;
        size_t idx = s[i].frontier.front();
        s[i].frontier.pop_front();
        GridDiagram cur = s[i].members[idx];
        for (const auto& mv : enumerate_exchanges(cur)) {
            GridDiagram next = apply_move(cur, mv.move).canonical_form();
            CanonicalKey key = next.canonical_key();
            if (s[1 - i].seen.contains(key)) {
                dec.verdict = Verdict::Equivalent;
                dec.explored = s[0].members.size() + s[1].members.size();
                dec.complete = true;
                return dec;
            }
            if (s[i].seen.contains(key)) continue;
            if (s[0].members.size() + s[1].members.size() >= max_members) {
                s[i].exhausted = true;
                break;
            }
            s[i].seen.emplace(std::move(key), s[i].members.size());
            s[i].frontier.push_back(s[i].members.size());
            s[i].members.push_back(std::move(next));
        }
    }
    dec.explored = s[0].members.size() + s[1].members.size();
    // A fully enumerated class on either side that never met the other one
    // settles the question: exchange classes are equivalence classes.
    bool settled = (!s[0].exhausted && s[0].frontier.empty()) ||
                   (!s[1].exhausted && s[1].frontier.empty());
    dec.complete = settled;
    dec.verdict = settled ? Verdict::NotEquivalent : Verdict::Unknown;
    return dec;
}

bool is_rigid(const GridDiagram& g) {
    CanonicalKey key = g.canonical_key();
    for (const auto& mv : enumerate_exchanges(g))
        if (apply_move(g, mv.move).canonical_key() != key) return false;
    return true;
}

}  // namespace legrid
