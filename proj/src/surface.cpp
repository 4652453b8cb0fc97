#include "legrid/surface.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace legrid {

namespace {

int mod(int x, int m) { return (x % m + m) % m; }

// Closed cyclic arc [start; start+len] on the circle of m levels; len == 0
// is a single level.
struct Arc {
    int start = 0;
    int len = 0;
};

bool in_arc(int x, const Arc& a, int m) {
    return mod(x - a.start, m) <= a.len;
}

// Components of [a1;a2] n [b1;b2]. Lifting the second interval to the
// universal cover, at most two of its translates can meet the first one
// (interval lengths are below m), so the intersection has at most two
// components, each again a closed arc.
std::vector<Arc> arc_intersection(int a1, int a2, int b1, int b2, int m) {
    int la = mod(a2 - a1, m), lb = mod(b2 - b1, m);
    int s = mod(b1 - a1, m);
    std::vector<Arc> out;
    for (int k : {s - m, s}) {
        int lo = std::max(0, k), hi = std::min(la, k + lb);
        if (lo <= hi) out.push_back({mod(a1 + lo, m), hi - lo});
    }
    return out;
}

std::array<std::pair<int, int>, 4> rect_corners(const SurfaceRect& r) {
    return {{{r.th1, r.ph1},
             {r.th1, r.ph2},
             {r.th2, r.ph1},
             {r.th2, r.ph2}}};
}

[[noreturn]] void fail(SurfaceErrorCode code, const std::string& msg) {
    throw SurfaceError(code, msg);
}

}  // namespace

bool compatible(const SurfaceRect& a, const SurfaceRect& b, int m) {
    auto ith = arc_intersection(a.th1, a.th2, b.th1, b.th2, m);
    auto iph = arc_intersection(a.ph1, a.ph2, b.ph1, b.ph2, m);
    if (ith.empty() || iph.empty()) return true;

    bool all_points = true;
    for (const Arc& t : ith) all_points &= (t.len == 0);
    for (const Arc& p : iph) all_points &= (p.len == 0);
    if (all_points) {
        // Isolated meeting points arise only where interval endpoints of
        // both rectangles coincide, so each one must be a common vertex.
        for (const Arc& t : ith)
            for (const Arc& p : iph) {
                bool of_a = false, of_b = false;
                for (auto [x, y] : rect_corners(a))
                    of_a |= (x == t.start && y == p.start);
                for (auto [x, y] : rect_corners(b))
                    of_b |= (x == t.start && y == p.start);
                if (!of_a || !of_b) return false;
            }
        return true;
    }

    // Otherwise only a single transversal overlap is allowed: one rectangle,
    // two-dimensional, avoiding the vertices of both.
    if (ith.size() != 1 || iph.size() != 1) return false;
    const Arc& t = ith[0];
    const Arc& p = iph[0];
    if (t.len == 0 || p.len == 0) return false;  // a segment of a side
    for (const SurfaceRect* r : {&a, &b})
        for (auto [x, y] : rect_corners(*r))
            if (in_arc(x, t, m) && in_arc(y, p, m)) return false;
    return true;
}

SurfaceDiagram validate_surface(std::vector<SurfaceRect> rects, int m) {
    if (m < 1) fail(SurfaceErrorCode::BadInput, "grid size must be positive");
    for (size_t i = 0; i < rects.size(); ++i) {
        const SurfaceRect& r = rects[i];
        for (int lvl : {r.th1, r.th2, r.ph1, r.ph2})
            if (lvl < 0 || lvl >= m)
                fail(SurfaceErrorCode::BadInput,
                     "rectangle " + std::to_string(i) + " level out of range");
        if (r.th1 == r.th2 || r.ph1 == r.ph2)
            fail(SurfaceErrorCode::BadInput,
                 "rectangle " + std::to_string(i) + " has a degenerate side");
    }
    for (size_t i = 0; i < rects.size(); ++i)
        for (size_t j = i + 1; j < rects.size(); ++j)
            if (!compatible(rects[i], rects[j], m))
                fail(SurfaceErrorCode::IncompatiblePair,
                     "rectangles " + std::to_string(i) + " and " +
                         std::to_string(j) + " are incompatible");

    std::map<std::pair<int, int>, int> mult;
    for (const SurfaceRect& r : rects)
        for (auto c : rect_corners(r)) ++mult[c];
    std::map<int, int> free_th, free_ph;
    for (const auto& [pt, k] : mult) {
        if (k > 2)
            fail(SurfaceErrorCode::BadInput,
                 "vertex shared by more than two rectangles");
        if (k == 1) {
            ++free_th[pt.first];
            ++free_ph[pt.second];
        }
    }
    for (const auto& [lvl, k] : free_th)
        if (k > 2)
            fail(SurfaceErrorCode::FreeVertexOverflow,
                 "meridian " + std::to_string(lvl) + " carries " +
                     std::to_string(k) + " free vertices");
    for (const auto& [lvl, k] : free_ph)
        if (k > 2)
            fail(SurfaceErrorCode::FreeVertexOverflow,
                 "longitude " + std::to_string(lvl) + " carries " +
                     std::to_string(k) + " free vertices");

    SurfaceDiagram pi;
    pi.m = m;
    pi.rects = std::move(rects);
    return pi;
}

std::vector<std::pair<int, int>> free_vertices(const SurfaceDiagram& pi) {
    std::map<std::pair<int, int>, int> mult;
    for (const SurfaceRect& r : pi.rects)
        for (auto c : rect_corners(r)) ++mult[c];
    std::vector<std::pair<int, int>> out;
    for (const auto& [pt, k] : mult)
        if (k == 1) out.push_back(pt);
    return out;
}

UnorientedGridDiagram boundary(const SurfaceDiagram& pi) {
    std::vector<std::pair<int, int>> pts = free_vertices(pi);
    if (pts.empty()) return {};
    return UnorientedGridDiagram::from_points(std::move(pts));
}

DividingCode dividing_code(const SurfaceDiagram& pi) {
    DividingCode code;
    code.size = int(pi.rects.size());
    for (int i = 0; i < code.size; ++i)
        for (int j = 0; j < code.size; ++j) {
            if (i == j) continue;
            const SurfaceRect& a = pi.rects[i];
            const SurfaceRect& b = pi.rects[j];
            if (a.th2 != b.th1) continue;
            if (a.ph2 == b.ph1)
                code.entries.push_back({i, j, DividingRelation::Ascending});
            if (a.ph1 == b.ph2)
                code.entries.push_back({i, j, DividingRelation::Descending});
        }
    std::sort(code.entries.begin(), code.entries.end());
    return code;
}

namespace {

// Directed edges with two colors, keyed for O(1) lookup.
struct CodeGraph {
    int n = 0;
    std::unordered_set<uint64_t> edges;
    std::vector<std::vector<std::pair<int, int>>> out;  // (slot, neighbor)

    static uint64_t key(int a, int b, int rel) {
        return (uint64_t(a) << 24 | uint64_t(b)) << 1 | uint64_t(rel);
    }

    explicit CodeGraph(const DividingCode& code) : n(code.size), out(code.size) {
        for (const auto& e : code.entries) {
            int rel = int(e.rel);
            edges.insert(key(e.a, e.b, rel));
            // slots 0/1: outgoing asc/desc; 2/3: incoming asc/desc
            out[e.a].push_back({rel, e.b});
            out[e.b].push_back({2 + rel, e.a});
        }
    }

    bool has(int a, int b, int rel) const {
        return edges.contains(key(a, b, rel));
    }
};

// Iterated neighborhood-color refinement; returns a stable coloring.
std::vector<int> refine_colors(const CodeGraph& g) {
    std::vector<int> color(g.n, 0);
    int classes = g.n == 0 ? 0 : 1;
    for (int round = 0; round < g.n; ++round) {
        std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> ids;
        std::vector<int> next(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<std::pair<int, int>> sig;
            for (auto [slot, w] : g.out[v]) sig.push_back({slot, color[w]});
            std::sort(sig.begin(), sig.end());
            auto [it, _] = ids.try_emplace({color[v], std::move(sig)},
                                           int(ids.size()));
            next[v] = it->second;
        }
        int count = int(ids.size());
        color = std::move(next);
        if (count == classes) break;
        classes = count;
    }
    return color;
}

}  // namespace

bool codes_equivalent(const DividingCode& a, const DividingCode& b) {
    if (a.size != b.size) return false;
    if (a.entries.size() != b.entries.size()) return false;
    if (a.size == 0) return true;

    CodeGraph ga(a), gb(b);
    std::vector<int> ca = refine_colors(ga), cb = refine_colors(gb);
    // Refinement is label-independent, so the color multisets must agree.
    {
        std::vector<int> sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }

    // Backtracking over the color classes, most constrained vertex first.
    const int n = a.size;
    std::vector<std::vector<int>> bucket_b;  // candidates in b per color
    {
        int classes = 1 + *std::max_element(ca.begin(), ca.end());
        bucket_b.assign(classes, {});
        for (int v = 0; v < n; ++v) bucket_b[cb[v]].push_back(v);
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        size_t sx = bucket_b[ca[x]].size(), sy = bucket_b[ca[y]].size();
        if (sx != sy) return sx < sy;
        if (ga.out[x].size() != ga.out[y].size())
            return ga.out[x].size() > ga.out[y].size();
        return x < y;
    });

    std::vector<int> image(n, -1), preimage(n, -1);
    auto consistent = [&](int v, int w) {
        for (auto [slot, u] : ga.out[v]) {
            if (image[u] < 0) continue;
            int rel = slot & 1;
            bool fwd = slot < 2;
            int fx = fwd ? w : image[u], fy = fwd ? image[u] : w;
            if (!gb.has(fx, fy, rel)) return false;
        }
        // Edges of b between already-chosen images must be matched by
        // edges of a (checked from the b side).
        for (auto [slot, u] : gb.out[w]) {
            int pre = preimage[u];
            if (pre < 0) continue;
            int rel = slot & 1;
            bool fwd = slot < 2;
            int px = fwd ? v : pre, py = fwd ? pre : v;
            if (!ga.has(px, py, rel)) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int v = order[depth];
        for (int w : bucket_b[ca[v]]) {
            if (preimage[w] >= 0) continue;
            if (!consistent(v, w)) continue;
            image[v] = w;
            preimage[w] = v;
            if (self(self, depth + 1)) return true;
            image[v] = -1;
            preimage[w] = -1;
        }
        return false;
    };
    return dfs(dfs, 0);
}

namespace {

// Cuts a cell region (m x m toroidal bitmap) into all of its maximal
// rectangles. Cells {c..c+w-1} x {r..r+h-1} correspond to the rectangle
// [c; c+w] x [r; r+h] in level coordinates.
std::vector<SurfaceRect> maximal_rectangles(
    const std::vector<std::vector<char>>& region, int m) {
    const int W = (m + 63) / 64;
    std::vector<std::vector<uint64_t>> row(m, std::vector<uint64_t>(W, 0));
    long long cells = 0;
    for (int th = 0; th < m; ++th)
        for (int ph = 0; ph < m; ++ph)
            if (region[th][ph]) {
                row[ph][th >> 6] |= uint64_t(1) << (th & 63);
                ++cells;
            }

    auto run_subset = [&](int c0, int len, const std::vector<uint64_t>& y) {
        for (int i = 0; i < len; ++i) {
            int c = (c0 + i) % m;
            if (!(y[c >> 6] >> (c & 63) & 1)) return false;
        }
        return true;
    };

    std::vector<SurfaceRect> rects;
    std::vector<uint64_t> acc(W);
    for (int b = 0; b < m; ++b) {
        acc = row[b];
        const std::vector<uint64_t>& prev = row[(b + m - 1) % m];
        for (int h = 1; h <= m - 1; ++h) {
            int t = (b + h - 1) % m;
            if (h > 1)
                for (int w = 0; w < W; ++w) acc[w] &= row[t][w];
            bool any = false;
            for (int w = 0; w < W; ++w) any |= (acc[w] != 0);
            if (!any) break;

            // Maximal cyclic runs of columns present in every row b..t.
            std::vector<char> on(m, 0);
            bool all = true;
            for (int c = 0; c < m; ++c) {
                on[c] = (acc[c >> 6] >> (c & 63)) & 1;
                all &= (on[c] != 0);
            }
            if (all)
                fail(SurfaceErrorCode::BadInput,
                     "region contains a full annulus and is not a union of "
                     "rectangles");
            const std::vector<uint64_t>& next = row[(b + h) % m];
            int c = 0;
            while (on[c]) ++c;  // start scanning at a gap
            for (int step = 0; step < m;) {
                int pos = (c + step) % m;
                if (!on[pos]) {
                    ++step;
                    continue;
                }
                int len = 0;
                while (len < m && on[(pos + len) % m]) ++len;
                step += len;
                // Row-maximal when neither adjacent row covers the run.
                if (!run_subset(pos, len, prev) && !run_subset(pos, len, next))
                    rects.push_back(
                        {pos, (pos + len) % m, b, (b + h) % m});
            }
        }
    }

    // Every region cell must be covered, otherwise no rectangle
    // decomposition exists (e.g. a full annulus strip).
    std::vector<std::vector<char>> covered(m, std::vector<char>(m, 0));
    for (const SurfaceRect& r : rects) {
        int wlen = mod(r.th2 - r.th1, m), hlen = mod(r.ph2 - r.ph1, m);
        for (int i = 0; i < wlen; ++i)
            for (int j = 0; j < hlen; ++j)
                covered[(r.th1 + i) % m][(r.ph1 + j) % m] = 1;
    }
    long long covered_cells = 0;
    for (int th = 0; th < m; ++th)
        for (int ph = 0; ph < m; ++ph) {
            if (covered[th][ph] && !region[th][ph])
                fail(SurfaceErrorCode::BadInput,
                     "rectangle decomposition escapes the region");
            covered_cells += covered[th][ph];
        }
    if (covered_cells != cells)
        fail(SurfaceErrorCode::BadInput,
             "region is not a union of rectangles");

    std::sort(rects.begin(), rects.end());
    rects.erase(std::unique(rects.begin(), rects.end()), rects.end());
    return rects;
}

}  // namespace

SurfaceDiagram special_surface(const GridDiagram& R) {
    const int n = R.size();
    if (n == 0) fail(SurfaceErrorCode::BadInput, "empty diagram");
    const int m = 7 * n;

    // Step 1: a band of width 3/7 along each edge of R, kept as cover
    // counts so the squares where two bands cross can be removed next.
    std::vector<std::vector<int>> cover(m, std::vector<int>(m, 0));
    auto paint = [&](int th1, int th2, int ph1, int ph2) {
        int lt = mod(th2 - th1, m), lp = mod(ph2 - ph1, m);
        for (int i = 0; i < lt; ++i)
            for (int j = 0; j < lp; ++j)
                ++cover[(th1 + i) % m][(ph1 + j) % m];
    };
    for (const auto& comp : R.components()) {
        const int L = int(comp.size()) / 2;
        for (int i = 0; i < L; ++i) {
            int th_a = comp[2 * i].col;           // this column
            int ph_a = comp[2 * i].row;           // row entering it
            int ph_b = comp[2 * i + 1].row;       // row leaving it
            int th_b = comp[(2 * i + 2) % (2 * L)].col;  // next column
            paint(7 * th_a, 7 * th_a + 3, 7 * ph_a + 3, 7 * ph_b);
            paint(7 * th_a + 3, 7 * th_b, 7 * ph_b, 7 * ph_b + 3);
        }
    }

    // Step 2: keep the once-covered cells.
    std::vector<std::vector<char>> region(m, std::vector<char>(m, 0));
    for (int th = 0; th < m; ++th)
        for (int ph = 0; ph < m; ++ph) region[th][ph] = (cover[th][ph] == 1);

    // Steps 3 and 4: toggle two full strips per original level, in both
    // directions.
    for (int c = 0; c < n; ++c)
        for (int off : {1, 4})
            for (int ph = 0; ph < m; ++ph)
                region[7 * c + off][ph] ^= 1;
    for (int r = 0; r < n; ++r)
        for (int off : {1, 4})
            for (int th = 0; th < m; ++th)
                region[th][7 * r + off] ^= 1;

    return validate_surface(maximal_rectangles(region, m), m);
}

namespace {

// Doubled coordinate of refined level z among the occupied levels `occ`
// (sorted): occupied level at index i sits at 2i, the cyclic gap between
// indices i and i+1 at 2i+1.
int doubled(const std::vector<int>& occ, int z) {
    auto it = std::lower_bound(occ.begin(), occ.end(), z);
    if (it != occ.end() && *it == z) return 2 * int(it - occ.begin());
    int idx = int(it - occ.begin());
    return 2 * (idx == 0 ? int(occ.size()) : idx) - 1;
}

}  // namespace

AnnulusSlide slide_annulus_boundary(const SurfaceDiagram& pi) {
    // Re-validate, then recognize the staircase cycle.
    SurfaceDiagram v = validate_surface(pi.rects, pi.m);
    const int m = v.m;
    const int count = int(v.rects.size());
    if (count < 4 || count % 2 != 0)
        fail(SurfaceErrorCode::NotStaircase,
             "a staircase annulus needs an even number (>= 4) of rectangles");

    // Successor: the unique rectangle whose intersection with this one is
    // exactly this one's top-right vertex (= the successor's bottom-left
    // vertex). Transversal crossings elsewhere along the cycle are fine;
    // any other kind of contact at the chain corner is not.
    auto chain_corner_only = [&](const SurfaceRect& a, const SurfaceRect& b) {
        if (a.th2 != b.th1 || a.ph2 != b.ph1) return false;
        auto ith = arc_intersection(a.th1, a.th2, b.th1, b.th2, m);
        auto iph = arc_intersection(a.ph1, a.ph2, b.ph1, b.ph2, m);
        return ith.size() == 1 && iph.size() == 1 && ith[0].len == 0 &&
               iph[0].len == 0 && ith[0].start == b.th1 &&
               iph[0].start == b.ph1;
    };
    std::vector<int> succ(count, -1), indeg(count, 0);
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
            if (i == j) continue;
            if (!chain_corner_only(v.rects[i], v.rects[j])) continue;
            if (succ[i] != -1)
                fail(SurfaceErrorCode::NotStaircase,
                     "rectangle has two corner successors");
            succ[i] = j;
            ++indeg[j];
        }
    }
    for (int i = 0; i < count; ++i)
        if (succ[i] < 0 || indeg[i] != 1)
            fail(SurfaceErrorCode::NotStaircase,
                 "rectangles do not chain corner to corner");

    int start_rect = 0;
    for (int i = 1; i < count; ++i)
        if (v.rects[i] < v.rects[start_rect]) start_rect = i;
    std::vector<int> cyc;
    cyc.reserve(count);
    for (int i = start_rect;;) {
        cyc.push_back(i);
        i = succ[i];
        if (i == start_rect) break;
        if (int(cyc.size()) > count)
            fail(SurfaceErrorCode::NotStaircase,
                 "corner chain does not close into one cycle");
    }
    if (int(cyc.size()) != count)
        fail(SurfaceErrorCode::NotStaircase,
             "corner chain splits into several cycles");

    // Level sequences: rectangle t of the cycle is [th[t];th[t+1]] x
    // [ph[t];ph[t+1]].
    const int k2 = count;  // = 2k
    std::vector<int> th(k2), ph(k2);
    for (int t = 0; t < k2; ++t) {
        th[t] = v.rects[cyc[t]].th1;
        ph[t] = v.rects[cyc[t]].ph1;
    }

    // Refined coordinates on Z_{2m}: level x sits at 2x+1 and the fresh
    // level "x - epsilon" at 2x.
    auto lv = [](int x) { return 2 * x + 1; };
    auto lv_eps = [](int x) { return 2 * x; };

    std::set<std::pair<int, int>> S;
    for (int t = 0; t < k2; ++t) {
        int tn = (t + 1) % k2;
        S.insert({lv(th[t]), lv(ph[tn])});  // top-left of rectangle t
        S.insert({lv(th[tn]), lv(ph[t])});  // bottom-right of rectangle t
    }
    auto diagram_of = [&]() {
        std::vector<std::pair<int, int>> pts(S.begin(), S.end());
        return UnorientedGridDiagram::from_points(std::move(pts));
    };

    AnnulusSlide slide;
    GridDiagram d = diagram_of().orient();
    slide.start = d;

    auto occupied = [&](bool cols) {
        std::set<int> lvls;
        for (const auto& [x, y] : S) lvls.insert(cols ? x : y);
        return std::vector<int>(lvls.begin(), lvls.end());
    };
    auto step = [&](std::pair<int, int> colpair, std::pair<int, int> rowpair,
                    const std::vector<std::pair<int, int>>& removed,
                    const std::vector<std::pair<int, int>>& added,
                    MoveKind expect) {
        std::vector<int> oc = occupied(true), orr = occupied(false);
        ElementaryMove mv{doubled(oc, colpair.first),
                          doubled(oc, colpair.second),
                          doubled(orr, rowpair.first),
                          doubled(orr, rowpair.second)};
        ClassifiedMove cm = classify_move(d, mv);
        if (cm.kind != expect)
            fail(SurfaceErrorCode::BadInput,
                 "slide synthesis produced an unexpected move kind");
        d = apply_move(d, mv);
        for (const auto& p : removed) S.erase(p);
        for (const auto& p : added) S.insert(p);
        if (!(d.unoriented() == diagram_of()))
            fail(SurfaceErrorCode::BadInput,
                 "slide synthesis diverged from the replacement list");
        slide.moves.push_back(cm);
    };

    // Type II stabilization at the bottom-right vertex of the first
    // rectangle.
    step({lv(th[1]), lv_eps(th[0])}, {lv(ph[0]), lv_eps(ph[1])},
         {{lv(th[1]), lv(ph[0])}},
         {{lv_eps(th[0]), lv(ph[0])},
          {lv_eps(th[0]), lv_eps(ph[1])},
          {lv(th[1]), lv_eps(ph[1])}},
         MoveKind::Stabilization);

    // 2k-2 exchanges sweeping the moved component across the annulus.
    for (int t = 1; t <= k2 - 2; ++t) {
        int tn = t + 1;
        if (t % 2 == 1) {
            // vertical edge at th[t] slides to just below th[t+1]
            step({lv(th[t]), lv_eps(th[tn])}, {lv_eps(ph[t]), lv(ph[tn])},
                 {{lv(th[t]), lv_eps(ph[t])}, {lv(th[t]), lv(ph[tn])}},
                 {{lv_eps(th[tn]), lv_eps(ph[t])},
                  {lv_eps(th[tn]), lv(ph[tn])}},
                 MoveKind::Exchange);
        } else {
            // horizontal edge at ph[t] slides to just below ph[t+1]
            step({lv_eps(th[t]), lv(th[tn])}, {lv(ph[t]), lv_eps(ph[tn])},
                 {{lv_eps(th[t]), lv(ph[t])}, {lv(th[tn]), lv(ph[t])}},
                 {{lv_eps(th[t]), lv_eps(ph[tn])},
                  {lv(th[tn]), lv_eps(ph[tn])}},
                 MoveKind::Exchange);
        }
    }

    // Type II destabilization closing the sweep.
    step({lv(th[k2 - 1]), lv_eps(th[0])}, {lv_eps(ph[k2 - 1]), lv(ph[0])},
         {{lv(th[k2 - 1]), lv_eps(ph[k2 - 1])},
          {lv(th[k2 - 1]), lv(ph[0])},
          {lv_eps(th[0]), lv(ph[0])}},
         {{lv_eps(th[0]), lv_eps(ph[k2 - 1])}},
         MoveKind::Destabilization);

    slide.result = d;
    return slide;
}

}  // namespace legrid
