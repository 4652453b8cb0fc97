#include "legrid/alexander.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace legrid {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

struct Edge {
    bool vertical;
    int fixed;      // the shared column (vertical) or row (horizontal)
    int from, to;   // the varying coordinate, from -> to
};

// Determinant of a dense matrix mod p, destroying it.  A singular matrix
// legitimately yields 0.
u64 det_mod(std::vector<u64>& m, int n, u64 p) {
    u64 det = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (m[std::size_t(r) * n + c] != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != c) {
            for (int k = c; k < n; ++k)
                std::swap(m[std::size_t(pivot) * n + k], m[std::size_t(c) * n + k]);
            det = p - det;
        }
        u64 d = m[std::size_t(c) * n + c];
        det = mulmod(det, d, p);
        u64 dinv = invmod(d, p);
        for (int r = c + 1; r < n; ++r) {
            u64 f = m[std::size_t(r) * n + c];
            if (f == 0) continue;
            f = mulmod(f, dinv, p);
            for (int k = c; k < n; ++k) {
                u64& x = m[std::size_t(r) * n + k];
                x = (x + p - mulmod(f, m[std::size_t(c) * n + k], p)) % p;
            }
        }
    }
    return det % p;
}

// Determinant of the crossing/arc presentation matrix with its first row and
// column removed, evaluated at t (mod p).
u64 minor_det_at(const PlanarDiagram& pd, u64 t, u64 p) {
    int c = int(pd.crossings.size());
    int n = c - 1;
    if (n == 0) return 1 % p;
    std::vector<u64> m(std::size_t(n) * n, 0);
    auto add = [&](int row, int arc, u64 val) {
        if (arc == 0) return;
        u64& x = m[std::size_t(row) * n + (arc - 1)];
        x = (x + val) % p;
    };
    for (int i = 1; i < c; ++i) {
        const Crossing& x = pd.crossings[i];
        int row = i - 1;
        if (x.sign > 0) {
            add(row, x.under_in_arc, t);
            add(row, x.under_out_arc, p - 1);
            add(row, x.over_arc, (1 + p - t) % p);
        } else {
            add(row, x.under_in_arc, 1);
            add(row, x.under_out_arc, p - t % p);
            add(row, x.over_arc, (t + p - 1) % p);
        }
    }
    return det_mod(m, n, p);
}

// Coefficients (ascending, length N) of the unique polynomial of degree < N
// through the points (x_j, y_j) over F_p.
std::vector<u64> lagrange_interpolate(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                      u64 p) {
    int N = int(xs.size());
    // full = prod (X - x_j)
    std::vector<u64> full(N + 1, 0);
    full[0] = 1;
    int deg = 0;
    for (int j = 0; j < N; ++j) {
        u64 neg = (p - xs[j] % p) % p;
        for (int k = deg + 1; k >= 1; --k)
            full[k] = (full[k - 1] + mulmod(full[k], neg, p)) % p;
        full[0] = mulmod(full[0], neg, p);
        ++deg;
    }
    std::vector<u64> out(N, 0), quot(N, 0);
    for (int j = 0; j < N; ++j) {
        // quot = full / (X - x_j) by synthetic division
        u64 x = xs[j] % p;
        u64 carry = full[N];
        for (int k = N - 1; k >= 0; --k) {
            quot[k] = carry;
            carry = (full[k] + mulmod(carry, x, p)) % p;
        }
        u64 denom = 1;
        for (int k = 0; k < N; ++k)
            if (k != j) denom = mulmod(denom, (xs[j] + p - xs[k] % p) % p, p);
        u64 scale = mulmod(ys[j] % p, invmod(denom, p), p);
        for (int k = 0; k < N; ++k) out[k] = (out[k] + mulmod(quot[k], scale, p)) % p;
    }
    return out;
}

// Evaluate the deleted-minor determinant at t = 1..N for one prime.
std::vector<u64> eval_points(const PlanarDiagram& pd, int N, u64 p, int jobs) {
    std::vector<u64> ys(N);
    if (jobs <= 1) {
        for (int j = 0; j < N; ++j) ys[j] = minor_det_at(pd, u64(j + 1), p);
        return ys;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (int j; (j = next.fetch_add(1)) < N;)
                ys[j] = minor_det_at(pd, u64(j + 1), p);
        });
    for (auto& th : pool) th.join();
    return ys;
}

}  // namespace

PlanarDiagram planar_diagram(const GridDiagram& g) {
    if (!g.is_knot())
        throw AlexanderError(AlexanderErrorCode::BadInput,
                             "planar_diagram: diagram has more than one component");
    auto cyc = g.component_cycle(0);
    int m = int(cyc.size());
    std::vector<Edge> edges(m);
    for (int k = 0; k < m; ++k) {
        const Vertex& a = cyc[k];
        const Vertex& b = cyc[(k + 1) % m];
        bool vertical = (k % 2 == 0);
        edges[k] = vertical ? Edge{true, a.col, a.row, b.row} : Edge{false, a.row, a.col, b.col};
    }
    // A vertical and a horizontal segment of the drawn picture cross when each
    // passes strictly through the interior of the other's span.
    auto strictly_between = [](int v, int a, int b) {
        return std::min(a, b) < v && v < std::max(a, b);
    };
    std::vector<int> index(std::size_t(m) * m, -1);
    PlanarDiagram pd;
    for (int vi = 0; vi < m; vi += 2)
        for (int hi = 1; hi < m; hi += 2) {
            const Edge& v = edges[vi];
            const Edge& h = edges[hi];
            if (!strictly_between(h.fixed, v.from, v.to)) continue;
            if (!strictly_between(v.fixed, h.from, h.to)) continue;
            int vy = v.to > v.from ? 1 : -1;
            int hx = h.to > h.from ? 1 : -1;
            index[std::size_t(vi) * m + hi] = int(pd.crossings.size());
            pd.crossings.push_back(Crossing{-vy * hx, 0, 0, 0});
        }
    int c = int(pd.crossings.size());
    pd.arc_count = c == 0 ? 1 : c;
    if (c == 0) return pd;
    // Passes in traversal order: each edge contributes its crossings sorted
    // along the direction of motion.
    std::vector<int> under_number(c, -1);
    int under_seen = 0;
    for (int k = 0; k < m; ++k) {
        const Edge& e = edges[k];
        bool vertical = (k % 2 == 0);
        std::vector<std::pair<int, int>> hits;  // (position along motion, crossing)
        for (int o = vertical ? 1 : 0; o < m; o += 2) {
            int id = vertical ? index[std::size_t(k) * m + o] : index[std::size_t(o) * m + k];
            if (id < 0) continue;
            int coord = edges[o].fixed;  // where the other segment crosses this one
            hits.emplace_back(e.to > e.from ? coord : -coord, id);
        }
        std::sort(hits.begin(), hits.end());
        for (auto& [pos, id] : hits) {
            (void)pos;
            pd.walk.push_back(CrossingPass{id, vertical});
            if (!vertical) under_number[id] = under_seen++;
        }
    }
    // Arcs run from one under-pass to the next; the stretch containing the
    // start of the walk belongs to the arc opened by the last under-pass.
    int cur = c - 1;
    for (const CrossingPass& pass : pd.walk) {
        if (pass.over) {
            pd.crossings[pass.crossing].over_arc = cur;
        } else {
            cur = under_number[pass.crossing];
            pd.crossings[pass.crossing].under_out_arc = cur;
            pd.crossings[pass.crossing].under_in_arc = (cur + c - 1) % c;
        }
    }
    return pd;
}

LaurentPoly alexander_poly(const GridDiagram& g, const AlexanderOptions& opts) {
    return alexander_poly(planar_diagram(g), opts);
}

LaurentPoly alexander_poly(const PlanarDiagram& pd, const AlexanderOptions& opts) {
    int c = int(pd.crossings.size());
    if (c <= 1) return LaurentPoly(1);
    if (opts.prime_a == opts.prime_b || opts.prime_a < 1000 || opts.prime_b < 1000)
        throw AlexanderError(AlexanderErrorCode::BadInput, "need two distinct large primes");
    int N = c + 1;  // determinant degree is at most c - 1; one spare point
    u64 pa = opts.prime_a, pb = opts.prime_b;
    std::vector<u64> xs(N);
    for (int j = 0; j < N; ++j) xs[j] = u64(j + 1);
    std::vector<u64> ca = lagrange_interpolate(xs, eval_points(pd, N, pa, opts.jobs), pa);
    std::vector<u64> cb = lagrange_interpolate(xs, eval_points(pd, N, pb, opts.jobs), pb);
    // Combine the two images and lift to the symmetric range around zero.
    BigInt P = BigInt(pa) * pb;
    BigInt pa_inv_mod_pb = invmod(pa % pb, pb);
    std::vector<BigInt> lifted(N);
    for (int k = 0; k < N; ++k) {
        BigInt a = ca[k], b = cb[k];
        BigInt m = ((b - a) * pa_inv_mod_pb) % pb;
        if (m < 0) m += pb;
        BigInt x = a + m * pa;
        if (x * 2 > P) x -= P;
        lifted[k] = x;
    }
    if (lifted[N - 1] != 0)
        throw AlexanderError(AlexanderErrorCode::NormalizationFailure,
                             "determinant degree exceeds the arc count");
    // The determinant is the polynomial up to a sign and a power of t: center
    // it, then the symmetric normalization with value 1 at t = 1 must work.
    LaurentPoly det(0, std::move(lifted));
    if (det.is_zero())
        throw AlexanderError(AlexanderErrorCode::NormalizationFailure, "determinant vanishes");
    if (det.span() % 2 != 0)
        throw AlexanderError(AlexanderErrorCode::NormalizationFailure,
                             "determinant has odd coefficient span");
    det = det.shifted(-det.low() - det.span() / 2);
    if (!det.self_reciprocal())
        throw AlexanderError(AlexanderErrorCode::NormalizationFailure,
                             "determinant is not symmetric under t -> 1/t");
    BigInt at_one = det.eval_int(1);
    if (at_one == 1) return det;
    if (at_one == -1) return -det;
    throw AlexanderError(AlexanderErrorCode::NormalizationFailure,
                         "determinant value at t = 1 is not a unit");
}

std::vector<int> dt_export(const PlanarDiagram& pd, int start, bool reverse) {
    int c = int(pd.crossings.size());
    std::vector<int> out(c);
    if (c == 0) return out;
    int m = 2 * c;
    start = ((start % m) + m) % m;
    // label -> (crossing, over?) for labels 1..2c
    std::vector<std::pair<int, bool>> at(m);
    for (int i = 0; i < m; ++i) {
        int pos = reverse ? ((start - i) % m + m) % m : (start + i) % m;
        at[i] = {pd.walk[pos].crossing, pd.walk[pos].over};
    }
    std::vector<int> first(c, 0);  // 1-based label of the first visit
    for (int i = 0; i < m; ++i) {
        int label = i + 1;
        auto [x, over] = at[i];
        if (first[x] == 0) {
            first[x] = label;
            continue;
        }
        int a = first[x], b = label;
        int odd = a % 2 ? a : b;
        int even = a % 2 ? b : a;
        if (odd % 2 == 0 || even % 2 == 1)
            throw AlexanderError(AlexanderErrorCode::BadInput,
                                 "crossing visited twice with the same label parity");
        bool even_over = (even == a) ? at[a - 1].second : over;
        out[(odd - 1) / 2] = even_over ? -even : even;
    }
    return out;
}

std::vector<int> dt_export(const GridDiagram& g, int start, bool reverse) {
    return dt_export(planar_diagram(g), start, reverse);
}

std::vector<std::vector<int>> dt_variants(const PlanarDiagram& pd) {
    int m = 2 * int(pd.crossings.size());
    std::vector<std::vector<int>> out;
    out.reserve(2 * std::size_t(m));
    for (int start = 0; start < m; ++start) {
        out.push_back(dt_export(pd, start, false));
        out.push_back(dt_export(pd, start, true));
    }
    return out;
}

namespace {

// Rebuild the cyclic pass sequence a code describes: pass_of_label[L-1] =
// (crossing, over?).  Returns false for structurally invalid input.
bool code_to_passes(const std::vector<int>& code, std::vector<std::pair<int, bool>>& at) {
    int c = int(code.size());
    int m = 2 * c;
    at.assign(m, {-1, false});
    for (int k = 0; k < c; ++k) {
        int odd = 2 * k + 1;
        int even = std::abs(code[k]);
        if (even < 2 || even > m || even % 2 != 0) return false;
        if (at[even - 1].first != -1) return false;
        bool even_over = code[k] < 0;
        at[odd - 1] = {k, !even_over};
        at[even - 1] = {k, even_over};
    }
    return true;
}

}  // namespace

bool dt_match(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw AlexanderError(AlexanderErrorCode::LengthMismatch,
                             "codes of different lengths cannot match");
    int c = int(a.size());
    if (c == 0) return true;
    int m = 2 * c;
    std::vector<std::pair<int, bool>> at;
    if (!code_to_passes(a, at)) return false;
    std::vector<int> nb = b;
    for (int& x : nb) x = -x;
    std::vector<int> first(c), code(c);
    for (int dir : {1, -1}) {
        for (int s = 0; s < m; ++s) {
            // relabel: old label L -> ((dir * (L - 1) + s) mod m) + 1, then
            // read the code off the relabeled passes
            std::fill(first.begin(), first.end(), 0);
            std::fill(code.begin(), code.end(), 0);
            bool ok = true;
            // Position i of the new walk carries the pass whose old label is
            // obtained by inverting the relabeling.
            for (int i = 0; i < m && ok; ++i) {
                int old_label = ((dir * (i - s)) % m + m) % m;  // 0-based old label
                auto [x, over] = at[old_label];
                int label = i + 1;
                if (first[x] == 0) {
                    first[x] = over ? -label : label;
                } else {
                    int prev = std::abs(first[x]);
                    bool prev_over = first[x] < 0;
                    int odd = prev % 2 ? prev : label;
                    int even = prev % 2 ? label : prev;
                    if (odd % 2 == 0 || even % 2 == 1) { ok = false; break; }
                    bool even_over = (even == prev) ? prev_over : over;
                    code[(odd - 1) / 2] = even_over ? -even : even;
                }
            }
            if (ok && (code == b || code == nb)) return true;
        }
    }
    return false;
}

}  // namespace legrid
