#include "legrid/torus.hpp"

#include <algorithm>
#include <array>

#include <boost/multiprecision/cpp_int.hpp>

namespace legrid {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int norm_mod(int x, int n) { return ((x % n) + n) % n; }

// Cyclic membership: c lies in the range that starts at a and runs forward to
// b inclusive.  a == (b+1) mod n makes the range the whole circle.
bool in_cyclic(int c, int a, int b) { return a <= b ? (a <= c && c <= b) : (c >= a || c <= b); }

// Counts of diagram vertices inside closed cyclic column x row ranges,
// answered from a 2D prefix table.
class RangeCounter {
public:
    explicit RangeCounter(const UnorientedGridDiagram& g) : n_(g.size()) {
        pre_.assign((n_ + 1) * (n_ + 1), 0);
        for (auto [c, r] : g.points()) pre_[(c + 1) * (n_ + 1) + (r + 1)] += 1;
        for (int a = 1; a <= n_; ++a)
            for (int b = 0; b <= n_; ++b) pre_[a * (n_ + 1) + b] += pre_[(a - 1) * (n_ + 1) + b];
        for (int a = 0; a <= n_; ++a)
            for (int b = 1; b <= n_; ++b) pre_[a * (n_ + 1) + b] += pre_[a * (n_ + 1) + b - 1];
    }

    // Vertices with column in the cyclic range [ca..cb] and row in [ra..rb].
    int count(int ca, int cb, int ra, int rb) const {
        if (ca <= cb) return strip(ca, cb, ra, rb);
        return strip(ca, n_ - 1, ra, rb) + strip(0, cb, ra, rb);
    }

private:
    int box(int c1, int c2, int r1, int r2) const {  // linear ranges, inclusive
        return pre_[(c2 + 1) * (n_ + 1) + (r2 + 1)] - pre_[c1 * (n_ + 1) + (r2 + 1)] -
               pre_[(c2 + 1) * (n_ + 1) + r1] + pre_[c1 * (n_ + 1) + r1];
    }
    int strip(int c1, int c2, int ra, int rb) const {
        if (ra <= rb) return box(c1, c2, ra, rb);
        return box(c1, c2, ra, n_ - 1) + box(c1, c2, 0, rb);
    }

    int n_;
    std::vector<int> pre_;
};

std::vector<BigInt> reduce_content(std::vector<BigInt> v) {
    BigInt g = 0;
    for (const BigInt& e : v) g = boost::multiprecision::gcd(g, e);
    if (g > 1)
        for (BigInt& e : v) e /= g;
    for (const BigInt& e : v) {
        if (e == 0) continue;
        if (e < 0)
            for (BigInt& x : v) x = -x;
        break;
    }
    return v;
}

// Fraction-free row echelon over T.  Returns false when T overflows (only for
// the word-sized instantiation).  On success fills pivot_cols ascending and
// rewrites m in place; rank = pivot_cols.size().
bool echelon_int64(std::vector<std::vector<long long>>& m, std::vector<int>& pivot_cols) {
    const long long LIM = (1LL << 62);
    int rows = int(m.size()), cols = rows ? int(m[0].size()) : 0;
    long long prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = r + 1; i < rows; ++i) {
            // Every row below the pivot is rescaled, zero-pivot-column rows
            // included: the next exact division relies on it.
            for (int k = c + 1; k < cols; ++k) {
                __int128 t = (__int128)m[i][k] * m[r][c] - (__int128)m[i][c] * m[r][k];
                t /= prev;
                if (t >= LIM || t <= -LIM) return false;
                m[i][k] = (long long)t;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivot_cols.push_back(c);
        ++r;
    }
    return true;
}

void echelon_big(std::vector<std::vector<BigInt>>& m, std::vector<int>& pivot_cols) {
    int rows = int(m.size()), cols = rows ? int(m[0].size()) : 0;
    BigInt prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = r + 1; i < rows; ++i) {
            for (int k = c + 1; k < cols; ++k)
                m[i][k] = (m[i][k] * m[r][c] - m[i][c] * m[r][k]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivot_cols.push_back(c);
        ++r;
    }
}

// Back-substitute one kernel vector for the given free column from an
// echelon matrix (any exactly-representable entries).
template <typename Mat>
std::vector<BigInt> kernel_vector(const Mat& m, const std::vector<int>& pivot_cols, int cols,
                                  int free_col) {
    std::vector<Rational> x(cols, 0);
    x[free_col] = 1;
    for (int r = int(pivot_cols.size()) - 1; r >= 0; --r) {
        int pc = pivot_cols[r];
        Rational s = 0;
        for (int c = pc + 1; c < cols; ++c)
            if (x[c] != 0) s += Rational(m[r][c]) * x[c];
        x[pc] = -s / Rational(m[r][pc]);
    }
    BigInt lcm = 1;
    for (const Rational& e : x)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(e));
    std::vector<BigInt> out(cols);
    for (int c = 0; c < cols; ++c)
        out[c] = boost::multiprecision::numerator(x[c]) *
                 (lcm / boost::multiprecision::denominator(x[c]));
    return reduce_content(std::move(out));
}

BigInt dot3(const std::array<BigInt, 3>& a, const std::array<BigInt, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

bool admissible(const UnorientedGridDiagram& g, const RectType& t) {
    int n = g.size();
    if (n == 0) throw TorusError(TorusErrorCode::BadInput, "admissible: empty diagram");
    int ca = norm_mod(t.i + 1, n), cb = norm_mod(t.k, n);
    int ra = norm_mod(t.j + 1, n), rb = norm_mod(t.l, n);
    for (auto [c, r] : g.points())
        if (in_cyclic(c, ca, cb) && in_cyclic(r, ra, rb)) return false;
    return true;
}

std::vector<RectType> maximal_types(const UnorientedGridDiagram& g) {
    int n = g.size();
    if (n == 0) throw TorusError(TorusErrorCode::BadInput, "maximal_types: empty diagram");
    RangeCounter rc(g);
    auto adm = [&](int i, int j, int k, int l) {
        return rc.count(norm_mod(i + 1, n), norm_mod(k, n), norm_mod(j + 1, n), norm_mod(l, n)) ==
               0;
    };
    std::vector<RectType> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;  // full column wrap is never admissible
                for (int l = 0; l < n; ++l) {
                    if (l == j) continue;
                    if (!adm(i, j, k, l)) continue;
                    if (adm(i - 1, j, k, l) || adm(i, j - 1, k, l) || adm(i, j, k + 1, l) ||
                        adm(i, j, k, l + 1))
                        continue;
                    out.push_back(RectType{i, j, k, l});
                }
            }
    return out;
}

SparseIntMatrix matching_system(int n, const std::vector<RectType>& types) {
    if (n <= 0) throw TorusError(TorusErrorCode::BadInput, "matching_system: n must be positive");
    SparseIntMatrix m;
    m.rows = n * n;
    m.cols = int(types.size());
    m.entries.reserve(4 * types.size());
    for (int v = 0; v < int(types.size()); ++v) {
        const RectType& t = types[v];
        int ci = norm_mod(t.i, n), cj = norm_mod(t.j, n);
        int ck = norm_mod(t.k, n), cl = norm_mod(t.l, n);
        // Bottom corners count +1, top corners -1.  The four corner cells
        // (i,j), (k,j), (i,l), (k,l) are pairwise distinct because i != k
        // and j != l for any admissible type.
        m.entries.push_back({ci * n + cj, v, 1});
        m.entries.push_back({ck * n + cj, v, 1});
        m.entries.push_back({ci * n + cl, v, -1});
        m.entries.push_back({ck * n + cl, v, -1});
    }
    return m;
}

RankKernel rank_kernel(const SparseIntMatrix& m) {
    if (m.rows < 0 || m.cols < 0)
        throw TorusError(TorusErrorCode::BadInput, "rank_kernel: negative shape");
    for (const auto& e : m.entries)
        if (e.row < 0 || e.row >= m.rows || e.col < 0 || e.col >= m.cols)
            throw TorusError(TorusErrorCode::BadInput, "rank_kernel: entry out of range");

    std::vector<std::vector<long long>> w(m.rows, std::vector<long long>(m.cols, 0));
    for (const auto& e : m.entries) w[e.row][e.col] += e.value;

    RankKernel out;
    std::vector<int> pivots;
    if (echelon_int64(w, pivots)) {
        out.rank = int(pivots.size());
        std::vector<char> is_pivot(m.cols, 0);
        for (int c : pivots) is_pivot[c] = 1;
        for (int c = 0; c < m.cols; ++c)
            if (!is_pivot[c]) out.kernel.push_back(kernel_vector(w, pivots, m.cols, c));
        return out;
    }

    std::vector<std::vector<BigInt>> wb(m.rows, std::vector<BigInt>(m.cols, 0));
    for (const auto& e : m.entries) wb[e.row][e.col] += e.value;
    pivots.clear();
    echelon_big(wb, pivots);
    out.rank = int(pivots.size());
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) out.kernel.push_back(kernel_vector(wb, pivots, m.cols, c));
    return out;
}

std::vector<std::vector<BigInt>> nonneg_rays(const std::vector<std::vector<BigInt>>& basis) {
    if (basis.empty()) return {};
    if (basis.size() > 3)
        throw TorusError(TorusErrorCode::DimensionUnsupported,
                         "nonneg_rays: spans of dimension > 3 are not supported");
    std::size_t len = basis[0].size();
    for (const auto& v : basis) {
        if (v.size() != len)
            throw TorusError(TorusErrorCode::BadInput, "nonneg_rays: ragged basis");
        if (std::all_of(v.begin(), v.end(), [](const BigInt& e) { return e == 0; }))
            throw TorusError(TorusErrorCode::BadInput, "nonneg_rays: zero basis vector");
    }
    int dim = int(basis.size());
    {
        // The candidate enumeration below assumes the basis is independent; a
        // dependent one would make boundary directions collapse to zero.
        std::vector<std::vector<BigInt>> mat = basis;
        std::vector<int> piv;
        echelon_big(mat, piv);
        if (int(piv.size()) != dim)
            throw TorusError(TorusErrorCode::BadInput, "nonneg_rays: dependent basis");
    }
    std::vector<std::vector<BigInt>> rays;
    auto emit = [&](const std::vector<BigInt>& coeff) {
        std::vector<BigInt> x(len, 0);
        for (int d = 0; d < dim; ++d)
            if (coeff[d] != 0)
                for (std::size_t idx = 0; idx < len; ++idx) x[idx] += coeff[d] * basis[d][idx];
        bool nonzero = false, nonneg = true;
        for (const BigInt& e : x) {
            if (e != 0) nonzero = true;
            if (e < 0) nonneg = false;
        }
        if (!nonzero || !nonneg) return;
        rays.push_back(reduce_content(std::move(x)));
    };

    if (dim == 1) {
        emit({1});
        emit({-1});
    } else if (dim == 2) {
        for (std::size_t idx = 0; idx < len; ++idx) {
            BigInt a = basis[0][idx], b = basis[1][idx];
            if (a == 0 && b == 0) continue;
            emit({-b, a});
            emit({b, -a});
        }
    } else {
        // An extreme ray of a pointed 3D cone lies on two independent active
        // constraints; cross products of constraint pairs cover all of them.
        std::vector<std::array<BigInt, 3>> cons;
        for (std::size_t idx = 0; idx < len; ++idx) {
            std::array<BigInt, 3> c = {basis[0][idx], basis[1][idx], basis[2][idx]};
            if (c[0] != 0 || c[1] != 0 || c[2] != 0) cons.push_back(c);
        }
        for (std::size_t p = 0; p < cons.size(); ++p)
            for (std::size_t q = p + 1; q < cons.size(); ++q) {
                std::array<BigInt, 3> d = {cons[p][1] * cons[q][2] - cons[p][2] * cons[q][1],
                                           cons[p][2] * cons[q][0] - cons[p][0] * cons[q][2],
                                           cons[p][0] * cons[q][1] - cons[p][1] * cons[q][0]};
                if (d[0] == 0 && d[1] == 0 && d[2] == 0) continue;
                bool plus = true, minus = true;
                for (const auto& c : cons) {
                    BigInt s = dot3(c, d);
                    if (s < 0) plus = false;
                    if (s > 0) minus = false;
                    if (!plus && !minus) break;
                }
                if (plus) emit({d[0], d[1], d[2]});
                if (minus) emit({-d[0], -d[1], -d[2]});
            }
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

Certificate certify(const UnorientedGridDiagram& g) {
    std::vector<RectType> types = maximal_types(g);
    SparseIntMatrix m = matching_system(g.size(), types);
    RankKernel rk = rank_kernel(m);
    Certificate cert;
    cert.n_maximal = int(types.size());
    cert.rank = rk.rank;
    cert.kernel_dim = int(rk.kernel.size());
    cert.rays = nonneg_rays(rk.kernel);
    if (cert.rays.empty())
        cert.conclusion = TorusConclusion::NoEssentialTorusCandidates;
    else if (cert.rays.size() == 1)
        cert.conclusion = TorusConclusion::SingleRay;
    else
        cert.conclusion = TorusConclusion::MultiRay;
    return cert;
}

}  // namespace legrid
