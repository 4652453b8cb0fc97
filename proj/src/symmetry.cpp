#include "legrid/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace legrid {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

bool is_prime_int(long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

long long powmod_ll(long long a, long long e, long long m) {
    long long r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = (long long)(u128(r) * a % m);
        a = (long long)(u128(a) * a % m);
        e >>= 1;
    }
    return r;
}

// Multiplicative order of a mod p (p prime, a not divisible by p).
int order_mod(long long a, int p) {
    a %= p;
    if (a < 0) a += p;
    int e = p - 1;
    int rest = e;
    for (int r = 2; r * r <= rest; ++r) {
        if (rest % r) continue;
        while (rest % r == 0) rest /= r;
        while (e % r == 0 && powmod_ll(a, e / r, p) == 1) e /= r;
    }
    if (rest > 1)
        while (e % rest == 0 && powmod_ll(a, e / rest, p) == 1) e /= rest;
    return e;
}

// --- dense polynomials over F_q: ascending coefficients, trimmed ---

struct Fq {
    u64 q;
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= q ? s - q : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q - b; }
    u64 mul(u64 a, u64 b) const { return u64(u128(a) * b % q); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % q;
        a %= q;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, q - 2); }
};

using Poly = std::vector<u64>;

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const Poly& a) { return int(a.size()) - 1; }

Poly padd(const Fq& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    ptrim(r);
    return r;
}

Poly psub(const Fq& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    ptrim(r);
    return r;
}

Poly pmul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    ptrim(r);
    return r;
}

Poly pmod(const Fq& F, Poly a, const Poly& m) {
    int dm = pdeg(m);
    u64 lead_inv = F.inv(m.back());
    while (pdeg(a) >= dm) {
        u64 f = F.mul(a.back(), lead_inv);
        int shift = pdeg(a) - dm;
        for (int i = 0; i <= dm; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(f, m[i]));
        ptrim(a);
    }
    return a;
}

Poly pquo(const Fq& F, Poly a, const Poly& m) {
    int dm = pdeg(m);
    Poly quo(std::max(pdeg(a) - dm + 1, 0), 0);
    u64 lead_inv = F.inv(m.back());
    while (pdeg(a) >= dm) {
        u64 f = F.mul(a.back(), lead_inv);
        int shift = pdeg(a) - dm;
        quo[shift] = f;
        for (int i = 0; i <= dm; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(f, m[i]));
        ptrim(a);
    }
    ptrim(quo);
    return quo;
}

Poly pmonic(const Fq& F, Poly a) {
    if (a.empty() || a.back() == 1) return a;
    u64 s = F.inv(a.back());
    for (u64& c : a) c = F.mul(c, s);
    return a;
}

Poly pgcd(const Fq& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = pmod(F, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(F, std::move(a));
}

Poly pderiv(const Fq& F, const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.q));
    ptrim(r);
    return r;
}

Poly ppowmod(const Fq& F, Poly base, const BigInt& e, const Poly& m) {
    Poly r = {1};
    base = pmod(F, std::move(base), m);
    if (e == 0) return r;
    int bits = int(boost::multiprecision::msb(e));
    for (int i = bits; i >= 0; --i) {
        r = pmod(F, pmul(F, r, r), m);
        if (boost::multiprecision::bit_test(e, unsigned(i))) r = pmod(F, pmul(F, r, base), m);
    }
    return r;
}

// Image of a Laurent polynomial mod q, monomial unit stripped.
Poly reduce_mod(const LaurentPoly& f, u64 q) {
    Poly a;
    a.reserve(f.coeffs.size());
    for (const BigInt& c : f.coeffs) {
        BigInt m = c % q;
        if (m < 0) m += q;
        a.push_back(m.convert_to<u64>());
    }
    ptrim(a);
    return a;
}

// Equal-degree splitting: f is a monic product of distinct irreducibles, each
// of degree d.
void edf(const Fq& F, const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (pdeg(f) == d) {
        out.push_back(f);
        return;
    }
    Poly g;
    for (;;) {
        Poly r(pdeg(f), 0);
        for (u64& c : r) c = rng() % F.q;
        ptrim(r);
        if (r.empty()) continue;
        Poly w;
        if (F.q == 2) {
            // trace map over F_{2^d}: r + r^2 + r^4 + ... (d terms)
            Poly t = pmod(F, r, f), acc = t;
            for (int i = 1; i < d; ++i) {
                t = pmod(F, pmul(F, t, t), f);
                acc = padd(F, acc, t);
            }
            w = acc;
        } else {
            BigInt e = (boost::multiprecision::pow(BigInt(F.q), unsigned(d)) - 1) / 2;
            w = ppowmod(F, r, e, f);
            w = psub(F, w, Poly{1});
        }
        g = pgcd(F, w, f);
        if (pdeg(g) > 0 && pdeg(g) < pdeg(f)) break;
    }
    edf(F, g, d, rng, out);
    edf(F, pquo(F, f, g), d, rng, out);
}

// Full factorization of a monic squarefree polynomial into monic irreducibles.
std::vector<Poly> factor_squarefree(const Fq& F, Poly f) {
    std::vector<Poly> out;
    std::mt19937_64 rng(0xC0FFEEull * F.q + 17);
    Poly x = {0, 1};
    Poly h = x;  // x^(q^d) mod f, maintained incrementally
    int d = 0;
    while (pdeg(f) >= 2 * (d + 1)) {
        ++d;
        h = ppowmod(F, std::move(h), BigInt(F.q), f);
        Poly g = pgcd(F, psub(F, h, x), f);
        if (pdeg(g) > 0) {
            edf(F, g, d, rng, out);
            f = pquo(F, std::move(f), g);
            if (pdeg(f) < 1) break;
            h = pmod(F, std::move(h), f);
        }
    }
    if (pdeg(f) > 0) out.push_back(std::move(f));
    return out;
}

// Common entry: reduce, require a nonconstant image, reject repeated factors.
Poly prepared_image(const LaurentPoly& f, u64 q, const char* who) {
    if (!is_prime_int((long long)q))
        throw SymmetryError(SymmetryErrorCode::BadInput, std::string(who) + ": q must be prime");
    Poly a = reduce_mod(f, q);
    if (pdeg(a) < 1)
        throw SymmetryError(SymmetryErrorCode::BadInput,
                            std::string(who) + ": polynomial is constant mod q");
    Fq F{q};
    Poly der = pderiv(F, a);
    if (pdeg(pgcd(F, a, der)) > 0)
        throw SymmetryError(SymmetryErrorCode::NotSquarefree,
                            std::string(who) + ": repeated factor mod q");
    return pmonic(F, std::move(a));
}

}  // namespace

// ---------------------------------------------------------------------------

MurasugiResult murasugi_test(const LaurentPoly& delta, int p) {
    if (!is_prime_int(p))
        throw SymmetryError(SymmetryErrorCode::BadInput, "murasugi_test: p must be prime");
    // collect the exponents surviving mod p
    std::vector<int> exps;
    std::vector<u64> cf;
    for (std::size_t i = 0; i < delta.coeffs.size(); ++i) {
        BigInt m = delta.coeffs[i] % p;
        if (m < 0) m += p;
        if (m == 0) continue;
        exps.push_back(delta.min_exp + int(i));
        cf.push_back(m.convert_to<u64>());
    }
    if (exps.empty()) return {MurasugiKind::PthPower, 0};
    bool pth = true;
    for (int e : exps)
        if (((e - exps.front()) % p + p) % p != 0) pth = false;
    if (pth) return {MurasugiKind::PthPower, 0};
    Fq F{u64(p)};
    Poly f(exps.back() - exps.front() + 1, 0);
    for (std::size_t i = 0; i < exps.size(); ++i) f[exps[i] - exps.front()] = cf[i];
    int deg = pdeg(f);
    for (int d = 1; d * (p - 1) <= deg; ++d) {
        Poly base(d + 1, 1);
        Poly g = {1};
        for (int i = 0; i < p - 1; ++i) g = pmul(F, g, base);
        if (pmod(F, f, g).empty()) return {MurasugiKind::CyclotomicFactor, d};
    }
    return {MurasugiKind::Obstructed, 0};
}

// ---------------------------------------------------------------------------

std::array<BigInt, 5> special_values(const LaurentPoly& delta) {
    if (delta.is_zero())
        throw SymmetryError(SymmetryErrorCode::BadInput, "special_values: zero polynomial");
    if (delta.span() % 2 != 0)
        throw SymmetryError(SymmetryErrorCode::NonIntegerValue,
                            "special_values: odd coefficient span");
    LaurentPoly c = delta.shifted(-delta.low() - delta.span() / 2);
    if (!c.self_reciprocal())
        throw SymmetryError(SymmetryErrorCode::NonIntegerValue,
                            "special_values: polynomial is not symmetric under t -> 1/t");
    int m = c.high();
    // 2*cos(k*theta) for the five sample angles, one period each
    static const int sixth[6] = {2, 1, -1, -2, -1, 1};
    static const int quarter[4] = {2, 0, -2, 0};
    static const int third[3] = {2, -1, -1};
    std::array<BigInt, 5> v;
    v.fill(c.coeff(0));
    for (int k = 1; k <= m; ++k) {
        BigInt a = c.coeff(k);
        if (a == 0) continue;
        v[0] += a * 2;
        v[1] += a * sixth[k % 6];
        v[2] += a * quarter[k % 4];
        v[3] += a * third[k % 3];
        v[4] += a * (k % 2 ? -2 : 2);
    }
    return v;
}

// ---------------------------------------------------------------------------

namespace {

// Exact determinant of a 5x5 integer matrix (fraction-free elimination).
long long det5(std::array<std::array<long long, 5>, 5> m) {
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < 4; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < 5; ++r)
                if (m[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int r = k + 1; r < 5; ++r)
            for (int c = k + 1; c < 5; ++c)
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
        prev = m[k][k];
    }
    return sign * m[4][4];
}

// rows: angles 0, pi/3, pi/2, 2pi/3, pi; cols: basis 1, t^k + t^-k for k=1..4
constexpr std::array<std::array<long long, 5>, 5> kSampleMatrix = {{{1, 2, 2, 2, 2},
                                                                    {1, 1, -1, -2, -1},
                                                                    {1, 0, -2, 0, 2},
                                                                    {1, -1, -1, 2, -1},
                                                                    {1, -2, 2, -2, 2}}};

std::vector<long long> divisors_ll(long long v) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= v; ++d) {
        if (v % d) continue;
        out.push_back(d);
        if (d != v / d) out.push_back(v / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<EllOption> ell_enumerate(const std::array<BigInt, 5>& values) {
    std::array<std::vector<long long>, 5> choices;
    for (int j = 0; j < 5; ++j) {
        if (values[j] == 0)
            throw SymmetryError(SymmetryErrorCode::BadInput,
                                "ell_enumerate: zero value has unbounded divisor set");
        BigInt a = abs(values[j]);
        if (a > 1000000000000LL)
            throw SymmetryError(SymmetryErrorCode::BadInput, "ell_enumerate: value too large");
        for (long long d : divisors_ll(a.convert_to<long long>())) {
            choices[j].push_back(d);
            choices[j].push_back(-d);
        }
        std::sort(choices[j].begin(), choices[j].end());
    }
    long long det = det5(kSampleMatrix);
    std::vector<EllOption> out;
    std::array<long long, 5> a{};
    for (long long a0 : choices[0]) {
        a[0] = a0;
        for (long long a1 : choices[1]) {
            a[1] = a1;
            for (long long a2 : choices[2]) {
                a[2] = a2;
                for (long long a3 : choices[3]) {
                    a[3] = a3;
                    for (long long a4 : choices[4]) {
                        a[4] = a4;
                        std::array<long long, 5> x{};
                        bool integral = true;
                        for (int j = 0; j < 5 && integral; ++j) {
                            auto mj = kSampleMatrix;
                            for (int r = 0; r < 5; ++r) mj[r][j] = a[r];
                            long long dj = det5(mj);
                            if (dj % det != 0) integral = false;
                            else x[j] = dj / det;
                        }
                        if (!integral) continue;
                        std::vector<BigInt> cs = {x[4], x[3], x[2], x[1], x[0],
                                                  x[1], x[2], x[3], x[4]};
                        out.push_back(EllOption{a, x, LaurentPoly(0, std::move(cs))});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const EllOption& l, const EllOption& r) { return l.a < r.a; });
    return out;
}

// ---------------------------------------------------------------------------

std::uint64_t newton_search(int bound, int jobs, std::vector<NewtonSolution>* out) {
    if (bound < 0)
        throw SymmetryError(SymmetryErrorCode::BadInput, "newton_search: negative bound");
    int B = bound;
    long long lo = -B, hi = B;
    int width = 2 * B + 1;
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, width);
    struct Chunk {
        std::uint64_t count = 0;
        std::vector<NewtonSolution> sols;
    };
    std::vector<Chunk> chunks(jobs);
    auto run = [&](int w) {
        long long from = lo + (long long)width * w / jobs;
        long long to = lo + (long long)width * (w + 1) / jobs;
        Chunk& ck = chunks[w];
        for (long long p1 = from; p1 < to; ++p1) {
            long long c1 = -p1;
            for (long long p2 = lo; p2 <= hi; ++p2) {
                long long s2 = p2 + c1 * p1;
                if (s2 % 2) continue;
                long long c2 = -s2 / 2;
                for (long long p3 = lo; p3 <= hi; ++p3) {
                    long long s3 = p3 + c1 * p2 + c2 * p1;
                    if (s3 % 3) continue;
                    long long c3 = -s3 / 3;
                    for (long long p4 = lo; p4 <= hi; ++p4) {
                        long long s4 = p4 + c1 * p3 + c2 * p2 + c3 * p1;
                        if (s4 % 4) continue;
                        long long c4 = -s4 / 4;
                        for (long long p5 = lo; p5 <= hi; ++p5) {
                            long long s5 = p5 + c1 * p4 + c2 * p3 + c3 * p2 + c4 * p1;
                            if (s5 % 5) continue;
                            ++ck.count;
                            if (out)
                                ck.sols.push_back(NewtonSolution{
                                    {int(p1), int(p2), int(p3), int(p4), int(p5)},
                                    {int(c1), int(c2), int(c3), int(c4), int(-s5 / 5)}});
                        }
                    }
                }
            }
        }
    };
    if (jobs == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (auto& ck : chunks) {
        total += ck.count;
        if (out) out->insert(out->end(), ck.sols.begin(), ck.sols.end());
    }
    return total;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<long long, 10> kSeed = {1, -1, 1, -1, 0, 0, -1, 1, -1, 1};

// Degree-20 polynomial with prescribed low coefficients c and a symmetric
// seed * cofactor shape; the middle nine coefficients are still free.
std::array<long long, 21> candidate_base(const NewtonSolution& ns) {
    std::array<long long, 12> B{};
    B[0] = 1;
    for (int k = 1; k <= 5; ++k) {
        long long s = ns.c[k - 1];
        for (int i = 1; i <= k; ++i) s -= kSeed[i] * B[k - i];
        B[k] = s;
    }
    for (int k = 6; k < 12; ++k) B[k] = B[11 - k];
    std::array<long long, 21> f{};
    for (int i = 0; i < 10; ++i) {
        if (kSeed[i] == 0) continue;
        for (int j = 0; j < 12; ++j) f[i + j] += kSeed[i] * B[j];
    }
    return f;
}

std::array<long long, 9> middle_of(const EllOption& e) {
    return {e.x[4], e.x[3], e.x[2], e.x[1], e.x[0], e.x[1], e.x[2], e.x[3], e.x[4]};
}

constexpr int kMaxHorizon = 64;

const std::vector<long long>& ceilings_64() {
    static const std::vector<long long> c = violation_ceilings(kMaxHorizon);
    return c;
}

int first_violation_impl(const std::array<long long, 21>& f, int k_max,
                         const std::vector<long long>& m) {
    long long p[kMaxHorizon + 1];
    for (int k = 1; k <= k_max; ++k) {
        __int128 s = (k <= 20) ? __int128(k) * f[20 - k] : 0;
        for (int i = 1; i < k && i <= 20; ++i) s += __int128(f[20 - i]) * p[k - i];
        __int128 pk = -s;
        __int128 ab = pk < 0 ? -pk : pk;
        if (ab > m[k]) return k;
        p[k] = (long long)pk;
    }
    return 0;
}

}  // namespace

std::array<long long, 21> build_candidate(const EllOption& ell, const NewtonSolution& ns) {
    std::array<long long, 21> f = candidate_base(ns);
    auto mid = middle_of(ell);
    for (int i = 0; i < 9; ++i) f[6 + i] += mid[i];
    return f;
}

std::vector<long long> violation_ceilings(int k_max) {
    if (k_max < 1)
        throw SymmetryError(SymmetryErrorCode::BadInput, "violation_ceilings: k_max < 1");
    std::vector<long long> m(k_max + 1, 0);
    BigInt rhs = boost::multiprecision::pow(BigInt(20), 101);
    BigInt two_k = 1;
    long long cur = 20;
    for (int k = 1; k <= k_max; ++k) {
        rhs *= 3;
        two_k *= 2;
        while (boost::multiprecision::pow(BigInt(cur + 1), 101) * two_k <= rhs) ++cur;
        m[k] = cur;
    }
    return m;
}

std::vector<long long> power_sums(const std::array<long long, 21>& f, int k_max) {
    if (k_max < 0) throw SymmetryError(SymmetryErrorCode::BadInput, "power_sums: k_max < 0");
    std::vector<long long> p(k_max + 1, 0);
    p[0] = 20;
    for (int k = 1; k <= k_max; ++k) {
        __int128 s = (k <= 20) ? __int128(k) * f[20 - k] : 0;
        for (int i = 1; i < k && i <= 20; ++i) s += __int128(f[20 - i]) * p[k - i];
        __int128 pk = -s;
        if (pk > std::numeric_limits<long long>::max() || pk < std::numeric_limits<long long>::min())
            throw SymmetryError(SymmetryErrorCode::BadInput, "power_sums: overflow");
        p[k] = (long long)pk;
    }
    return p;
}

int first_violation(const std::array<long long, 21>& f, int k_max) {
    if (k_max < 1 || k_max > kMaxHorizon)
        throw SymmetryError(SymmetryErrorCode::BadInput, "first_violation: bad horizon");
    return first_violation_impl(f, k_max, ceilings_64());
}

EliminationReport eliminate_candidates(const std::vector<EllOption>& opts,
                                       const std::vector<NewtonSolution>& sols, int k_max,
                                       int jobs) {
    if (k_max < 1 || k_max > kMaxHorizon)
        throw SymmetryError(SymmetryErrorCode::BadInput, "eliminate_candidates: bad horizon");
    const auto& ceilings = ceilings_64();
    std::vector<std::array<long long, 9>> mids;
    mids.reserve(opts.size());
    for (const auto& e : opts) mids.push_back(middle_of(e));
    if (jobs < 1) jobs = 1;
    jobs = int(std::min(std::size_t(jobs), std::max<std::size_t>(sols.size(), 1)));
    struct Chunk {
        std::array<std::uint64_t, kMaxHorizon + 1> hist{};
        std::vector<EliminationReport::Survivor> survivors;
    };
    std::vector<Chunk> chunks(jobs);
    auto run = [&](int w) {
        std::size_t from = sols.size() * w / jobs;
        std::size_t to = sols.size() * (w + 1) / jobs;
        Chunk& ck = chunks[w];
        for (std::size_t s = from; s < to; ++s) {
            std::array<long long, 21> base = candidate_base(sols[s]);
            for (std::size_t e = 0; e < mids.size(); ++e) {
                std::array<long long, 21> f = base;
                for (int i = 0; i < 9; ++i) f[6 + i] += mids[e][i];
                int k = first_violation_impl(f, k_max, ceilings);
                if (k == 0)
                    ck.survivors.push_back(EliminationReport::Survivor{e, sols[s]});
                else
                    ++ck.hist[k];
            }
        }
    };
    if (jobs == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    EliminationReport rep;
    rep.total = std::uint64_t(opts.size()) * sols.size();
    for (auto& ck : chunks) {
        for (int k = 1; k <= k_max; ++k)
            if (ck.hist[k]) rep.first_violation_histogram[k] += ck.hist[k];
        rep.survivors.insert(rep.survivors.end(), ck.survivors.begin(), ck.survivors.end());
    }
    rep.eliminated = rep.total - rep.survivors.size();
    return rep;
}

// ---------------------------------------------------------------------------

bool rabin_irreducible_mod_q(const LaurentPoly& f, std::uint32_t q) {
    Poly a = prepared_image(f, q, "rabin_irreducible_mod_q");
    Fq F{q};
    int n = pdeg(a);
    std::vector<int> checkpoints;  // n / r for each prime r dividing n
    for (int r = 2; r <= n; ++r)
        if (n % r == 0 && is_prime_int(r)) checkpoints.push_back(n / r);
    Poly x = {0, 1};
    Poly xr = pmod(F, x, a);  // x reduced, in case a is linear
    Poly h = xr;
    for (int k = 1; k <= n; ++k) {
        h = ppowmod(F, std::move(h), BigInt(q), a);
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end())
            if (pdeg(pgcd(F, psub(F, h, xr), a)) != 0) return false;
        if (k == n && !psub(F, h, xr).empty()) return false;
    }
    return true;
}

std::vector<int> factor_degrees_mod_q(const LaurentPoly& f, std::uint32_t q) {
    Poly a = prepared_image(f, q, "factor_degrees_mod_q");
    Fq F{q};
    std::vector<int> degs;
    for (const Poly& g : factor_squarefree(F, std::move(a))) degs.push_back(pdeg(g));
    std::sort(degs.begin(), degs.end());
    return degs;
}

std::vector<int> factor_degrees_power_substitution(const LaurentPoly& f, int p, std::uint32_t q) {
    if (!is_prime_int(p) || int(q) == p)
        throw SymmetryError(SymmetryErrorCode::BadInput,
                            "factor_degrees_power_substitution: need primes p != q");
    Poly a = prepared_image(f, q, "factor_degrees_power_substitution");
    if (pdeg(a) != f.span())
        throw SymmetryError(SymmetryErrorCode::BadInput,
                            "factor_degrees_power_substitution: leading coefficient vanishes mod q");
    if (a[0] == 0)
        throw SymmetryError(SymmetryErrorCode::BadInput,
                            "factor_degrees_power_substitution: constant term vanishes mod q");
    Fq F{q};
    std::vector<int> degs;
    for (const Poly& g : factor_squarefree(F, std::move(a))) {
        int d = pdeg(g);
        // Each root alpha of g picks up its p-th roots; their degrees follow
        // from whether alpha is a p-th power in F_{q^d} and from the order of
        // q^d mod p.
        long long qd_mod_p = powmod_ll(q, d, p);
        if (qd_mod_p == 1) {
            BigInt e = (boost::multiprecision::pow(BigInt(q), unsigned(d)) - 1) / p;
            Poly t_pow = ppowmod(F, Poly{0, 1}, e, g);
            if (t_pow == Poly{1})
                degs.insert(degs.end(), std::size_t(p), d);
            else
                degs.push_back(d * p);
        } else {
            int e = order_mod(qd_mod_p, p);
            degs.push_back(d);
            for (int i = 0; i < (p - 1) / e; ++i) degs.push_back(d * e);
        }
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

bool no_subset_sums_to(const std::vector<int>& degrees, int target) {
    if (target < 0) return true;
    if (target == 0) return false;
    if (target <= 126) {
        u128 dp = 1;
        u128 mask = (u128(1) << (target + 1)) - 1;
        for (int d : degrees)
            if (d >= 1 && d <= target) dp = (dp | (dp << d)) & mask;
        return ((dp >> target) & 1) == 0;
    }
    std::vector<char> dp(target + 1, 0);
    dp[0] = 1;
    for (int d : degrees) {
        if (d < 1 || d > target) continue;
        for (int s = target; s >= d; --s)
            if (dp[s - d]) dp[s] = 1;
    }
    return dp[target] == 0;
}

// ---------------------------------------------------------------------------

std::vector<std::complex<double>> polynomial_roots(const LaurentPoly& f) {
    if (f.is_zero())
        throw SymmetryError(SymmetryErrorCode::BadInput, "polynomial_roots: zero polynomial");
    int n = f.span();
    std::vector<std::complex<double>> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = f.coeffs[i].convert_to<double>();
    if (n == 0) return {};
    auto horner = [&](std::complex<double> z) {
        std::complex<double> acc = a[n];
        for (int i = n - 1; i >= 0; --i) acc = acc * z + a[i];
        return acc;
    };
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i] / a[n]));
    radius = 1 + radius;
    std::vector<std::complex<double>> z(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2 * 3.141592653589793238 * k / n + 0.43;
        z[k] = 0.7 * radius * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> den = a[n];
            for (int j = 0; j < n; ++j)
                if (j != k) den *= z[k] - z[j];
            if (std::abs(den) == 0) {
                z[k] += std::complex<double>(1e-8, 2e-8);
                worst = 1;
                continue;
            }
            std::complex<double> step = horner(z[k]) / den;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (worst < 1e-13) break;
    }
    for (int k = 0; k < n; ++k) {
        double scale = 0, zp = 1, az = std::abs(z[k]);
        for (int i = 0; i <= n; ++i) {
            scale += std::abs(a[i]) * zp;
            zp *= az;
        }
        if (std::abs(horner(z[k])) > 1e-6 * std::max(scale, 1e-300))
            throw SymmetryError(SymmetryErrorCode::NoConvergence,
                                "polynomial_roots: residual test failed");
    }
    return z;
}

bool roots_in_disk(const LaurentPoly& f, double radius) {
    for (const auto& z : polynomial_roots(f))
        if (std::abs(z) > radius - 1e-6) return false;
    return true;
}

// ---------------------------------------------------------------------------

FreePeriodReport free_period_report(const LaurentPoly& delta, const FreePeriodOptions& opts) {
    if (delta.is_zero())
        throw SymmetryError(SymmetryErrorCode::BadInput, "free_period_report: zero polynomial");
    FreePeriodReport rep;
    int span = delta.span();
    if (span == 0) {
        rep.verdict = PeriodVerdict::NotApplicable;
        rep.note = "constant polynomial carries no period information";
        return rep;
    }
    // Cyclic periods.  For p > span + 1 neither Murasugi condition can hold
    // for a nonconstant polynomial, so the explicit sweep below is complete.
    rep.murasugi_all_obstructed = true;
    std::vector<int> open;
    for (int p = 2; p <= span + 1; ++p) {
        if (!is_prime_int(p)) continue;
        MurasugiResult r = murasugi_test(delta, p);
        rep.murasugi.push_back({p, r});
        if (r.kind != MurasugiKind::Obstructed) {
            rep.murasugi_all_obstructed = false;
            open.push_back(p);
        }
    }
    // Free periods p < 100: look for a modulus q where the factor degrees of
    // delta(t^p) admit no subset summing to span -- then no integer factor of
    // degree span exists, which a free period p would force.
    BigInt lead = abs(delta.coeffs.back());
    BigInt trail = abs(delta.coeffs.front());
    bool all_small = true;
    for (int p = 2; p < 100; ++p) {
        if (!is_prime_int(p)) continue;
        FreePeriodReport::SmallPeriodEntry entry;
        entry.p = p;
        for (int q = 2; q <= opts.q_limit; ++q) {
            if (!is_prime_int(q) || q == p) continue;
            if (lead % q == 0 || trail % q == 0) continue;
            std::vector<int> profile;
            try {
                profile = factor_degrees_power_substitution(delta, p, std::uint32_t(q));
            } catch (const SymmetryError& err) {
                if (err.code() == SymmetryErrorCode::NotSquarefree) continue;
                throw;
            }
            if (no_subset_sums_to(profile, span)) {
                entry.certificate_q = q;
                entry.factor_degrees = std::move(profile);
                entry.fully_irreducible = entry.factor_degrees.size() == 1;
                entry.excluded = true;
                break;
            }
        }
        rep.small_periods.push_back(std::move(entry));
        if (!rep.small_periods.back().excluded) {
            all_small = false;
            open.push_back(p);
        }
    }
    // Free periods p > 100: every hypothetical degree-20 factor is eliminated
    // through its power sums.
    auto& L = rep.large_periods;
    if (!opts.run_elimination) {
        L.skip_reason = "elimination disabled";
    } else if (span != 20) {
        L.skip_reason = "power-sum elimination covers degree-20 polynomials only";
    } else {
        std::array<BigInt, 5> vals = special_values(delta);
        bool nonzero = true;
        for (const BigInt& v : vals)
            if (v == 0) nonzero = false;
        if (!nonzero) {
            L.skip_reason = "a sample value vanishes; divisor enumeration is unbounded";
        } else {
            std::vector<EllOption> ells = ell_enumerate(vals);
            std::vector<NewtonSolution> sols;
            newton_search(20, opts.jobs, &sols);
            EliminationReport er = eliminate_candidates(ells, sols, opts.k_max, opts.jobs);
            L.ran = true;
            L.candidates = er.total;
            L.eliminated = er.eliminated;
            L.survivors = er.survivors.size();
            L.first_violation_histogram = std::move(er.first_violation_histogram);
            L.excluded = er.survivors.empty();
        }
    }
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    rep.unexcluded = std::move(open);
    if (rep.murasugi_all_obstructed && all_small && L.excluded) {
        rep.verdict = PeriodVerdict::AllPeriodsExcluded;
    } else {
        rep.verdict = PeriodVerdict::Unknown;
        std::string why;
        if (!rep.murasugi_all_obstructed) why += "some cyclic periods pass the mod-p conditions; ";
        if (!all_small)
            why +=
                "some free periods below 100 admit every observed factorization pattern, which "
                "only an integer factorization could rule out; ";
        if (!L.excluded)
            why += L.ran ? "power-sum elimination left survivors; "
                         : "free periods above 100 were not analyzed (" + L.skip_reason + "); ";
        if (!why.empty()) why.erase(why.size() - 2);
        rep.note = why;
    }
    return rep;
}

}  // namespace legrid
