#include "legrid/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace legrid {

LaurentPoly::LaurentPoly(long long constant) {
    if (constant != 0) coeffs.push_back(BigInt(constant));
}

LaurentPoly::LaurentPoly(int min_exponent, std::vector<BigInt> ascending)
    : min_exp(min_exponent), coeffs(std::move(ascending)) {
    trim();
}

LaurentPoly LaurentPoly::monomial(int e) {
    LaurentPoly m;
    m.min_exp = e;
    m.coeffs.push_back(1);
    return m;
}

BigInt LaurentPoly::coeff(int e) const {
    int i = e - min_exp;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[i];
}

void LaurentPoly::trim() {
    std::size_t lo = 0;
    while (lo < coeffs.size() && coeffs[lo] == 0) ++lo;
    if (lo == coeffs.size()) {
        coeffs.clear();
        min_exp = 0;
        return;
    }
    std::size_t hi = coeffs.size();
    while (coeffs[hi - 1] == 0) --hi;
    coeffs.erase(coeffs.begin() + hi, coeffs.end());
    coeffs.erase(coeffs.begin(), coeffs.begin() + lo);
    min_exp += static_cast<int>(lo);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int lo = std::min(min_exp, o.min_exp);
    int hi = std::max(high(), o.high());
    LaurentPoly r;
    r.min_exp = lo;
    r.coeffs.assign(hi - lo + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r.coeffs[min_exp - lo + i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i)
        r.coeffs[o.min_exp - lo + i] += o.coeffs[i];
    r.trim();
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return LaurentPoly();
    LaurentPoly r;
    r.min_exp = min_exp + o.min_exp;
    r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs.size(); ++j)
            r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    r.trim();
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.min_exp += k;
    return r;
}

LaurentPoly LaurentPoly::reciprocal() const {
    LaurentPoly r;
    if (is_zero()) return r;
    r.min_exp = -high();
    r.coeffs.assign(coeffs.rbegin(), coeffs.rend());
    return r;
}

LaurentPoly LaurentPoly::compose_power(int p) const {
    if (p < 1) throw std::invalid_argument("compose_power: p must be >= 1");
    LaurentPoly r;
    if (is_zero()) return r;
    r.min_exp = min_exp * p;
    r.coeffs.assign((coeffs.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i * p] = coeffs[i];
    return r;
}

BigInt LaurentPoly::eval_int(const BigInt& x) const {
    if (is_zero()) return 0;
    if (min_exp < 0 && x != 1 && x != -1)
        throw std::invalid_argument("eval_int: negative exponents need x = +-1");
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    if (min_exp != 0) {
        // x is +-1 here when min_exp < 0; x^min_exp is then x^(min_exp mod 2).
        BigInt scale = 1;
        bool odd = (min_exp % 2) != 0;
        if (min_exp > 0) {
            for (int i = 0; i < min_exp; ++i) scale *= x;
        } else {
            scale = odd ? x : BigInt(1);
        }
        acc *= scale;
    }
    return acc;
}

bool LaurentPoly::self_reciprocal() const {
    std::size_t k = coeffs.size();
    for (std::size_t i = 0; i < k / 2; ++i)
        if (coeffs[i] != coeffs[k - 1 - i]) return false;
    return min_exp == -high() || is_zero();
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        const BigInt& c = coeffs[i];
        if (c == 0) continue;
        int e = min_exp + i;
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || e == 0) out << a.str();
        if (e != 0) {
            if (a != 1) out << "*";
            out << "t";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

std::string LaurentPoly::serialize() const {
    std::ostringstream out;
    out << min_exp;
    for (const auto& c : coeffs) out << " " << c.str();
    return out.str();
}

LaurentPoly LaurentPoly::parse(const std::string& line) {
    std::istringstream in(line);
    LaurentPoly r;
    if (!(in >> r.min_exp)) throw std::invalid_argument("LaurentPoly::parse: empty input");
    std::string tok;
    while (in >> tok) r.coeffs.emplace_back(tok);
    r.trim();
    return r;
}

}  // namespace legrid
