#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace legrid {

using BigInt = boost::multiprecision::cpp_int;

// Integer Laurent polynomial in one variable t.  coeffs[i] is the coefficient
// of t^(min_exp + i).  The representation is kept trimmed: the first and last
// coefficients are nonzero, and the zero polynomial is the empty list (with
// min_exp = 0).
struct LaurentPoly {
    int min_exp = 0;
    std::vector<BigInt> coeffs;

    LaurentPoly() = default;
    LaurentPoly(long long constant);
    LaurentPoly(int min_exponent, std::vector<BigInt> ascending);

    // t^e with coefficient 1.
    static LaurentPoly monomial(int e);

    bool is_zero() const { return coeffs.empty(); }
    // Exponents of the lowest / highest nonzero term; zero polynomial has none.
    int low() const { return min_exp; }
    int high() const { return min_exp + static_cast<int>(coeffs.size()) - 1; }
    // high - low for a nonzero polynomial, -1 for zero.
    int span() const { return static_cast<int>(coeffs.size()) - 1; }
    BigInt coeff(int e) const;

    // Drops zero coefficients at both ends so the invariant holds again.
    void trim();

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const = default;

    // Multiplication by t^k.
    LaurentPoly shifted(int k) const;
    // t -> 1/t.
    LaurentPoly reciprocal() const;
    // t -> t^p (p >= 1).
    LaurentPoly compose_power(int p) const;
    // Exact value at an integer argument; negative exponents require x = +-1.
    BigInt eval_int(const BigInt& x) const;

    // True when the polynomial equals its own reciprocal (t -> 1/t mirror).
    bool self_reciprocal() const;

    // Human-readable form, highest power first, e.g. "t^2 - t + 1".
    std::string to_string() const;

    // One-line form "min_exp c0 c1 ... ck" and its inverse.
    std::string serialize() const;
    static LaurentPoly parse(const std::string& line);
};

}  // namespace legrid
