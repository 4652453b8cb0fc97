#pragma once

#include "legrid/laurent.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace legrid {

enum class SymmetryErrorCode {
    NonIntegerValue,  // input polynomial is not symmetric / not integrally evaluable
    NotSquarefree,    // polynomial has a repeated factor mod q
    NoConvergence,    // numeric root finder failed its residual test
    BadInput,
};

class SymmetryError : public std::runtime_error {
public:
    SymmetryError(SymmetryErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    SymmetryErrorCode code() const { return code_; }

private:
    SymmetryErrorCode code_;
};

// ---------------------------------------------------------------------------
// Murasugi's mod-p conditions for a knot with cyclic period p.

enum class MurasugiKind {
    PthPower,          // mod p, the polynomial lies in Z[t^p] up to a monomial
    CyclotomicFactor,  // (1 + t + ... + t^d)^(p-1) divides it mod p
    Obstructed,        // neither holds: the knot has no cyclic period p
};

struct MurasugiResult {
    MurasugiKind kind = MurasugiKind::Obstructed;
    int d = 0;  // witness degree for CyclotomicFactor, otherwise 0
};

// p must be prime.  Works with the polynomial mod p, ignoring monomial units.
MurasugiResult murasugi_test(const LaurentPoly& delta, int p);

// ---------------------------------------------------------------------------
// Integer values of a symmetric Laurent polynomial on the upper unit circle.

// Values at t = exp(i*theta) for theta = 0, pi/3, pi/2, 2*pi/3, pi.  A
// symmetric polynomial takes integer values there; anything else throws
// SymmetryError(NonIntegerValue).
std::array<BigInt, 5> special_values(const LaurentPoly& delta);

// ---------------------------------------------------------------------------
// Self-reciprocal polynomials ell with prescribed divisor values.

struct EllOption {
    std::array<long long, 5> a;  // target values at the five sample angles
    std::array<long long, 5> x;  // coefficients: x0 + sum_k x_k (t^k + t^-k)
    LaurentPoly ell;             // the same data as a degree <= 8 polynomial

    friend bool operator==(const EllOption&, const EllOption&) = default;
};

// All sign-and-divisor choices a (a_j ranges over +-divisors of values[j])
// for which the interpolation problem ell(exp(i*theta_j)) = a_j has an
// integer solution.  Values must be nonzero and word-sized.
std::vector<EllOption> ell_enumerate(const std::array<BigInt, 5>& values);

// ---------------------------------------------------------------------------
// Power-sum search for monic integer polynomials of degree 20.

struct NewtonSolution {
    std::array<int, 5> p;  // prescribed power sums p_1..p_5
    std::array<int, 5> c;  // resulting coefficients c_1..c_5 (Newton's identities)

    friend bool operator==(const NewtonSolution&, const NewtonSolution&) = default;
};

// Count (and optionally collect) all p in [-bound, bound]^5 for which
// Newton's identities give integer c_1..c_5.  Deterministic in the order
// p_1, ..., p_5 ascending, independent of the number of worker threads.
std::uint64_t newton_search(int bound, int jobs = 1, std::vector<NewtonSolution>* out = nullptr);

// ---------------------------------------------------------------------------
// Degree-20 candidate assembly and the root-radius elimination.

// Candidate polynomial f (ascending coefficients, degree exactly 20): monic,
// self-reciprocal, f(0) = 1, with f_k = c_k for k <= 5 and the middle
// coefficients shifted by ell.
std::array<long long, 21> build_candidate(const EllOption& ell, const NewtonSolution& ns);

// Ceilings m_k = floor(20 * (3/2)^(k/101)) computed exactly; index k, entry 0 unused.
std::vector<long long> violation_ceilings(int k_max);

// Power sums of the roots of f via Newton's identities; index k, entry 0 = 20.
std::vector<long long> power_sums(const std::array<long long, 21>& f, int k_max);

// Smallest k <= k_max with |p_k| > m_k, or 0 when none: 0 means the candidate
// survives, i.e. its power sums are consistent with all 20 roots lying in the
// closed disk of radius (3/2)^(1/101).
int first_violation(const std::array<long long, 21>& f, int k_max = 31);

struct EliminationReport {
    std::uint64_t total = 0;
    std::uint64_t eliminated = 0;
    std::map<int, std::uint64_t> first_violation_histogram;
    struct Survivor {
        std::size_t ell_index;
        NewtonSolution ns;
    };
    std::vector<Survivor> survivors;
};

// Check every (ell option, power-sum solution) pair.  Deterministic merge:
// the histogram and survivor list do not depend on jobs.
EliminationReport eliminate_candidates(const std::vector<EllOption>& opts,
                                       const std::vector<NewtonSolution>& sols, int k_max = 31,
                                       int jobs = 1);

// ---------------------------------------------------------------------------
// Factorization patterns over small prime fields.

// Rabin's irreducibility test for the image of f mod q (q prime).  Throws
// SymmetryError(NotSquarefree) when gcd(f, f') is nontrivial mod q.
bool rabin_irreducible_mod_q(const LaurentPoly& f, std::uint32_t q);

// Degrees of the irreducible factors of f mod q, ascending (with multiplicity
// it would not be well defined: throws NotSquarefree on repeated factors).
std::vector<int> factor_degrees_mod_q(const LaurentPoly& f, std::uint32_t q);

// Degrees of the irreducible factors of f(t^p) mod q, computed from the
// factors of f mod q and the order of q^d mod p -- no large factorization.
// Requires p prime, q prime, q != p, f squarefree mod q.
std::vector<int> factor_degrees_power_substitution(const LaurentPoly& f, int p, std::uint32_t q);

// True when no subset of `degrees` sums to `target` (empty subset counts only
// for target 0).  Used as the factorization obstruction: a degree-`target`
// integer factor would reduce mod q to a subset of the irreducible factors.
bool no_subset_sums_to(const std::vector<int>& degrees, int target);

// ---------------------------------------------------------------------------
// Numeric roots.

// All complex roots of the polynomial part of f (monomial units stripped),
// by the Durand-Kerner iteration.  Residuals are verified to relative
// tolerance 1e-6; failure throws SymmetryError(NoConvergence).
std::vector<std::complex<double>> polynomial_roots(const LaurentPoly& f);

// True when every root has modulus at most radius - 1e-6.
bool roots_in_disk(const LaurentPoly& f, double radius);

// ---------------------------------------------------------------------------
// Aggregate period report.

struct FreePeriodOptions {
    int q_limit = 2500;         // scan moduli q up to this bound
    int k_max = 31;             // power-sum horizon for the elimination
    bool run_elimination = true;
    int jobs = 1;
};

enum class PeriodVerdict {
    AllPeriodsExcluded,  // every prime period, cyclic or free, is ruled out
    Unknown,             // at least one prime could not be ruled out
    NotApplicable,       // trivial polynomial carries no information
};

struct FreePeriodReport {
    struct MurasugiEntry {
        int p;
        MurasugiResult result;
    };
    struct SmallPeriodEntry {
        int p;
        int certificate_q = 0;           // modulus of the blocking pattern, 0 = none found
        std::vector<int> factor_degrees; // factor degrees of delta(t^p) mod certificate_q
        bool fully_irreducible = false;  // the pattern is one factor of full degree
        bool excluded = false;
    };
    struct LargePeriodSection {
        bool ran = false;
        std::string skip_reason;
        std::uint64_t candidates = 0;
        std::uint64_t eliminated = 0;
        std::uint64_t survivors = 0;
        std::map<int, std::uint64_t> first_violation_histogram;
        bool excluded = false;
    };

    // Cyclic periods: Murasugi's conditions per prime p <= span + 1; every
    // larger prime is obstructed by degree alone.
    std::vector<MurasugiEntry> murasugi;
    bool murasugi_all_obstructed = false;
    // Free periods p < 100: factorization patterns of delta(t^p) mod q.
    std::vector<SmallPeriodEntry> small_periods;
    // Free periods p > 100: power-sum elimination of all degree-20 candidates.
    LargePeriodSection large_periods;

    PeriodVerdict verdict = PeriodVerdict::Unknown;
    std::vector<int> unexcluded;  // primes not ruled out by any section
    std::string note;
};

FreePeriodReport free_period_report(const LaurentPoly& delta, const FreePeriodOptions& opts = {});

}  // namespace legrid
