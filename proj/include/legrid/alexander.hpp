#pragma once

#include "legrid/grid.hpp"
#include "legrid/laurent.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace legrid {

enum class AlexanderErrorCode {
    NormalizationFailure,  // determinant did not reduce to a symmetric unit polynomial
    LengthMismatch,        // code comparison on sequences of different lengths
    BadInput,
};

class AlexanderError : public std::runtime_error {
public:
    AlexanderError(AlexanderErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    AlexanderErrorCode code() const { return code_; }

private:
    AlexanderErrorCode code_;
};

// One crossing of the projected knot.  The vertical strand is the over-strand.
// Arcs are the pieces of the knot between consecutive under-passes, numbered
// in traversal order; arc j starts at under-pass j.
struct Crossing {
    int sign = 0;          // +1 or -1
    int over_arc = 0;      // arc running over the crossing
    int under_in_arc = 0;  // arc ending at the crossing
    int under_out_arc = 0; // arc starting at the crossing
};

// A pass through one crossing during the traversal of the knot.
struct CrossingPass {
    int crossing = 0;
    bool over = false;
};

struct PlanarDiagram {
    int arc_count = 0;
    std::vector<Crossing> crossings;
    // All 2 * crossings.size() passes in traversal order.
    std::vector<CrossingPass> walk;
};

// Reads the crossings of the drawn picture off a one-component grid diagram.
PlanarDiagram planar_diagram(const GridDiagram& g);

struct AlexanderOptions {
    // Two distinct word-sized primes used for the modular determinant
    // evaluations; the results must agree after reconstruction.
    std::uint64_t prime_a = 2305843009213693951ULL;   // 2^61 - 1
    std::uint64_t prime_b = 9223372036854775783ULL;   // largest prime below 2^63
    int jobs = 1;  // worker threads for the evaluation points
};

// Alexander polynomial, normalized so that it is symmetric under t -> 1/t and
// has value 1 at t = 1.  Throws AlexanderError(NormalizationFailure) when the
// computed determinant cannot be brought to that shape.
LaurentPoly alexander_poly(const GridDiagram& g, const AlexanderOptions& opts = {});
LaurentPoly alexander_poly(const PlanarDiagram& pd, const AlexanderOptions& opts = {});

// Dowker-Thistlethwaite code: traverse the knot, label the passes 1..2c
// starting at walk position `start` (reversed direction if `reverse`), pair
// the two labels of each crossing as (odd, even) and list the even labels in
// order of their odd partners 1, 3, 5, ...  An even label is negated exactly
// when its pass is the over-pass.
std::vector<int> dt_export(const PlanarDiagram& pd, int start = 0, bool reverse = false);
std::vector<int> dt_export(const GridDiagram& g, int start = 0, bool reverse = false);

// The codes produced by all 2c starting positions in both directions.
std::vector<std::vector<int>> dt_variants(const PlanarDiagram& pd);

// True when a and b present the same code up to starting position, direction,
// and a global sign flip.  Throws AlexanderError(LengthMismatch) when the
// lengths differ; malformed sequences simply never match.
bool dt_match(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace legrid
