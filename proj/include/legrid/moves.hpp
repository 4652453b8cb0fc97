#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "legrid/grid.hpp"

namespace legrid {

enum class MoveKind { Exchange, Stabilization, Destabilization };

// Stabilizations and destabilizations come in two types and two directions.
// Type I moves preserve the contact class on one side, type II on the other;
// the arrow records which way the lone vertex of the small square points.
enum class StabType { None, I, II };
enum class StabArrow { None, Left, Right };

// An elementary move is recorded in doubled coordinates of the diagram it is
// applied to: level i of the source diagram sits at 2*i, the gap between
// levels i and i+1 (cyclically) at 2*i+1. The move toggles the four corner
// points {col_a, col_b} x {row_a, row_b}; both diagrams must be valid and the
// interchange rectangle spanned by one pair of complementary arcs must be
// clean. This covers exchanges (2 vertices out, 2 in), stabilizations
// (1 out, 3 in) and destabilizations (3 out, 1 in).
struct ElementaryMove {
    int col_a = 0, col_b = 0;
    int row_a = 0, row_b = 0;

    friend bool operator==(const ElementaryMove&,
                           const ElementaryMove&) = default;
};

struct ClassifiedMove {
    ElementaryMove move;
    MoveKind kind = MoveKind::Exchange;
    StabType type = StabType::None;
    StabArrow arrow = StabArrow::None;
};

enum class MoveErrorCode {
    BadCorners,       // degenerate corner set
    NoEdge,           // symmetric difference carries no edge of either diagram
    DirtyRectangle,   // every interchange rectangle meets other vertices
    SignClash,        // no consistent signs for the new vertices
    InvalidDiagram,   // result violates the two-per-line rule
    SplitsLink,       // result changes the number of components
};

class MoveError : public std::runtime_error {
public:
    MoveError(MoveErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    MoveErrorCode code() const { return code_; }

private:
    MoveErrorCode code_;
};

// Applies a move; throws MoveError if it is illegal. With require_same_components
// the move must preserve the number of components (always true for
// stabilizations and destabilizations, not for exchanges).
GridDiagram apply_move(const GridDiagram& g, const ElementaryMove& m,
                       bool require_same_components = true);

// Classification of a legal move (throws MoveError on an illegal one).
ClassifiedMove classify_move(const GridDiagram& g, const ElementaryMove& m);

struct MoveFilter {
    bool exchanges = true;
    bool stabilizations = true;
    bool destabilizations = true;
    StabType type = StabType::None;  // None = both types
};

// All legal moves on g that preserve the number of components.
std::vector<ClassifiedMove> enumerate_moves(const GridDiagram& g,
                                            const MoveFilter& filter = {});

// Convenience wrappers used by the search routines.
std::vector<ClassifiedMove> enumerate_exchanges(const GridDiagram& g);

enum class Verdict { Equivalent, NotEquivalent, Unknown };

struct ExchangeClassResult {
    std::vector<GridDiagram> members;  // canonical forms, search order
    bool complete = false;             // false if the budget cut the search
};

// Breadth-first closure of g under exchange moves, up to translation.
ExchangeClassResult exchange_class(const GridDiagram& g,
                                   size_t max_members = 100000);

struct ExchangeDecision {
    Verdict verdict = Verdict::Unknown;
    size_t explored = 0;
    bool complete = false;
};

// Decides whether two diagrams are connected by exchange moves. Runs a
// bidirectional search; NotEquivalent requires both classes to be fully
// enumerated within the budget.
ExchangeDecision exchange_equivalent(const GridDiagram& a,
                                     const GridDiagram& b,
                                     size_t max_members = 100000);

// True if every legal exchange on g yields a translate of g.
bool is_rigid(const GridDiagram& g);

}  // namespace legrid
