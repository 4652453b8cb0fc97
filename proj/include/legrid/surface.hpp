#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "legrid/grid.hpp"
#include "legrid/moves.hpp"

namespace legrid {

enum class SurfaceErrorCode {
    BadInput,            // malformed rectangle or grid size
    IncompatiblePair,    // two rectangles intersect in a forbidden pattern
    FreeVertexOverflow,  // more than two free vertices on one line
    NotStaircase,        // annulus slide asked of a non-staircase diagram
};

class SurfaceError : public std::runtime_error {
public:
    SurfaceError(SurfaceErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    SurfaceErrorCode code() const { return code_; }

private:
    SurfaceErrorCode code_;
};

// A closed axis-parallel rectangle [th1;th2] x [ph1;ph2] on the m x m
// toroidal grid. An interval [a;b] is the closed cyclic arc running
// counterclockwise from level a to level b, so the order of the bounds
// matters and the arc may wrap; a == b is not allowed. The four vertices
// are the products of the interval endpoints.
struct SurfaceRect {
    int th1 = 0, th2 = 0;  // meridian levels bounding the theta interval
    int ph1 = 0, ph2 = 0;  // longitude levels bounding the phi interval

    friend bool operator==(const SurfaceRect&, const SurfaceRect&) = default;
    friend auto operator<=>(const SurfaceRect&, const SurfaceRect&) = default;
};

// A surface is presented by pairwise compatible rectangles; a vertex is
// free when it belongs to exactly one rectangle, and every meridian and
// longitude carries at most two free vertices. Built by validate_surface
// (or special_surface); the operations below assume a validated diagram.
struct SurfaceDiagram {
    int m = 0;                       // grid size (levels per direction)
    std::vector<SurfaceRect> rects;  // as given; indices name the rectangles
};

// Decides whether two rectangles may coexist in one surface diagram: their
// intersection must be empty, a set of common vertices, or a single
// rectangle that avoids the vertices of both (the transversal overlap of
// two patches whose interiors pass each other).
bool compatible(const SurfaceRect& a, const SurfaceRect& b, int m);

// Checks all invariants and returns the diagram. Throws SurfaceError with
// code BadInput (degenerate rectangle, level out of range),
// IncompatiblePair, or FreeVertexOverflow.
SurfaceDiagram validate_surface(std::vector<SurfaceRect> rects, int m);

// Vertices belonging to exactly one rectangle, sorted by (theta, phi).
std::vector<std::pair<int, int>> free_vertices(const SurfaceDiagram& pi);

// The free vertices as an unoriented link diagram after level compaction.
// A closed surface (no free vertices) yields the empty diagram.
UnorientedGridDiagram boundary(const SurfaceDiagram& pi);

// How two rectangles share a corner: Ascending when the second sits to the
// upper right (first's top-right vertex is the second's bottom-left),
// Descending when it sits to the lower right (first's bottom-right vertex
// is the second's top-left).
enum class DividingRelation { Ascending, Descending };

// All ordered corner-sharing pairs of a diagram. Two diagrams carry the
// same code when some bijection of their rectangles preserves both
// relations exactly.
struct DividingCode {
    struct Entry {
        int a = 0, b = 0;
        DividingRelation rel = DividingRelation::Ascending;

        friend bool operator==(const Entry&, const Entry&) = default;
        friend auto operator<=>(const Entry&, const Entry&) = default;
    };

    int size = 0;                 // number of rectangles
    std::vector<Entry> entries;   // sorted by (a, b, rel)

    friend bool operator==(const DividingCode&, const DividingCode&) = default;
};

DividingCode dividing_code(const SurfaceDiagram& pi);

// True when a relation-preserving bijection exists between the rectangle
// sets of the two codes (directed graph isomorphism with two edge colors;
// color refinement plus backtracking).
bool codes_equivalent(const DividingCode& a, const DividingCode& b);

// Builds a surface diagram whose boundary contains the given link diagram R,
// on the 7x-refined grid (level x of R becomes level 7x; the six auxiliary
// levels 7x+1 .. 7x+6 subdivide the gap). The construction lays a narrow
// band along the edges of R, removes the squares where the band crosses
// itself, and then toggles two full meridian strips per column and two full
// longitude strips per row; the resulting region is cut into its maximal
// rectangles, which are validated and returned.
SurfaceDiagram special_surface(const GridDiagram& R);

// The boundary slide across a staircase annulus. The input must consist of
// rectangles r_1, ..., r_2k (k >= 2, any listing order) forming one cycle
// in which the intersection of consecutive rectangles is exactly the
// bottom-left vertex of the later one; non-consecutive rectangles may still
// cross transversally (the annulus can be knotted). The boundary
// then has two components, and the returned sequence of 2k elementary
// moves -- a type II stabilization, 2k-2 exchanges, and a type II
// destabilization -- carries one component across the annulus onto a
// parallel copy of the other. Each move is recorded against the diagram it
// is applied to; replaying them from `start` yields `result`, whose two
// components are combinatorially equivalent.
struct AnnulusSlide {
    GridDiagram start;                  // oriented boundary of the annulus
    std::vector<ClassifiedMove> moves;  // 2k moves in application order
    GridDiagram result;                 // diagram after the last move
};

AnnulusSlide slide_annulus_boundary(const SurfaceDiagram& pi);

}  // namespace legrid
