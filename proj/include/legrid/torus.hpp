#pragma once

#include "legrid/grid.hpp"
#include "legrid/laurent.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace legrid {

enum class TorusErrorCode {
    DimensionUnsupported,  // nonnegative-ray analysis implemented for dim <= 3
    BadInput,
};

class TorusError : public std::runtime_error {
public:
    TorusError(TorusErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    TorusErrorCode code() const { return code_; }

private:
    TorusErrorCode code_;
};

// A rectangle type on the n x n torus: a rectangle with corners avoiding the
// grid lines, recorded by the unit cells (i;i+1) x (j;j+1) and (k;k+1) x
// (l;l+1) that hold its two corners.  Every rectangle of this type crosses
// exactly the columns {i+1..k} and the rows {j+1..l}, both read cyclically.
struct RectType {
    int i, j, k, l;

    friend bool operator==(const RectType&, const RectType&) = default;
    friend auto operator<=>(const RectType&, const RectType&) = default;
};

// True when no vertex of the diagram lies on a crossed column and a crossed
// row simultaneously.  When the column (or row) range wraps the full circle
// -- i == k, or more generally both corners in the same cell -- every column
// (row) counts as crossed, so such types are inadmissible on any diagram.
bool admissible(const UnorientedGridDiagram& g, const RectType& t);

// All admissible types none of whose four one-cell enlargements
// (i-1,j,k,l), (i,j-1,k,l), (i,j,k+1,l), (i,j,k,l+1) is admissible, in
// lexicographic order.  Cyclic prefix sums answer each admissibility query
// in O(1), so the scan is O(n^4) overall.
std::vector<RectType> maximal_types(const UnorientedGridDiagram& g);

struct SparseIntMatrix {
    int rows = 0, cols = 0;
    struct Entry {
        int row, col;
        long long value;
    };
    std::vector<Entry> entries;
};

// One balance equation per torus cell (i,j), row index i*n + j, one variable
// per type.  In a closed tiling every rectangle corner is shared by exactly
// two rectangles that are otherwise disjoint, which forces the other
// rectangle to hold the point as the opposite kind of corner: bottom-left
// pairs with top-right and bottom-right with top-left.  Either way one
// bottom corner meets one top corner, so per cell the bottom corners and
// the top corners balance.  A type (i,j,k,l) therefore contributes +1 in
// the cells (i,j) and (k,j) holding its bottom corners and -1 in the cells
// (i,l) and (k,l) holding its top corners, all four distinct.
SparseIntMatrix matching_system(int n, const std::vector<RectType>& types);

struct RankKernel {
    int rank = 0;
    // Integer kernel basis: one vector per free column, content 1, first
    // nonzero entry positive.
    std::vector<std::vector<BigInt>> kernel;
};

// Exact rank and kernel via fraction-free elimination.  Word-sized arithmetic
// with overflow detection, falling back to arbitrary precision.
RankKernel rank_kernel(const SparseIntMatrix& m);

// Extreme rays of the cone {x in span(basis) : x >= 0}, as integer vectors of
// content 1, lexicographically sorted.  The cone is pointed (it lies in the
// nonnegative orthant), so its extreme rays determine it.  Spans of dimension
// up to 3 are supported; beyond that TorusError(DimensionUnsupported).
std::vector<std::vector<BigInt>> nonneg_rays(const std::vector<std::vector<BigInt>>& basis);

enum class TorusConclusion {
    NoEssentialTorusCandidates,  // the cone is trivial: no candidate surface
    SingleRay,                   // at most one candidate class
    MultiRay,                    // several candidate classes remain
};

struct Certificate {
    int n_maximal = 0;
    int rank = 0;
    int kernel_dim = 0;
    std::vector<std::vector<BigInt>> rays;
    TorusConclusion conclusion = TorusConclusion::NoEssentialTorusCandidates;
};

// Full pipeline: maximal types, matching system, exact kernel, nonnegative
// rays.  The counts of a closed torus-like surface built from rectangles must
// form a nonnegative solution, so SingleRay bounds the candidate classes by
// one and an empty cone leaves none at all.
Certificate certify(const UnorientedGridDiagram& g);

}  // namespace legrid
