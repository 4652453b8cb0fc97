#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace legrid {

// A vertex of a grid diagram on the n x n toroidal lattice. Columns and rows
// are counted from 0; sign is +1 or -1. Vertical edges run from the positive
// vertex of a column to the negative one, horizontal edges from the negative
// vertex of a row to the positive one.
struct Vertex {
    int col = 0;
    int row = 0;
    int sign = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class GridErrorCode {
    BadSize,
    LineCardinality,
    SignClash,
    NotAKnot,
    BadInput,
};

class GridError : public std::runtime_error {
public:
    GridError(GridErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    GridErrorCode code() const { return code_; }

private:
    GridErrorCode code_;
};

// Compact key identifying a diagram up to toroidal translation. Comparable and
// hashable; equal keys mean equal diagrams up to translation.
using CanonicalKey = std::string;

struct CanonicalKeyHash {
    size_t operator()(const CanonicalKey& k) const {
        return std::hash<std::string>{}(k);
    }
};

class UnorientedGridDiagram;

// An oriented grid diagram of a link. Immutable once built. Every column and
// every row contains exactly two vertices of opposite signs; empty lines are
// compacted away on construction, so size() always equals the number of
// occupied columns (= occupied rows).
class GridDiagram {
public:
    GridDiagram() = default;

    // Builds a diagram from a vertex list. Levels may be sparse (e.g. after a
    // move in doubled coordinates); they are compacted. Throws GridError if a
    // line does not carry exactly two vertices of opposite signs, or if
    // require_knot is set and the diagram has more than one component.
    static GridDiagram from_vertices(std::vector<Vertex> verts,
                                     bool require_knot = false);

    int size() const { return n_; }
    const std::vector<Vertex>& vertices() const { return verts_; }

    // The two vertices in a column (sorted by row) or row (sorted by column).
    std::array<Vertex, 2> column(int c) const;
    std::array<Vertex, 2> row(int r) const;

    // Sign at a lattice point: +1, -1, or 0 if unoccupied.
    int sign_at(int c, int r) const;
    bool occupied(int c, int r) const { return sign_at(c, r) != 0; }

    int component_count() const;
    bool is_knot() const { return component_count() == 1; }

    // Vertices of one component in traversal order, alternating vertical and
    // horizontal edges, starting from the component's lexicographically least
    // vertex along its vertical edge.
    std::vector<Vertex> component_cycle(int which = 0) const;
    std::vector<std::vector<Vertex>> components() const;

    GridDiagram reversed() const;   // reverse orientation: flip all signs
    GridDiagram flip_cols() const;  // (c, r) -> (n-1-c, r)
    GridDiagram flip_rows() const;  // (c, r) -> (c, n-1-r)
    GridDiagram rotate180() const;  // both flips
    GridDiagram translated(int dc, int dr) const;

    // Lexicographically least translate and its encoding.
    GridDiagram canonical_form() const;
    CanonicalKey canonical_key() const;

    UnorientedGridDiagram unoriented() const;

    friend bool operator==(const GridDiagram& a, const GridDiagram& b) {
        return a.n_ == b.n_ && a.verts_ == b.verts_;
    }

private:
    int n_ = 0;
    std::vector<Vertex> verts_;  // sorted by (col, row)
    // per-column and per-row vertex indices, two each
    std::vector<std::array<int, 2>> by_col_, by_row_;

    void build_index();
};

// Diagrams are translation-equivalent (same canonical key).
bool equivalent(const GridDiagram& a, const GridDiagram& b);

// An unoriented grid diagram: two vertices per line, no signs.
class UnorientedGridDiagram {
public:
    UnorientedGridDiagram() = default;
    static UnorientedGridDiagram from_points(
        std::vector<std::pair<int, int>> pts);

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& points() const { return pts_; }

    int component_count() const;

    // Chooses an orientation: each component is traversed starting from its
    // least vertex, which becomes positive.
    GridDiagram orient() const;

    CanonicalKey canonical_key() const;

    friend bool operator==(const UnorientedGridDiagram&,
                           const UnorientedGridDiagram&) = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> pts_;  // sorted
};

}  // namespace legrid
