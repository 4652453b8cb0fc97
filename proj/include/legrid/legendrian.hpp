#pragma once

#include <cstddef>
#include <string>

#include "legrid/grid.hpp"
#include "legrid/moves.hpp"

namespace legrid {

// Each grid diagram of a knot determines two Legendrian front projections:
// rotate the planar picture slightly counterclockwise (side +) or clockwise
// (side -) and smooth the corners. Two of the four corner shapes become cusps,
// the other two become smooth bends.
enum class Side { Plus, Minus };

struct FrontInvariants {
    int writhe = 0;
    int crossings = 0;
    int cusps_up = 0;
    int cusps_down = 0;
    int tb = 0;  // writhe - (cusps_up + cusps_down) / 2
    int r = 0;   // (cusps_down - cusps_up) / 2
};

// Requires a knot diagram.
FrontInvariants front_data(const GridDiagram& g, Side side);
std::pair<int, int> tb_r(const GridDiagram& g, Side side);

// SVG picture of the rotated front, under-strand broken at each crossing.
std::string front_svg(const GridDiagram& g, Side side);

struct DecideOptions {
    size_t node_budget = 200000;   // states explored per side of the search
    int extra_levels = 2;          // how far above max(n1, n2) sizes may grow
    bool assume_trivial_symmetry = false;
    size_t exchange_budget = 200000;
};

struct SideDecision {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    int tb_a = 0, r_a = 0, tb_b = 0, r_b = 0;
    size_t explored = 0;
};

struct LegendrianDecision {
    SideDecision plus, minus;
};

// Decides, per side, whether two knot diagrams represent the same Legendrian
// class. Invariant mismatches give an unconditional NotEquivalent. Otherwise
// a meet-in-the-middle search looks for a diagram reachable from a through
// exchanges and stabilizations of the class-preserving type for this side,
// and from b through those of the other type; its exchange class is then
// compared with b's. A negative exchange answer yields NotEquivalent only
// under assume_trivial_symmetry, else Unknown.
LegendrianDecision decide_legendrian_pair(const GridDiagram& a,
                                          const GridDiagram& b,
                                          const DecideOptions& opts = {});

}  // namespace legrid
