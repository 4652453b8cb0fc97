#include "legrid/grid.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace legrid {

namespace {

// Compacts sparse levels to 0..k-1 in order. Returns the number of levels.
template <typename T, typename Get, typename Set>
int compact_axis(std::vector<T>& items, Get get, Set set) {
    std::vector<int> levels;
    levels.reserve(items.size());
    for (const auto& it : items) levels.push_back(get(it));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (auto& it : items) {
        int idx = int(std::lower_bound(levels.begin(), levels.end(), get(it)) -
                      levels.begin());
        set(it, idx);
    }
    return int(levels.size());
}

}  // namespace

GridDiagram GridDiagram::from_vertices(std::vector<Vertex> verts,
                                       bool require_knot) {
    if (verts.empty())
        throw GridError(GridErrorCode::BadSize, "empty vertex list");
    for (const auto& v : verts)
        if (v.sign != 1 && v.sign != -1)
            throw GridError(GridErrorCode::BadInput,
                            "vertex sign must be +1 or -1");

    int ncols = compact_axis(
        verts, [](const Vertex& v) { return v.col; },
        [](Vertex& v, int c) { v.col = c; });
    int nrows = compact_axis(
        verts, [](const Vertex& v) { return v.row; },
        [](Vertex& v, int r) { v.row = r; });
    if (ncols != nrows)
        throw GridError(GridErrorCode::LineCardinality,
                        "occupied column and row counts differ");

    GridDiagram g;
    g.n_ = ncols;
    g.verts_ = std::move(verts);
    std::sort(g.verts_.begin(), g.verts_.end(),
              [](const Vertex& a, const Vertex& b) {
                  return std::tie(a.col, a.row) < std::tie(b.col, b.row);
              });
    for (size_t i = 1; i < g.verts_.size(); ++i)
        if (g.verts_[i - 1].col == g.verts_[i].col &&
            g.verts_[i - 1].row == g.verts_[i].row)
            throw GridError(GridErrorCode::BadInput, "duplicate vertex");
    g.build_index();
    if (require_knot && g.component_count() != 1)
        throw GridError(GridErrorCode::NotAKnot,
                        "diagram has more than one component");
    return g;
}

void GridDiagram::build_index() {
    by_col_.assign(n_, {-1, -1});
    by_row_.assign(n_, {-1, -1});
    auto put = [](std::array<int, 2>& slot, int idx, const char* what) {
        if (slot[0] < 0)
            slot[0] = idx;
        else if (slot[1] < 0)
            slot[1] = idx;
        else
            throw GridError(GridErrorCode::LineCardinality,
                            std::string(what) + " has more than two vertices");
    };
    for (int i = 0; i < int(verts_.size()); ++i) {
        put(by_col_[verts_[i].col], i, "column");
        put(by_row_[verts_[i].row], i, "row");
    }
    for (int c = 0; c < n_; ++c) {
        if (by_col_[c][1] < 0)
            throw GridError(GridErrorCode::LineCardinality,
                            "column has fewer than two vertices");
        if (verts_[by_col_[c][0]].sign + verts_[by_col_[c][1]].sign != 0)
            throw GridError(GridErrorCode::SignClash,
                            "column vertices must have opposite signs");
    }
    for (int r = 0; r < n_; ++r) {
        if (by_row_[r][1] < 0)
            throw GridError(GridErrorCode::LineCardinality,
                            "row has fewer than two vertices");
        if (verts_[by_row_[r][0]].sign + verts_[by_row_[r][1]].sign != 0)
            throw GridError(GridErrorCode::SignClash,
                            "row vertices must have opposite signs");
    }
    // by_row_ entries sorted by column already (verts_ sorted by col first);
    // sort by_col_ entries by row.
    for (auto& slot : by_col_)
        if (verts_[slot[0]].row > verts_[slot[1]].row)
            std::swap(slot[0], slot[1]);
}

std::array<Vertex, 2> GridDiagram::column(int c) const {
    return {verts_[by_col_[c][0]], verts_[by_col_[c][1]]};
}

std::array<Vertex, 2> GridDiagram::row(int r) const {
    return {verts_[by_row_[r][0]], verts_[by_row_[r][1]]};
}

int GridDiagram::sign_at(int c, int r) const {
    if (c < 0 || c >= n_ || r < 0 || r >= n_) return 0;
    for (int idx : by_col_[c]) {
        const Vertex& v = verts_[idx];
        if (v.row == r) return v.sign;
    }
    return 0;
}

std::vector<std::vector<Vertex>> GridDiagram::components() const {
    std::vector<bool> seen(verts_.size(), false);
    std::vector<std::vector<Vertex>> out;
    for (size_t start = 0; start < verts_.size(); ++start) {
        if (seen[start]) continue;
        // Walk vertical edge first, then horizontal, alternating.
        std::vector<Vertex> cyc;
        int cur = int(start);
        bool vertical = true;
        do {
            seen[cur] = true;
            cyc.push_back(verts_[cur]);
            const Vertex& v = verts_[cur];
            const auto& slot = vertical ? by_col_[v.col] : by_row_[v.row];
            cur = (slot[0] == cur) ? slot[1] : slot[0];
            vertical = !vertical;
        } while (cur != int(start));
        out.push_back(std::move(cyc));
    }
    return out;
}

int GridDiagram::component_count() const { return int(components().size()); }

std::vector<Vertex> GridDiagram::component_cycle(int which) const {
    auto comps = components();
    if (which < 0 || which >= int(comps.size()))
        throw GridError(GridErrorCode::BadInput, "no such component");
    return comps[which];
}

GridDiagram GridDiagram::reversed() const {
    auto vs = verts_;
    for (auto& v : vs) v.sign = -v.sign;
    return from_vertices(std::move(vs));
}

GridDiagram GridDiagram::flip_cols() const {
    auto vs = verts_;
    for (auto& v : vs) v.col = n_ - 1 - v.col;
    return from_vertices(std::move(vs));
}

GridDiagram GridDiagram::flip_rows() const {
    auto vs = verts_;
    for (auto& v : vs) v.row = n_ - 1 - v.row;
    return from_vertices(std::move(vs));
}

GridDiagram GridDiagram::rotate180() const { return flip_cols().flip_rows(); }

GridDiagram GridDiagram::translated(int dc, int dr) const {
    auto vs = verts_;
    for (auto& v : vs) {
        v.col = ((v.col + dc) % n_ + n_) % n_;
        v.row = ((v.row + dr) % n_ + n_) % n_;
    }
    return from_vertices(std::move(vs));
}

namespace {

// Encoding of a diagram translated by (dc, dr): for each column in order, the
// two (row, sign) pairs, rows ascending. 16-bit rows keep keys short.
void encode_translate(const GridDiagram& g, int dc, int dr, std::string& out) {
    int n = g.size();
    out.clear();
    out.push_back(char(n & 0xff));
    out.push_back(char((n >> 8) & 0xff));
    for (int c = 0; c < n; ++c) {
        int src = ((c - dc) % n + n) % n;
        auto pair = g.column(src);
        int r0 = (pair[0].row + dr) % n, s0 = pair[0].sign;
        int r1 = (pair[1].row + dr) % n, s1 = pair[1].sign;
        if (r0 > r1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
        }
        out.push_back(char(r0 & 0xff));
        out.push_back(char((r0 >> 8) & 0xff));
        out.push_back(char(s0 > 0 ? 1 : 0));
        out.push_back(char(r1 & 0xff));
        out.push_back(char((r1 >> 8) & 0xff));
        out.push_back(char(s1 > 0 ? 1 : 0));
    }
}

}  // namespace

CanonicalKey GridDiagram::canonical_key() const {
    std::string best, cur;
    for (int dc = 0; dc < n_; ++dc)
        for (int dr = 0; dr < n_; ++dr) {
            encode_translate(*this, dc, dr, cur);
            if (best.empty() || cur < best) best.swap(cur);
        }
    return best;
}

GridDiagram GridDiagram::canonical_form() const {
    std::string best, cur;
    int bc = 0, br = 0;
    for (int dc = 0; dc < n_; ++dc)
        for (int dr = 0; dr < n_; ++dr) {
            encode_translate(*this, dc, dr, cur);
            if (best.empty() || cur < best) {
                best.swap(cur);
                bc = dc;
                br = dr;
            }
        }
    return translated(bc, br);
}

bool equivalent(const GridDiagram& a, const GridDiagram& b) {
    if (a.size() != b.size()) return false;
    return a.canonical_key() == b.canonical_key();
}

UnorientedGridDiagram GridDiagram::unoriented() const {
    std::vector<std::pair<int, int>> pts;
    pts.reserve(verts_.size());
    for (const auto& v : verts_) pts.emplace_back(v.col, v.row);
    return UnorientedGridDiagram::from_points(std::move(pts));
}

UnorientedGridDiagram UnorientedGridDiagram::from_points(
    std::vector<std::pair<int, int>> pts) {
    if (pts.empty())
        throw GridError(GridErrorCode::BadSize, "empty point list");
    int ncols = compact_axis(
        pts, [](const std::pair<int, int>& p) { return p.first; },
        [](std::pair<int, int>& p, int c) { p.first = c; });
    int nrows = compact_axis(
        pts, [](const std::pair<int, int>& p) { return p.second; },
        [](std::pair<int, int>& p, int r) { p.second = r; });
    if (ncols != nrows)
        throw GridError(GridErrorCode::LineCardinality,
                        "occupied column and row counts differ");
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw GridError(GridErrorCode::BadInput, "duplicate point");
    std::vector<int> colcnt(ncols, 0), rowcnt(nrows, 0);
    for (auto& [c, r] : pts) {
        ++colcnt[c];
        ++rowcnt[r];
    }
    for (int x : colcnt)
        if (x != 2)
            throw GridError(GridErrorCode::LineCardinality,
                            "column must have exactly two points");
    for (int x : rowcnt)
        if (x != 2)
            throw GridError(GridErrorCode::LineCardinality,
                            "row must have exactly two points");
    UnorientedGridDiagram u;
    u.n_ = ncols;
    u.pts_ = std::move(pts);
    return u;
}

GridDiagram UnorientedGridDiagram::orient() const {
    // Pair up points per line, then walk each component assigning signs so
    // that the traversal leaves each column's positive vertex downward along
    // the vertical edge. Start each component at its least point, made
    // positive.
    std::map<int, std::array<int, 2>> col_of, row_of;
    for (int i = 0; i < int(pts_.size()); ++i) {
        auto& cs = col_of.try_emplace(pts_[i].first,
                                      std::array<int, 2>{-1, -1})
                       .first->second;
        (cs[0] < 0 ? cs[0] : cs[1]) = i;
        auto& rs = row_of.try_emplace(pts_[i].second,
                                      std::array<int, 2>{-1, -1})
                       .first->second;
        (rs[0] < 0 ? rs[0] : rs[1]) = i;
    }
    std::vector<int> sign(pts_.size(), 0);
    for (int start = 0; start < int(pts_.size()); ++start) {
        if (sign[start] != 0) continue;
        int cur = start, s = 1;
        bool vertical = true;
        do {
            sign[cur] = s;
            const auto& slot = vertical ? col_of[pts_[cur].first]
                                        : row_of[pts_[cur].second];
            cur = (slot[0] == cur) ? slot[1] : slot[0];
            // Signs alternate along the walk: a vertex is positive exactly
            // when the walk leaves it along its vertical edge.
            s = -s;
            vertical = !vertical;
        } while (cur != start);
    }
    std::vector<Vertex> vs;
    vs.reserve(pts_.size());
    for (int i = 0; i < int(pts_.size()); ++i)
        vs.push_back({pts_[i].first, pts_[i].second, sign[i]});
    return GridDiagram::from_vertices(std::move(vs));
}

int UnorientedGridDiagram::component_count() const {
    return orient().component_count();
}

CanonicalKey UnorientedGridDiagram::canonical_key() const {
    // Same scheme as the oriented key with signs zeroed out.
    std::string best;
    for (int dc = 0; dc < n_; ++dc)
        for (int dr = 0; dr < n_; ++dr) {
            std::string cur;
            cur.push_back(char(n_ & 0xff));
            cur.push_back(char((n_ >> 8) & 0xff));
            std::vector<std::pair<int, int>> moved;
            moved.reserve(pts_.size());
            for (auto [c, r] : pts_)
                moved.emplace_back((c + dc) % n_, (r + dr) % n_);
            std::sort(moved.begin(), moved.end());
            for (auto [c, r] : moved) {
                cur.push_back(char(c & 0xff));
                cur.push_back(char((c >> 8) & 0xff));
                cur.push_back(char(r & 0xff));
                cur.push_back(char((r >> 8) & 0xff));
            }
            if (best.empty() || cur < best) best.swap(cur);
        }
    return best;
}

}  // namespace legrid
