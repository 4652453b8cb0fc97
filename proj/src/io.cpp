#include "legrid/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace legrid {

using nlohmann::json;

json grid_to_json(const GridDiagram& g) {
    json verts = json::array();
    for (const auto& v : g.vertices())
        verts.push_back({v.col, v.row, v.sign > 0 ? "+" : "-"});
    return json{{"n", g.size()}, {"vertices", verts}};
}

namespace {

int parse_sign(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "+") return 1;
        if (s == "-") return -1;
    } else if (j.is_number_integer()) {
        int s = j.get<int>();
        if (s == 1 || s == -1) return s;
    }
    throw GridError(GridErrorCode::BadInput, "sign must be \"+\" or \"-\"");
}

}  // namespace

GridDiagram grid_from_json(const json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw GridError(GridErrorCode::BadInput,
                        "missing \"vertices\" array");
    std::vector<Vertex> oriented;
    std::vector<std::pair<int, int>> plain;
    for (const auto& e : j["vertices"]) {
        if (!e.is_array() || e.size() < 2)
            throw GridError(GridErrorCode::BadInput,
                            "vertex entries must be [col, row] or "
                            "[col, row, sign]");
        int c = e[0].get<int>(), r = e[1].get<int>();
        if (e.size() >= 3)
            oriented.push_back({c, r, parse_sign(e[2])});
        else
            plain.emplace_back(c, r);
    }
    if (!oriented.empty() && !plain.empty())
        throw GridError(GridErrorCode::BadInput,
                        "either all vertices carry signs or none");
    if (!oriented.empty()) return GridDiagram::from_vertices(std::move(oriented));
    return UnorientedGridDiagram::from_points(std::move(plain)).orient();
}

namespace {

struct ParsedText {
    std::vector<Vertex> oriented;
    std::vector<std::pair<int, int>> plain;
};

ParsedText parse_text(const std::string& text) {
    ParsedText out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        auto bad = [&] {
            return GridError(GridErrorCode::BadInput,
                             "bad grid line " + std::to_string(lineno));
        };
        if (first == "X" || first == "O" || first == "x" || first == "o") {
            int c, r;
            if (!(ls >> c >> r)) throw bad();
            // O marks a positive vertex (tail of its vertical edge),
            // X a negative one.
            int s = (first == "O" || first == "o") ? 1 : -1;
            out.oriented.push_back({c, r, s});
        } else {
            int c, r;
            try {
                c = std::stoi(first);
            } catch (...) {
                throw bad();
            }
            if (!(ls >> r)) throw bad();
            out.plain.emplace_back(c, r);
        }
        std::string extra;
        if (ls >> extra) throw bad();
    }
    if (!out.oriented.empty() && !out.plain.empty())
        throw GridError(GridErrorCode::BadInput,
                        "mixed X/O and plain vertex lines");
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw GridError(GridErrorCode::BadInput, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' || ch == '[';
    }
    return false;
}

}  // namespace

GridDiagram parse_grid_text(const std::string& text) {
    auto p = parse_text(text);
    if (!p.oriented.empty())
        return GridDiagram::from_vertices(std::move(p.oriented));
    return UnorientedGridDiagram::from_points(std::move(p.plain)).orient();
}

UnorientedGridDiagram parse_grid_text_unoriented(const std::string& text) {
    auto p = parse_text(text);
    if (!p.plain.empty())
        return UnorientedGridDiagram::from_points(std::move(p.plain));
    std::vector<std::pair<int, int>> pts;
    for (const auto& v : p.oriented) pts.emplace_back(v.col, v.row);
    return UnorientedGridDiagram::from_points(std::move(pts));
}

GridDiagram load_grid(const std::string& path) {
    std::string text = slurp(path);
    if (looks_like_json(text)) return grid_from_json(json::parse(text));
    return parse_grid_text(text);
}

UnorientedGridDiagram load_grid_unoriented(const std::string& path) {
    std::string text = slurp(path);
    if (looks_like_json(text)) {
        json j = json::parse(text);
        std::vector<std::pair<int, int>> pts;
        for (const auto& e : j.at("vertices"))
            pts.emplace_back(e[0].get<int>(), e[1].get<int>());
        return UnorientedGridDiagram::from_points(std::move(pts));
    }
    return parse_grid_text_unoriented(text);
}

void save_grid(const std::string& path, const GridDiagram& g) {
    std::ofstream f(path);
    if (!f)
        throw GridError(GridErrorCode::BadInput, "cannot write " + path);
    f << grid_to_json(g).dump(1) << "\n";
}

}  // namespace legrid
