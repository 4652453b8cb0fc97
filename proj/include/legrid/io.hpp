#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "legrid/grid.hpp"

namespace legrid {

// JSON form: {"n": 5, "vertices": [[col, row, "+"], ...]}. Sign entries are
// optional; a diagram whose vertices all omit them is oriented automatically
// (each component starts at its least vertex, made positive).
//
// Text form: one vertex per line, "O col row" for positive vertices and
// "X col row" for negative ones ('#' starts a comment). Plain "col row" lines
// give an unoriented diagram.
nlohmann::json grid_to_json(const GridDiagram& g);
GridDiagram grid_from_json(const nlohmann::json& j);

GridDiagram load_grid(const std::string& path);
UnorientedGridDiagram load_grid_unoriented(const std::string& path);
void save_grid(const std::string& path, const GridDiagram& g);

GridDiagram parse_grid_text(const std::string& text);
UnorientedGridDiagram parse_grid_text_unoriented(const std::string& text);

}  // namespace legrid
