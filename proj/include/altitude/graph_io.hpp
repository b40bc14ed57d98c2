#pragma once

#include <filesystem>
#include <string>

#include "altitude/graph.hpp"

namespace altitude {

// Graph file format: {"n":<int>,"edges":[[u,v],...]} where array position
// plus one is the edge rank. write_graph_json emits exactly this compact
// form, so reading and re-writing a file it produced is byte-identical.
std::string write_graph_json(const Graph& g);
Graph read_graph_json(const std::string& text);

Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

}  // namespace altitude
