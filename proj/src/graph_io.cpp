#include "altitude/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "altitude/error.hpp"

namespace altitude {

std::string write_graph_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  return doc.dump();
}

Graph read_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw InvalidInput("graph file must be an object with \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_integer()) throw InvalidInput("\"n\" must be an integer");
  if (!doc["edges"].is_array()) throw InvalidInput("\"edges\" must be an array");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& e = doc["edges"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InvalidInput("edge " + std::to_string(i) + ": expected [u,v]");
    }
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph::build(doc["n"].get<int>(), pairs);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_graph_json(buf.str());
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write graph file " + path.string());
  out << write_graph_json(g);
}

}  // namespace altitude
