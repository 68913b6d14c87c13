#pragma once

// Graph serialization.
//
// JSON: {"alphabet":"ab","vertices":N,"base":B,"edges":[[from,"a",to],...]}
// listing positive edges only. Alphabets with multi-character symbols are
// written as an array of symbols. DOT: one arc per positive edge with
// label="x"; the base vertex is drawn as a double circle.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

inline nlohmann::json alphabet_to_json(const Alphabet& alphabet) {
  if (alphabet.is_textual()) return alphabet.to_string();
  return alphabet.symbols();
}

inline Alphabet alphabet_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Alphabet::from_letters(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::string> symbols;
    for (const auto& s : j) {
      if (!s.is_string()) throw invalid_input("alphabet symbols must be strings");
      symbols.push_back(s.get<std::string>());
    }
    return Alphabet(std::move(symbols));
  }
  throw invalid_input("\"alphabet\" must be a string or an array of strings");
}

inline nlohmann::json to_json(const BasedGraph& g) {
  const auto& alphabet = g.graph.alphabet();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.graph.edges()) edges.push_back({e.from, alphabet.symbol(e.label), e.to});
  return {{"alphabet", alphabet_to_json(alphabet)},
          {"vertices", g.graph.vertex_count()},
          {"base", g.base},
          {"edges", std::move(edges)}};
}

inline nlohmann::json to_json(const SubgroupGraph& h) { return to_json(h.based()); }

/// Reads a graph record; the graph need not be folded.
inline BasedGraph based_graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw invalid_input("graph record must be a JSON object");
  for (const char* field : {"alphabet", "vertices", "base", "edges"}) {
    if (!j.contains(field)) throw invalid_input(std::string("graph record is missing \"") + field + "\"");
  }
  Alphabet alphabet = alphabet_from_json(j.at("alphabet"));
  if (!j.at("vertices").is_number_unsigned()) throw invalid_input("\"vertices\" must be a non-negative integer");
  if (!j.at("base").is_number_unsigned()) throw invalid_input("\"base\" must be a non-negative integer");
  if (!j.at("edges").is_array()) throw invalid_input("\"edges\" must be an array");
  XDigraph graph(alphabet, j.at("vertices").get<std::size_t>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_string() ||
        !e[2].is_number_unsigned()) {
      throw invalid_input("each edge must be [from, \"label\", to]");
    }
    const auto label = e[1].get<std::string>();
    const auto& symbols = alphabet.symbols();
    auto it = std::find(symbols.begin(), symbols.end(), label);
    if (it == symbols.end()) throw invalid_input("edge label \"" + label + "\" is not in the alphabet");
    graph.add_edge(e[0].get<Vertex>(), static_cast<std::uint32_t>(it - symbols.begin()), e[2].get<Vertex>());
  }
  auto base = j.at("base").get<std::size_t>();
  if (base >= graph.vertex_count()) throw invalid_input("\"base\" is out of range");
  return {std::move(graph), static_cast<Vertex>(base)};
}

/// Reads a graph record that must already be a subgroup graph (folded,
/// connected, core at its base).
inline SubgroupGraph subgroup_from_json(const nlohmann::json& j) {
  auto g = based_graph_from_json(j);
  return SubgroupGraph::from_graph(g.graph, g.base);
}

inline SubgroupGraph subgroup_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  return subgroup_from_json(j);
}

inline std::string to_dot(const BasedGraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
    out << "  " << v;
    if (v == g.base) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const auto& e : g.graph.edges()) {
    out << "  " << e.from << " -> " << e.to << " [label=\"" << g.graph.alphabet().symbol(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const SubgroupGraph& h, const std::string& name = "G") { return to_dot(h.based(), name); }

}  // namespace stallings
