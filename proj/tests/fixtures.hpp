#pragma once

#include <string>
#include <vector>

#include "stallings/stallings.hpp"

namespace fixtures {

using namespace stallings;

inline Alphabet ab() { return Alphabet::from_letters("ab"); }
inline Alphabet abc() { return Alphabet::from_letters("abc"); }

inline SubgroupGraph sub(const std::string& words, const Alphabet& alphabet = ab()) {
  return stallings_graph(alphabet, parse_word_list(words, alphabet));
}

inline Word word(const std::string& text, const Alphabet& alphabet = ab()) { return parse_word(text, alphabet); }

/// Two vertices joined by parallel a- and b-edges, with a dangling c-edge.
inline XDigraph three_letter() {
  XDigraph g(abc(), 3);
  g.add_edge(0, 0, 1);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 2);
  return g;
}

inline std::vector<Word> fold_generators() { return parse_word_list("aab,bAba,abA", ab()); }

/// Six-vertex folded core graph with a spanning tree whose tree words are
/// 1, b, bA, bb, bAB, bABB.
struct SixVertex {
  SubgroupGraph graph;
  SpanningTree tree;
};

inline SixVertex six_vertex() {
  XDigraph g(ab(), 6);
  const std::vector<Edge> tree_edges{{0, 1, 1}, {2, 0, 1}, {1, 1, 3}, {4, 1, 2}, {5, 1, 4}};
  const std::vector<Edge> other_edges{{4, 0, 0}, {2, 1, 5}, {3, 0, 2}, {0, 0, 3}};
  for (const auto& e : tree_edges) g.add_edge(e.from, e.label, e.to);
  for (const auto& e : other_edges) g.add_edge(e.from, e.label, e.to);
  auto canon = canonicalize({g, 0});
  auto h = SubgroupGraph::from_graph(g, 0);
  std::vector<std::uint32_t> tree;
  for (const auto& e : tree_edges) {
    Edge mapped{canon.vertex_map[e.from], e.label, canon.vertex_map[e.to]};
    auto edges = h.graph().edges();
    tree.push_back(static_cast<std::uint32_t>(std::find(edges.begin(), edges.end(), mapped) - edges.begin()));
  }
  return {h, spanning_tree_from_edges(h, tree)};
}

inline const char* const kSixVertexBasis[] = {"AbaB", "bAbbbaB", "bbaaB", "aBB"};

inline SubgroupGraph hall_h() { return sub("bbAA"); }
inline Word hall_g() { return word("ab"); }

inline SubgroupGraph product_h() { return sub("ab,Ba"); }
inline SubgroupGraph product_k() { return sub("aaa,Aba"); }

inline SubgroupGraph nested_h() { return sub("a,bb,baB"); }
inline SubgroupGraph nested_k() { return sub("a,bb"); }

/// Smallest non-cyclonormal subgroup met in a random search over F(a, b).
inline SubgroupGraph non_cyclonormal() { return sub("b,AbA,ABab"); }

}  // namespace fixtures
