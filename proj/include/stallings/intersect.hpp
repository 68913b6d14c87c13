#pragma once

// Intersections through product graphs: H ∩ K, the components of
// Γ(H) × Γ(K), malnormality, cyclonormality and immersed generating sets.
//
// A component of Γ(H) × Γ(K) not containing the base pair, with a vertex
// (v, u), carries the subgroup gHg^-1 ∩ K for g = τσ^-1 where σ reads
// 1_H -> v and τ reads 1_K -> u. The free-product criterion for ⟨H, K⟩ is
// the contrapositive of this and is not exposed separately.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// Γ(H ∩ K): the core at the base pair of Γ(H) × Γ(K).
inline SubgroupGraph intersection(const SubgroupGraph& h, const SubgroupGraph& k) {
  detail::require_same_alphabet(h, k);
  auto p = product(h.graph(), k.graph(), std::pair{h.base(), k.base()});
  auto c = core(p.graph, *p.kept);
  return SubgroupGraph::from_graph(c.graph, c.base);
}

struct ComponentReport {
  XDigraph component;
  /// component vertex -> (vertex of Γ(H), vertex of Γ(K))
  std::vector<std::pair<Vertex, Vertex>> pairs;
  bool contains_base_pair = false;
  std::pair<Vertex, Vertex> representative;
  /// #E - #V + 1; zero exactly when the component is a tree
  std::size_t rank = 0;
  /// g = τσ^-1 with gHg^-1 ∩ K ≠ 1 (components off the base pair with rank > 0)
  std::optional<Word> witness;
};

/// One report per component of Γ(H) × Γ(K), ordered by least vertex.
/// Off-base representatives minimise |σ| + |τ| over the component, with σ, τ
/// read along geodesic trees, so witnesses are short.
inline std::vector<ComponentReport> component_analysis(const SubgroupGraph& h, const SubgroupGraph& k) {
  detail::require_same_alphabet(h, k);
  auto p = product(h.graph(), k.graph(), std::pair{h.base(), k.base()});
  auto tree_h = spanning_tree(h, true);
  auto tree_k = spanning_tree(k, true);
  std::vector<ComponentReport> out;
  for (auto& comp : connected_components(p.graph)) {
    ComponentReport r;
    r.rank = comp.graph.edge_count() + 1 - comp.graph.vertex_count();
    for (Vertex v : comp.vertices) {
      r.pairs.push_back(p.pairs[v]);
      if (v == *p.kept) r.contains_base_pair = true;
    }
    r.component = std::move(comp.graph);
    if (r.contains_base_pair) {
      r.representative = {h.base(), k.base()};
    } else {
      auto cost = [&](const std::pair<Vertex, Vertex>& q) {
        return tree_h.word_to[q.first].size() + tree_k.word_to[q.second].size();
      };
      r.representative = *std::min_element(r.pairs.begin(), r.pairs.end(), [&](const auto& a, const auto& b) {
        return cost(a) != cost(b) ? cost(a) < cost(b) : a < b;
      });
      if (r.rank > 0) {
        Word g = multiply(tree_k.word_to[r.representative.second], invert(tree_h.word_to[r.representative.first]));
        if (intersection(conjugate(h, g), k).is_trivial()) {
          throw error("internal: component witness failed verification");
        }
        r.witness = std::move(g);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct MalnormalResult {
  bool malnormal = true;
  /// g ∉ H with gHg^-1 ∩ H ≠ 1 when not malnormal
  std::optional<Word> witness;
};

/// Malnormal iff every component of Γ(H) × Γ(H) off the base pair is a tree.
inline MalnormalResult is_malnormal(const SubgroupGraph& h) {
  for (auto& r : component_analysis(h, h)) {
    if (!r.contains_base_pair && r.rank > 0) return {false, std::move(r.witness)};
  }
  return {};
}

/// Cyclonormal iff every component off the base pair has rank at most one.
inline bool is_cyclonormal(const SubgroupGraph& h) {
  for (const auto& r : component_analysis(h, h)) {
    if (!r.contains_base_pair && r.rank > 1) return false;
  }
  return true;
}

/// No cancellation in h_i h_j (all i, j), h_i h_j^-1 and h_i^-1 h_j (i ≠ j).
/// Equivalent to the wedge of the generator loops being folded.
inline bool is_immersed(const std::vector<Word>& gens) {
  for (const auto& g : gens) {
    if (g.empty()) throw invalid_input("immersed test needs nontrivial generators");
  }
  auto clean = [](const Word& u, const Word& v) { return multiply(u, v).size() == u.size() + v.size(); };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!clean(gens[i], gens[j])) return false;
      if (i != j && (!clean(gens[i], invert(gens[j])) || !clean(invert(gens[i]), gens[j]))) return false;
    }
  }
  return true;
}

/// rk(H ∩ K) - 1 <= (rk H - 1)(rk K - 1); vacuously true for trivial H ∩ K.
inline bool hanna_neumann_check(const SubgroupGraph& h, const SubgroupGraph& k) {
  auto c = intersection(h, k);
  if (c.is_trivial()) return true;
  auto r = [](const SubgroupGraph& g) { return static_cast<long long>(rank(g)) - 1; };
  return r(c) <= r(h) * r(k);
}

}  // namespace stallings
