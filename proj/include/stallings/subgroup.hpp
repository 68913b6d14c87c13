#pragma once

// Subgroup graphs Γ(H) and the single-subgroup algorithms: membership,
// spanning trees and bases, rank, index, normality, conjugation, conjugacy,
// power membership and M. Hall completion.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "stallings/detail/union_find.hpp"
#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// Γ(H): a folded, connected graph that is a core graph at its base. Stored
/// in canonical numbering (base 0, breadth-first, edges sorted), so two
/// instances represent the same subgroup iff they compare equal.
class SubgroupGraph {
 public:
  /// The trivial subgroup of F(alphabet).
  explicit SubgroupGraph(Alphabet alphabet = {}) : SubgroupGraph(XDigraph(std::move(alphabet), 1), 0, Trusted{}) {}

  /// Validates that (graph, base) is folded, connected and core at base,
  /// then canonicalizes it.
  static SubgroupGraph from_graph(const XDigraph& graph, Vertex base) {
    if (base >= graph.vertex_count()) throw invalid_input("base vertex out of range");
    if (!is_folded(graph)) throw invalid_input("subgroup graph must be folded");
    if (!is_connected(graph)) throw invalid_input("subgroup graph must be connected");
    auto c = core(graph, base);
    if (c.graph.vertex_count() != graph.vertex_count() || c.graph.edge_count() != graph.edge_count()) {
      throw invalid_input("subgroup graph must be a core graph at its base");
    }
    return SubgroupGraph(graph, base, Trusted{});
  }

  /// Folds an arbitrary based graph and takes the core at the image of
  /// `base`; the language at the base becomes the subgroup.
  static SubgroupGraph fold_and_core(const XDigraph& graph, Vertex base) {
    auto folded = fold_all(graph);
    auto c = core(folded.graph, folded.vertex_trace.at(base));
    return SubgroupGraph(c.graph, c.base, Trusted{});
  }

  const Alphabet& alphabet() const noexcept { return based_.graph.alphabet(); }
  const XDigraph& graph() const noexcept { return based_.graph; }
  const BasedGraph& based() const noexcept { return based_; }
  Vertex base() const noexcept { return 0; }
  std::size_t vertex_count() const noexcept { return based_.graph.vertex_count(); }
  std::size_t edge_count() const noexcept { return based_.graph.edge_count(); }
  const Transitions& transitions() const noexcept { return *transitions_; }
  bool is_trivial() const noexcept { return based_.graph.edge_count() == 0; }

  bool operator==(const SubgroupGraph& other) const { return based_ == other.based_; }

 private:
  struct Trusted {};
  SubgroupGraph(const XDigraph& graph, Vertex base, Trusted)
      : based_(canonicalize({graph, base}).graph),
        transitions_(std::make_shared<const Transitions>(based_.graph)) {}

  BasedGraph based_;
  std::shared_ptr<const Transitions> transitions_;
};

namespace detail {

inline void require_same_alphabet(const SubgroupGraph& h, const SubgroupGraph& k) {
  if (!(h.alphabet() == k.alphabet())) throw invalid_input("subgroups are over different alphabets");
}

}  // namespace detail

/// Γ(⟨gens⟩): wedge of loops at one vertex, folded, then cored.
inline SubgroupGraph stallings_graph(const Alphabet& alphabet, const std::vector<Word>& gens) {
  XDigraph wedge(alphabet, 1);
  for (const auto& h : gens) {
    if (h.generator_bound() > alphabet.size()) throw invalid_input("generator uses a letter outside the alphabet");
    if (!h.empty()) wedge.add_path(0, h, 0);
  }
  return SubgroupGraph::fold_and_core(wedge, 0);
}

inline bool contains(const SubgroupGraph& h, const Word& w) {
  auto end = h.transitions().trace(h.base(), w);
  return end && *end == h.base();
}

inline std::size_t rank(const SubgroupGraph& h) { return h.edge_count() - h.vertex_count() + 1; }

// ---------------------------------------------------------------------------
// Spanning trees and bases

struct SpanningTree {
  std::vector<bool> in_tree;             // indexed by edge of the host graph
  Vertex root = 0;
  bool geodesic = false;                 // built breadth-first
  std::vector<Word> word_to;             // label of the tree path root -> v
  std::vector<std::uint32_t> parent_edge;  // tree edge towards the root (unused at root)
};

namespace detail {

// Fills word_to/parent_edge from in_tree; throws unless in_tree is a spanning tree.
inline void complete_tree(const XDigraph& g, const Transitions& t, SpanningTree& tree) {
  const std::size_t n = g.vertex_count();
  std::size_t count = 0;
  for (bool b : tree.in_tree) count += b ? 1 : 0;
  if (count + 1 != n) throw invalid_input("spanning tree must have #V - 1 edges");
  tree.word_to.assign(n, Word{});
  tree.parent_edge.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Letter>> paths(n);
  std::deque<Vertex> queue{tree.root};
  seen[tree.root] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < g.alphabet().signed_size(); ++c) {
      Letter x{c};
      Vertex w = t.next(v, x);
      if (w == kNoVertex || !tree.in_tree[t.edge(v, x)]) continue;
      if (seen[w]) continue;
      seen[w] = true;
      ++reached;
      paths[w] = paths[v];
      paths[w].push_back(x);
      tree.parent_edge[w] = t.edge(v, x);
      queue.push_back(w);
    }
  }
  if (reached != n) throw invalid_input("edge set does not span the graph");
  for (Vertex v = 0; v < n; ++v) tree.word_to[v] = Word(std::move(paths[v]));
}

}  // namespace detail

/// A spanning tree rooted at the base. Breadth-first (geodesic) trees take
/// the first edge reaching each vertex in signed-letter order; otherwise a
/// depth-first tree is built, which in general is not geodesic.
inline SpanningTree spanning_tree(const SubgroupGraph& h, bool geodesic = true) {
  const auto& g = h.graph();
  const auto& t = h.transitions();
  const std::size_t width = g.alphabet().signed_size();
  SpanningTree tree;
  tree.root = h.base();
  tree.geodesic = geodesic;
  tree.in_tree.assign(g.edge_count(), false);
  std::vector<bool> seen(g.vertex_count(), false);
  seen[h.base()] = true;
  if (geodesic) {
    std::deque<Vertex> queue{h.base()};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (std::uint32_t c = 0; c < width; ++c) {
        Vertex w = t.next(v, Letter{c});
        if (w == kNoVertex || seen[w]) continue;
        seen[w] = true;
        tree.in_tree[t.edge(v, Letter{c})] = true;
        queue.push_back(w);
      }
    }
  } else {
    std::vector<std::pair<Vertex, std::uint32_t>> stack{{h.base(), 0}};
    while (!stack.empty()) {
      auto& [v, c] = stack.back();
      if (c == width) {
        stack.pop_back();
        continue;
      }
      Letter x{c++};
      Vertex w = t.next(v, x);
      if (w == kNoVertex || seen[w]) continue;
      seen[w] = true;
      tree.in_tree[t.edge(v, x)] = true;
      stack.push_back({w, 0});
    }
  }
  detail::complete_tree(g, t, tree);
  return tree;
}

/// Spanning tree given by explicit edge indices of the host graph.
inline SpanningTree spanning_tree_from_edges(const SubgroupGraph& h, const std::vector<std::uint32_t>& edges) {
  SpanningTree tree;
  tree.root = h.base();
  tree.in_tree.assign(h.edge_count(), false);
  for (auto e : edges) {
    if (e >= h.edge_count()) throw invalid_input("tree edge index out of range");
    tree.in_tree[e] = true;
  }
  detail::complete_tree(h.graph(), h.transitions(), tree);
  return tree;
}

struct Basis {
  std::vector<Word> elements;
  /// elements[j] is [e] for the positive non-tree edge edges[j]
  std::vector<std::uint32_t> edges;
};

/// Y_T = {[e]} over positive non-tree edges e, in edge order, where
/// [e] = label([root, o(e)]_T · e · [t(e), root]_T).
inline Basis basis(const SubgroupGraph& h, const SpanningTree& tree) {
  Basis out;
  auto edges = h.graph().edges();
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    if (tree.in_tree[i]) continue;
    const Edge& e = edges[i];
    out.elements.push_back(
        multiply({tree.word_to[e.from], Word{Letter::positive(e.label)}, invert(tree.word_to[e.to])}));
    out.edges.push_back(i);
  }
  return out;
}

inline Basis basis(const SubgroupGraph& h) { return basis(h, spanning_tree(h, true)); }

/// Nielsen conditions over S ∪ S^-1: |uv| >= |u|, |v| whenever uv != 1, and
/// |uwv| > |u| - |w| + |v| whenever uw != 1 and wv != 1.
inline bool is_nielsen_reduced(const std::vector<Word>& s) {
  std::set<Word> seen;
  std::vector<Word> all;
  for (const auto& w : s) {
    if (w.empty()) throw invalid_input("Nielsen test: set contains the identity");
    if (seen.count(invert(w)) && invert(w) != w) throw invalid_input("Nielsen test: set contains an inverse pair");
    if (seen.insert(w).second) {
      all.push_back(w);
      all.push_back(invert(w));
    }
  }
  for (const auto& u : all) {
    for (const auto& v : all) {
      Word uv = multiply(u, v);
      if (uv.empty()) continue;
      if (uv.size() < u.size() || uv.size() < v.size()) return false;
    }
  }
  for (const auto& u : all) {
    for (const auto& w : all) {
      if (multiply(u, w).empty()) continue;
      for (const auto& v : all) {
        if (multiply(w, v).empty()) continue;
        auto lhs = static_cast<long long>(multiply({u, w, v}).size());
        auto rhs = static_cast<long long>(u.size()) - static_cast<long long>(w.size()) +
                   static_cast<long long>(v.size());
        if (lhs <= rhs) return false;
      }
    }
  }
  return true;
}

/// Reads w from the base and emits one signed basis index (±(j+1)) per
/// non-tree edge crossed. Throws not_a_member when w ∉ H.
inline std::vector<int> rewrite_in_basis(const SubgroupGraph& h, const SpanningTree& tree, const Word& w) {
  const auto& t = h.transitions();
  std::vector<int> slot(h.edge_count(), 0);
  int next = 0;
  for (std::uint32_t i = 0; i < h.edge_count(); ++i) {
    if (!tree.in_tree[i]) slot[i] = ++next;
  }
  std::vector<int> out;
  Vertex cur = h.base();
  for (Letter x : w) {
    Vertex n = t.next(cur, x);
    if (n == kNoVertex) throw not_a_member("word is not in the subgroup");
    std::uint32_t e = t.edge(cur, x);
    if (!tree.in_tree[e]) out.push_back(x.is_inverse() ? -slot[e] : slot[e]);
    cur = n;
  }
  if (cur != h.base()) throw not_a_member("word is not in the subgroup");
  return out;
}

/// Substitutes basis elements into a signed index word (inverse of rewriting).
inline Word substitute(const std::vector<Word>& elements, const std::vector<int>& indices) {
  std::vector<Letter> raw;
  for (int i : indices) {
    if (i == 0 || static_cast<std::size_t>(std::abs(i)) > elements.size()) {
      throw invalid_input("basis index out of range");
    }
    Word w = i > 0 ? elements[i - 1] : invert(elements[-i - 1]);
    raw.insert(raw.end(), w.begin(), w.end());
  }
  return Word(std::move(raw));
}

/// K rewritten as a subgroup of the free group on a geodesic basis of H
/// (alphabet of size rank(H)). Throws invalid_input unless K <= H.
inline SubgroupGraph express_in(const SubgroupGraph& k, const SubgroupGraph& h) {
  detail::require_same_alphabet(h, k);
  if (!canonical_morphism(k.based(), h.based())) throw invalid_input("K is not a subgroup of H");
  auto tree = spanning_tree(h, true);
  Alphabet inner = Alphabet::standard(rank(h));
  std::vector<Word> gens;
  for (const auto& y : basis(k).elements) {
    std::vector<Letter> raw;
    for (int i : rewrite_in_basis(h, tree, y)) {
      raw.push_back(i > 0 ? Letter::positive(static_cast<std::uint32_t>(i - 1))
                          : Letter::negative(static_cast<std::uint32_t>(-i - 1)));
    }
    gens.emplace_back(std::move(raw));
  }
  return stallings_graph(inner, gens);
}

// ---------------------------------------------------------------------------
// Index and normality

struct IndexResult {
  /// absent when the index is infinite
  std::optional<std::size_t> index;
  /// F = ∪ H·g_v, one representative per vertex (finite index only)
  std::vector<Word> coset_representatives;
};

inline IndexResult index(const SubgroupGraph& h) {
  IndexResult out;
  if (!is_regular(h.graph())) return out;
  out.index = h.vertex_count();
  out.coset_representatives = spanning_tree(h, true).word_to;
  return out;
}

/// rk(H) - 1 = |F : H| (rk(F) - 1); requires finite index.
inline bool schreier_check(const SubgroupGraph& h) {
  auto i = index(h);
  if (!i.index) throw invalid_input("Schreier formula needs a finite-index subgroup");
  auto lhs = static_cast<long long>(rank(h)) - 1;
  auto rhs = static_cast<long long>(*i.index) * (static_cast<long long>(h.alphabet().size()) - 1);
  return lhs == rhs;
}

struct Normality {
  bool normal = false;
  /// the trivial subgroup, reported normal by convention
  bool trivial = false;
};

/// Normal iff Γ(H) is regular and looks the same from every vertex.
inline Normality is_normal(const SubgroupGraph& h) {
  if (h.is_trivial()) return {true, true};
  if (!is_regular(h.graph())) return {false, false};
  for (Vertex v = 1; v < h.vertex_count(); ++v) {
    if (!based_isomorphism(h.based(), {h.graph(), v})) return {false, false};
  }
  return {true, false};
}

// ---------------------------------------------------------------------------
// Conjugation

/// Γ(gHg^-1). Reads g^-1 from the base as far as possible, attaches the
/// unread remainder as a new path whose far end becomes the base, and
/// takes the core there.
inline SubgroupGraph conjugate(const SubgroupGraph& h, const Word& g) {
  if (g.generator_bound() > h.alphabet().size()) throw invalid_input("conjugator uses a letter outside the alphabet");
  Word inv = invert(g);
  auto [read, stop] = h.transitions().trace_prefix(h.base(), inv);
  XDigraph graph = h.graph();
  Vertex base = graph.add_path(stop, inv.subword(read, inv.size() - read));
  auto c = core(graph, base);
  return SubgroupGraph::from_graph(c.graph, c.base);
}

namespace detail {

struct TypeView {
  TypeGraph type;
  BasedGraph at_attach;
  std::vector<Word> word_from_attach;  // geodesic words attach -> v inside Type
};

inline TypeView type_view(const SubgroupGraph& h) {
  TypeView out{type_graph(h.based()), {}, {}};
  out.at_attach = {out.type.graph, out.type.attach};
  Transitions t(out.type.graph);
  const std::size_t n = out.type.graph.vertex_count();
  std::vector<std::vector<Letter>> paths(n);
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue{out.type.attach};
  seen[out.type.attach] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < out.type.graph.alphabet().signed_size(); ++c) {
      Vertex w = t.next(v, Letter{c});
      if (w == kNoVertex || seen[w]) continue;
      seen[w] = true;
      paths[w] = paths[v];
      paths[w].push_back(Letter{c});
      queue.push_back(w);
    }
  }
  for (auto& p : paths) out.word_from_attach.emplace_back(std::move(p));
  return out;
}

inline std::optional<Word> shortlex_min(std::vector<Word> candidates) {
  if (candidates.empty()) return std::nullopt;
  return *std::min_element(candidates.begin(), candidates.end(), shortlex_less);
}

}  // namespace detail

/// Some g with gHg^-1 = K (the shortlex least over Type base choices), or
/// absent when H and K are not conjugate. With H = stem_H·L_H·stem_H^-1 and
/// an isomorphism (Type H, x) -> (Type K, attach), g = stem_K w_x^-1 stem_H^-1.
inline std::optional<Word> conjugacy_equivalent(const SubgroupGraph& h, const SubgroupGraph& k) {
  detail::require_same_alphabet(h, k);
  if (h.is_trivial() || k.is_trivial()) {
    return h.is_trivial() && k.is_trivial() ? std::optional<Word>(Word{}) : std::nullopt;
  }
  auto th = detail::type_view(h);
  auto tk = detail::type_view(k);
  std::vector<Word> found;
  for (Vertex x = 0; x < th.type.graph.vertex_count(); ++x) {
    if (!based_isomorphism({th.type.graph, x}, tk.at_attach)) continue;
    Word g = multiply({tk.type.stem, invert(th.word_from_attach[x]), invert(th.type.stem)});
    if (conjugate(h, g) == k) found.push_back(g);
  }
  return detail::shortlex_min(std::move(found));
}

/// Some g with gKg^-1 <= H, from a morphism (Type K, attach) -> (Type H, x):
/// g = stem_H w_x stem_K^-1. Absent when no such morphism exists.
inline std::optional<Word> conjugate_into(const SubgroupGraph& k, const SubgroupGraph& h) {
  detail::require_same_alphabet(h, k);
  if (k.is_trivial()) return Word{};
  if (h.is_trivial()) return std::nullopt;
  auto th = detail::type_view(h);
  auto tk = detail::type_view(k);
  std::vector<Word> found;
  for (Vertex x = 0; x < th.type.graph.vertex_count(); ++x) {
    if (!canonical_morphism(tk.at_attach, {th.type.graph, x})) continue;
    Word g = multiply({th.type.stem, th.word_from_attach[x], invert(tk.type.stem)});
    if (canonical_morphism(conjugate(k, g).based(), h.based())) found.push_back(g);
  }
  return detail::shortlex_min(std::move(found));
}

/// Least m >= 1 with g^m ∈ H; by pigeonhole m <= #V when it exists.
/// g^m = c d^m c^-1 with d cyclically reduced, so only d is traced repeatedly.
inline std::optional<std::size_t> power_in(const SubgroupGraph& h, const Word& g) {
  if (g.empty()) throw invalid_input("power membership needs a nontrivial element");
  const auto& t = h.transitions();
  auto [conj, cyc] = cyclic_reduce(g);
  auto start = t.trace(h.base(), conj);
  if (!start) return std::nullopt;
  Vertex cur = *start;
  for (std::size_t m = 1; m <= h.vertex_count(); ++m) {
    auto next = t.trace(cur, cyc);
    if (!next) return std::nullopt;
    cur = *next;
    if (cur == *start) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// M. Hall completion and joins

struct HallCompletion {
  SubgroupGraph completion;          // L: finite index, g ∉ L
  std::vector<Vertex> embedding;     // vertex of Γ(H) -> vertex of Γ(L)
  SpanningTree tree;                 // extends a geodesic tree of Γ(H)
  Basis basis;                       // Y = Y_H ∪ Y_C over `tree`
  std::vector<Word> y_h;             // elements on edges of Γ(H)
  std::vector<Word> y_c;             // the complement
};

/// Attaches a g-path at the base of Γ(H), folds (wrapping the longest
/// readable prefix of g onto Γ(H)) and completes to a regular graph.
inline HallCompletion hall_completion(const SubgroupGraph& h, const Word& g) {
  if (g.generator_bound() > h.alphabet().size()) throw invalid_input("word uses a letter outside the alphabet");
  if (contains(h, g)) throw invalid_input("M. Hall completion needs g outside H");
  XDigraph graph = h.graph();
  graph.add_path(h.base(), g);
  auto folded = fold_all(graph);
  XDigraph full = regular_complete(folded.graph);
  auto canon = canonicalize({full, folded.vertex_trace[h.base()]});

  HallCompletion out{SubgroupGraph::from_graph(canon.graph.graph, 0), {}, {}, {}, {}, {}};
  const auto& lg = out.completion.graph();
  const auto& lt = out.completion.transitions();
  out.embedding.resize(h.vertex_count());
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    out.embedding[v] = canon.vertex_map[folded.vertex_trace[v]];
  }
  // Edges of L that are images of edges of Γ(H).
  std::vector<bool> from_h(lg.edge_count(), false);
  std::vector<bool> tree_h(lg.edge_count(), false);
  auto h_tree = spanning_tree(h, true);
  auto h_edges = h.graph().edges();
  for (std::size_t i = 0; i < h_edges.size(); ++i) {
    std::uint32_t e = lt.edge(out.embedding[h_edges[i].from], Letter::positive(h_edges[i].label));
    from_h[e] = true;
    tree_h[e] = h_tree.in_tree[i];
  }
  // Kruskal: tree edges of Γ(H) first, then the rest in edge order.
  out.tree.root = 0;
  out.tree.in_tree.assign(lg.edge_count(), false);
  detail::UnionFind uf(lg.vertex_count());
  auto l_edges = lg.edges();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint32_t i = 0; i < l_edges.size(); ++i) {
      if ((pass == 0) != tree_h[i]) continue;
      if (uf.find(l_edges[i].from) == uf.find(l_edges[i].to)) continue;
      uf.unite(l_edges[i].from, l_edges[i].to);
      out.tree.in_tree[i] = true;
    }
  }
  detail::complete_tree(lg, lt, out.tree);
  out.basis = basis(out.completion, out.tree);
  for (std::size_t j = 0; j < out.basis.elements.size(); ++j) {
    (from_h[out.basis.edges[j]] ? out.y_h : out.y_c).push_back(out.basis.elements[j]);
  }
  return out;
}

/// Γ(⟨H ∪ K⟩): wedge the two graphs at their bases, fold, take the core.
inline SubgroupGraph join(const SubgroupGraph& h, const SubgroupGraph& k) {
  detail::require_same_alphabet(h, k);
  XDigraph wedge = h.graph();
  std::vector<Vertex> place(k.vertex_count());
  for (Vertex v = 0; v < k.vertex_count(); ++v) place[v] = v == k.base() ? h.base() : wedge.add_vertex();
  for (const auto& e : k.graph().edges()) wedge.add_edge(place[e.from], e.label, place[e.to]);
  return SubgroupGraph::fold_and_core(wedge, h.base());
}

/// |H : K| for K <= H, computed as the index of K inside the free group on
/// a basis of H; absent when infinite.
inline std::optional<std::size_t> relative_index(const SubgroupGraph& k, const SubgroupGraph& h) {
  return index(express_in(k, h)).index;
}

}  // namespace stallings
