#pragma once

// X-digraphs: finite directed multigraphs with edges labelled by generators.
// Only positive edges are stored; the inverse edge e^-1 (label x^-1, from
// t(e) to o(e)) is implicit. A graph is folded when every vertex has at
// most one incident half-edge per signed letter, i.e. it is a deterministic
// inverse automaton.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stallings/detail/union_find.hpp"
#include "stallings/error.hpp"
#include "stallings/words.hpp"

namespace stallings {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Positive edge o --x--> t.
struct Edge {
  Vertex from = 0;
  std::uint32_t label = 0;
  Vertex to = 0;

  auto operator<=>(const Edge&) const = default;
};

class XDigraph {
 public:
  XDigraph() = default;
  explicit XDigraph(Alphabet alphabet, std::size_t vertices = 0)
      : alphabet_(std::move(alphabet)), vertex_count_(vertices) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  Vertex add_vertex() { return static_cast<Vertex>(vertex_count_++); }

  std::size_t add_edge(Vertex from, std::uint32_t label, Vertex to) {
    if (from >= vertex_count_ || to >= vertex_count_) throw invalid_input("edge endpoint out of range");
    if (label >= alphabet_.size()) throw invalid_input("edge label outside the alphabet");
    edges_.push_back({from, label, to});
    return edges_.size() - 1;
  }

  /// Adds a path from `from` spelling `w` through fresh vertices and
  /// returns its endpoint; `to`, when given, closes the path there.
  Vertex add_path(Vertex from, const Word& w, Vertex to = kNoVertex) {
    if (w.empty()) {
      if (to != kNoVertex && to != from) throw invalid_input("empty path between distinct vertices");
      return from;
    }
    Vertex cur = from;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Vertex next = (i + 1 == w.size() && to != kNoVertex) ? to : add_vertex();
      Letter l = w[i];
      if (l.is_inverse()) {
        add_edge(next, l.generator(), cur);
      } else {
        add_edge(cur, l.generator(), next);
      }
      cur = next;
    }
    return cur;
  }

  /// Degree in the undirected sense; a loop counts twice.
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(vertex_count_, 0);
    for (const auto& e : edges_) {
      ++deg[e.from];
      ++deg[e.to];
    }
    return deg;
  }

  void sort_edges() { std::sort(edges_.begin(), edges_.end()); }

  bool operator==(const XDigraph&) const = default;

 private:
  Alphabet alphabet_;
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

struct BasedGraph {
  XDigraph graph;
  Vertex base = 0;

  bool operator==(const BasedGraph&) const = default;
};

/// Vertex map of a label- and incidence-preserving graph map. On folded
/// targets the edge images are determined by the vertex images.
struct Morphism {
  std::vector<Vertex> vertex_map;

  Vertex operator()(Vertex v) const { return vertex_map.at(v); }
  bool operator==(const Morphism&) const = default;
};

/// Transition table of a folded graph: for each vertex and signed letter,
/// the unique neighbour (and the positive edge realising it).
class Transitions {
 public:
  /// Throws invalid_input when `g` is not folded.
  explicit Transitions(const XDigraph& g) {
    if (!build(g)) throw invalid_input("graph is not folded");
  }

  static std::optional<Transitions> try_build(const XDigraph& g) {
    Transitions t;
    if (!t.build(g)) return std::nullopt;
    return t;
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t signed_size() const noexcept { return width_; }

  Vertex next(Vertex v, Letter x) const { return next_[v * width_ + x.code]; }
  std::uint32_t edge(Vertex v, Letter x) const { return edge_[v * width_ + x.code]; }

  std::size_t degree(Vertex v) const {
    std::size_t d = 0;
    for (std::size_t c = 0; c < width_; ++c) d += next_[v * width_ + c] != kNoVertex ? 1 : 0;
    return d;
  }

  /// Endpoint of the path from `start` labelled w, if it can be read.
  std::optional<Vertex> trace(Vertex start, const Word& w) const {
    Vertex cur = start;
    for (Letter l : w) {
      cur = next(cur, l);
      if (cur == kNoVertex) return std::nullopt;
    }
    return cur;
  }

  /// Length of the longest prefix of w readable from `start`, with its endpoint.
  std::pair<std::size_t, Vertex> trace_prefix(Vertex start, const Word& w) const {
    Vertex cur = start;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Vertex n = next(cur, w[i]);
      if (n == kNoVertex) return {i, cur};
      cur = n;
    }
    return {w.size(), cur};
  }

 private:
  Transitions() = default;

  bool build(const XDigraph& g) {
    vertex_count_ = g.vertex_count();
    width_ = g.alphabet().signed_size();
    next_.assign(vertex_count_ * width_, kNoVertex);
    edge_.assign(vertex_count_ * width_, std::numeric_limits<std::uint32_t>::max());
    auto edges = g.edges();
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      std::size_t out = e.from * width_ + Letter::positive(e.label).code;
      std::size_t in = e.to * width_ + Letter::negative(e.label).code;
      if (next_[out] != kNoVertex || next_[in] != kNoVertex) return false;
      next_[out] = e.to;
      edge_[out] = i;
      next_[in] = e.from;
      edge_[in] = i;
    }
    return true;
  }

  std::size_t vertex_count_ = 0;
  std::size_t width_ = 0;
  std::vector<Vertex> next_;
  std::vector<std::uint32_t> edge_;
};

inline bool is_folded(const XDigraph& g) { return Transitions::try_build(g).has_value(); }

inline std::optional<Vertex> trace_path(const XDigraph& g, Vertex start, const Word& w) {
  return Transitions(g).trace(start, w);
}

/// Connected via the undirected structure of the graph (edges in either direction).
inline bool is_connected(const XDigraph& g) {
  if (g.vertex_count() == 0) return true;
  detail::UnionFind uf(g.vertex_count());
  std::size_t parts = g.vertex_count();
  for (const auto& e : g.edges()) {
    if (uf.find(e.from) != uf.find(e.to)) {
      uf.unite(e.from, e.to);
      --parts;
    }
  }
  return parts == 1;
}

/// Every vertex has exactly one incident half-edge per signed letter.
inline bool is_regular(const XDigraph& g) {
  auto t = Transitions::try_build(g);
  if (!t) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t->degree(v) != g.alphabet().signed_size()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Folding

struct FoldResult {
  XDigraph graph;
  /// old vertex -> vertex of the folded graph
  std::vector<Vertex> vertex_trace;
  /// number of elementary folds; each removes exactly one positive edge
  std::size_t fold_count = 0;
};

/// Performs elementary folds until the graph is folded. Vertices are merged
/// in a union-find partition; each merged vertex's half-edges are rescanned
/// grouped by signed label. With `rng` the order of folds is randomised (the
/// result is the same up to isomorphism, which the tests exploit).
inline FoldResult fold_all(const XDigraph& g, std::mt19937_64* rng = nullptr) {
  struct Half {
    std::uint32_t code;
    std::uint32_t edge;
    bool at_origin;
  };
  const std::size_t n = g.vertex_count();
  const std::size_t width = g.alphabet().signed_size();
  auto edges = g.edges();

  detail::UnionFind uf(n);
  std::vector<std::vector<Half>> adj(n);
  std::vector<bool> alive(edges.size(), true);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].from].push_back({Letter::positive(edges[i].label).code, i, true});
    adj[edges[i].to].push_back({Letter::negative(edges[i].label).code, i, false});
  }
  auto other_end = [&](const Half& h) {
    return uf.find(h.at_origin ? edges[h.edge].to : edges[h.edge].from);
  };

  std::vector<Vertex> work(n);
  for (Vertex v = 0; v < n; ++v) work[v] = static_cast<Vertex>(n - 1 - v);
  std::vector<std::uint32_t> seen(width, std::numeric_limits<std::uint32_t>::max());
  std::size_t folds = 0;

  while (!work.empty()) {
    std::size_t pick = work.size() - 1;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng);
    Vertex v = uf.find(work[pick]);
    work[pick] = work.back();
    work.pop_back();

    auto& halves = adj[v];
    std::erase_if(halves, [&](const Half& h) { return !alive[h.edge]; });
    if (rng) std::shuffle(halves.begin(), halves.end(), *rng);

    std::fill(seen.begin(), seen.end(), std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < halves.size(); ++i) {
      std::uint32_t& slot = seen[halves[i].code];
      if (slot == std::numeric_limits<std::uint32_t>::max()) {
        slot = static_cast<std::uint32_t>(i);
        continue;
      }
      // Two half-edges at v with the same signed label: fold them.
      Half keep = halves[slot];
      Half drop = halves[i];
      alive[drop.edge] = false;
      ++folds;
      Vertex a = other_end(keep);
      Vertex b = other_end(drop);
      if (a != b) {
        Vertex root = uf.unite(a, b);
        Vertex gone = root == a ? b : a;
        auto& into = adj[root];
        into.insert(into.end(), adj[gone].begin(), adj[gone].end());
        adj[gone].clear();
        adj[gone].shrink_to_fit();
        work.push_back(root);
      }
      work.push_back(uf.find(v));
      break;
    }
  }

  FoldResult result;
  std::vector<Vertex> new_id(n, kNoVertex);
  std::size_t count = 0;
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = uf.find(v);
    if (new_id[r] == kNoVertex) new_id[r] = static_cast<Vertex>(count++);
  }
  result.graph = XDigraph(g.alphabet(), count);
  result.vertex_trace.resize(n);
  for (Vertex v = 0; v < n; ++v) result.vertex_trace[v] = new_id[uf.find(v)];
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) continue;
    result.graph.add_edge(new_id[uf.find(edges[i].from)], edges[i].label, new_id[uf.find(edges[i].to)]);
  }
  result.fold_count = folds;
  return result;
}

// ---------------------------------------------------------------------------
// Subgraph extraction, cores, components

struct InducedSubgraph {
  XDigraph graph;
  /// original vertex -> vertex of `graph`, or kNoVertex when dropped
  std::vector<Vertex> vertex_map;
  /// vertex of `graph` -> original vertex
  std::vector<Vertex> original;
};

/// Keeps the marked vertices (order preserved) and the marked edges.
inline InducedSubgraph extract_subgraph(const XDigraph& g, const std::vector<bool>& keep_vertex,
                                        const std::vector<bool>& keep_edge) {
  InducedSubgraph out;
  out.vertex_map.assign(g.vertex_count(), kNoVertex);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (keep_vertex[v]) {
      out.vertex_map[v] = static_cast<Vertex>(out.original.size());
      out.original.push_back(v);
    }
  }
  out.graph = XDigraph(g.alphabet(), out.original.size());
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!keep_edge[i]) continue;
    out.graph.add_edge(out.vertex_map[edges[i].from], edges[i].label, out.vertex_map[edges[i].to]);
  }
  return out;
}

struct CoreResult {
  BasedGraph core;
  std::vector<Vertex> vertex_map;  // original -> core vertex or kNoVertex
};

/// Core(G, v) for a folded graph: the component of v with degree-one
/// vertices other than v pruned repeatedly. On folded graphs this is the
/// union of reduced v-loops.
inline CoreResult core_with_map(const XDigraph& g, Vertex v) {
  if (v >= g.vertex_count()) throw invalid_input("core: vertex out of range");
  if (!is_folded(g)) throw invalid_input("core: graph must be folded");
  const std::size_t n = g.vertex_count();
  auto edges = g.edges();

  std::vector<std::vector<std::uint32_t>> incident(n);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].from].push_back(i);
    if (edges[i].to != edges[i].from) incident[edges[i].to].push_back(i);
  }
  // component of v
  std::vector<bool> keep_vertex(n, false);
  std::vector<Vertex> stack{v};
  keep_vertex[v] = true;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (auto i : incident[u]) {
      for (Vertex w : {edges[i].from, edges[i].to}) {
        if (!keep_vertex[w]) {
          keep_vertex[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<bool> keep_edge(edges.size(), false);
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (keep_vertex[edges[i].from]) {
      keep_edge[i] = true;
      ++deg[edges[i].from];
      ++deg[edges[i].to];
    }
  }
  std::vector<Vertex> leaves;
  for (Vertex u = 0; u < n; ++u) {
    if (keep_vertex[u] && u != v && deg[u] <= 1) leaves.push_back(u);
  }
  while (!leaves.empty()) {
    Vertex u = leaves.back();
    leaves.pop_back();
    if (!keep_vertex[u]) continue;
    keep_vertex[u] = false;
    for (auto i : incident[u]) {
      if (!keep_edge[i]) continue;
      keep_edge[i] = false;
      Vertex w = edges[i].from == u ? edges[i].to : edges[i].from;
      --deg[w];
      --deg[u];
      if (w != v && keep_vertex[w] && deg[w] <= 1) leaves.push_back(w);
    }
  }
  auto sub = extract_subgraph(g, keep_vertex, keep_edge);
  return {{std::move(sub.graph), sub.vertex_map[v]}, std::move(sub.vertex_map)};
}

inline BasedGraph core(const XDigraph& g, Vertex v) { return core_with_map(g, v).core; }

struct Component {
  std::vector<Vertex> vertices;  // ascending original ids
  XDigraph graph;                // induced subgraph, vertices renumbered in order
};

/// Components of the underlying undirected graph, ordered by least vertex id.
inline std::vector<Component> connected_components(const XDigraph& g) {
  const std::size_t n = g.vertex_count();
  detail::UnionFind uf(n);
  for (const auto& e : g.edges()) uf.unite(e.from, e.to);
  std::vector<Vertex> slot(n, kNoVertex);
  std::vector<Component> out;
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = uf.find(v);
    if (slot[r] == kNoVertex) {
      slot[r] = static_cast<Vertex>(out.size());
      out.emplace_back();
    }
    out[slot[r]].vertices.push_back(v);
  }
  std::vector<Vertex> local(n);
  for (auto& c : out) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) local[c.vertices[i]] = static_cast<Vertex>(i);
    c.graph = XDigraph(g.alphabet(), c.vertices.size());
  }
  for (const auto& e : g.edges()) {
    out[slot[uf.find(e.from)]].graph.add_edge(local[e.from], e.label, local[e.to]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace detail {

// Simultaneous traversal from the two base points. `injective` demands a
// bijection with identical local structure (isomorphism); otherwise every
// half-edge of A must exist in B (morphism).
inline std::optional<Morphism> traverse_pair(const XDigraph& a, Vertex base_a, const XDigraph& b,
                                             Vertex base_b, bool injective) {
  if (a.alphabet().size() != b.alphabet().size()) return std::nullopt;
  if (injective &&
      (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())) {
    return std::nullopt;
  }
  Transitions ta(a);
  Transitions tb(b);
  const std::size_t width = a.alphabet().signed_size();
  Morphism m{std::vector<Vertex>(a.vertex_count(), kNoVertex)};
  std::vector<bool> used(injective ? b.vertex_count() : 0, false);
  m.vertex_map[base_a] = base_b;
  if (injective) used[base_b] = true;
  std::deque<Vertex> queue{base_a};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    Vertex image = m.vertex_map[v];
    for (std::uint32_t c = 0; c < width; ++c) {
      Vertex na = ta.next(v, Letter{c});
      Vertex nb = tb.next(image, Letter{c});
      if (na == kNoVertex) {
        if (injective && nb != kNoVertex) return std::nullopt;
        continue;
      }
      if (nb == kNoVertex) return std::nullopt;
      if (m.vertex_map[na] == kNoVertex) {
        if (injective) {
          if (used[nb]) return std::nullopt;
          used[nb] = true;
        }
        m.vertex_map[na] = nb;
        queue.push_back(na);
      } else if (m.vertex_map[na] != nb) {
        return std::nullopt;
      }
    }
  }
  if (std::find(m.vertex_map.begin(), m.vertex_map.end(), kNoVertex) != m.vertex_map.end()) {
    throw invalid_input("morphism source must be connected");
  }
  return m;
}

}  // namespace detail

/// The unique base-preserving isomorphism between folded connected graphs, if any.
inline std::optional<Morphism> based_isomorphism(const BasedGraph& a, const BasedGraph& b) {
  return detail::traverse_pair(a.graph, a.base, b.graph, b.base, true);
}

/// The unique base-preserving morphism A -> B; present iff L(A) <= L(B)
/// when both are folded, connected and core at their bases.
inline std::optional<Morphism> canonical_morphism(const BasedGraph& a, const BasedGraph& b) {
  return detail::traverse_pair(a.graph, a.base, b.graph, b.base, false);
}

/// Canonical numbering of a folded connected based graph: breadth-first from
/// the base, neighbours visited in signed-letter order (a, A, b, B, ...);
/// edges sorted. Two based graphs are isomorphic iff their canonical forms
/// are equal.
struct Canonical {
  BasedGraph graph;                // base is 0
  std::vector<Vertex> vertex_map;  // old -> canonical
};

inline Canonical canonicalize(const BasedGraph& g) {
  Transitions t(g.graph);
  const std::size_t n = g.graph.vertex_count();
  const std::size_t width = g.graph.alphabet().signed_size();
  std::vector<Vertex> order(n, kNoVertex);
  std::vector<Vertex> queue{g.base};
  order[g.base] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (std::uint32_t c = 0; c < width; ++c) {
      Vertex w = t.next(v, Letter{c});
      if (w != kNoVertex && order[w] == kNoVertex) {
        order[w] = static_cast<Vertex>(queue.size());
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw invalid_input("canonicalize: graph is not connected");
  XDigraph out(g.graph.alphabet(), n);
  for (const auto& e : g.graph.edges()) out.add_edge(order[e.from], e.label, order[e.to]);
  out.sort_edges();
  return {{std::move(out), 0}, std::move(order)};
}

// ---------------------------------------------------------------------------
// Type graphs

struct TypeGraph {
  XDigraph graph;
  /// vertex of `graph` closest to the original base
  Vertex attach = 0;
  /// label of the removed stem, read from the base to the attach vertex
  Word stem;
  /// vertex of `graph` -> vertex of the input
  std::vector<Vertex> original;
};

/// Type(G): a folded core graph with its base stem (the arc from a
/// degree-one base to the first vertex of degree >= 3) removed.
inline TypeGraph type_graph(const BasedGraph& g) {
  Transitions t(g.graph);
  const std::size_t n = g.graph.vertex_count();
  const std::size_t width = g.graph.alphabet().signed_size();
  TypeGraph out;
  auto identity = [&] {
    out.graph = g.graph;
    out.attach = g.base;
    out.original.resize(n);
    for (Vertex v = 0; v < n; ++v) out.original[v] = v;
    return out;
  };
  if (g.graph.edge_count() == 0 || t.degree(g.base) >= 2) return identity();

  std::vector<bool> keep_vertex(n, true);
  std::vector<bool> keep_edge(g.graph.edge_count(), true);
  std::vector<Letter> stem;
  Vertex cur = g.base;
  std::optional<Letter> arrived;  // letter used to arrive at cur
  for (std::size_t steps = 0;; ++steps) {
    if (steps > n) throw invalid_input("type_graph: input is not a core graph");
    if (cur != g.base && t.degree(cur) >= 3) break;
    if (cur != g.base && t.degree(cur) != 2) throw invalid_input("type_graph: input is not a core graph");
    std::optional<Letter> forward;
    for (std::uint32_t c = 0; c < width; ++c) {
      Letter x{c};
      if (t.next(cur, x) == kNoVertex) continue;
      if (arrived && x == arrived->inverse()) continue;
      forward = x;
    }
    if (!forward) throw invalid_input("type_graph: input is not a core graph");
    keep_vertex[cur] = false;
    keep_edge[t.edge(cur, *forward)] = false;
    stem.push_back(*forward);
    cur = t.next(cur, *forward);
    arrived = forward;
  }
  auto sub = extract_subgraph(g.graph, keep_vertex, keep_edge);
  out.graph = std::move(sub.graph);
  out.attach = sub.vertex_map[cur];
  out.stem = Word(std::move(stem));
  out.original = std::move(sub.original);
  return out;
}

// ---------------------------------------------------------------------------
// Product graphs

struct ProductGraph {
  XDigraph graph;
  /// vertex of `graph` -> (vertex of left factor, vertex of right factor)
  std::vector<std::pair<Vertex, Vertex>> pairs;
  /// index of the retained pair, when one was requested
  std::optional<Vertex> kept;

  std::optional<Vertex> find(Vertex v, Vertex u) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(v, u));
    if (it == pairs.end() || *it != std::make_pair(v, u)) return std::nullopt;
    return static_cast<Vertex>(it - pairs.begin());
  }
};

/// Synchronised product of two folded graphs over the same alphabet.
/// Vertices of degree zero are dropped except the pair `keep`. Vertices are
/// ordered lexicographically by pair.
inline ProductGraph product(const XDigraph& left, const XDigraph& right,
                            std::optional<std::pair<Vertex, Vertex>> keep = std::nullopt) {
  if (left.alphabet().size() != right.alphabet().size()) {
    throw invalid_input("product: alphabets differ");
  }
  if (!is_folded(left) || !is_folded(right)) throw invalid_input("product: factors must be folded");
  const std::size_t m = right.vertex_count();
  auto id = [m](Vertex v, Vertex u) { return static_cast<std::size_t>(v) * m + u; };

  std::vector<std::vector<const Edge*>> by_label(left.alphabet().size());
  for (const auto& e : right.edges()) by_label[e.label].push_back(&e);
  std::vector<std::pair<std::size_t, std::pair<std::uint32_t, std::size_t>>> raw;  // (from, (label, to))
  std::vector<bool> touched(left.vertex_count() * m, false);
  for (const auto& e : left.edges()) {
    for (const Edge* f : by_label[e.label]) {
      std::size_t a = id(e.from, f->from);
      std::size_t b = id(e.to, f->to);
      raw.push_back({a, {e.label, b}});
      touched[a] = touched[b] = true;
    }
  }
  if (keep) touched.at(id(keep->first, keep->second)) = true;

  ProductGraph out;
  std::vector<Vertex> local(touched.size(), kNoVertex);
  for (std::size_t i = 0; i < touched.size(); ++i) {
    if (!touched[i]) continue;
    local[i] = static_cast<Vertex>(out.pairs.size());
    out.pairs.emplace_back(static_cast<Vertex>(i / m), static_cast<Vertex>(i % m));
  }
  out.graph = XDigraph(left.alphabet(), out.pairs.size());
  for (const auto& [a, rest] : raw) out.graph.add_edge(local[a], rest.first, local[rest.second]);
  out.graph.sort_edges();
  if (keep) out.kept = local[id(keep->first, keep->second)];
  return out;
}

// ---------------------------------------------------------------------------
// Regular completion

/// Adds edges (no vertices) until every vertex has exactly one incoming and
/// one outgoing edge per letter. For each letter, the k-th vertex lacking an
/// outgoing edge is joined to the k-th vertex lacking an incoming one.
inline XDigraph regular_complete(const XDigraph& g) {
  Transitions t(g);
  XDigraph out = g;
  for (std::uint32_t x = 0; x < g.alphabet().size(); ++x) {
    std::vector<Vertex> no_out;
    std::vector<Vertex> no_in;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (t.next(v, Letter::positive(x)) == kNoVertex) no_out.push_back(v);
      if (t.next(v, Letter::negative(x)) == kNoVertex) no_in.push_back(v);
    }
    for (std::size_t k = 0; k < no_out.size(); ++k) out.add_edge(no_out[k], x, no_in[k]);
  }
  return out;
}

}  // namespace stallings
