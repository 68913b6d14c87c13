#pragma once

// Relative images Γ_H(K), principal quotients, algebraic and free
// extensions, algebraic closure, the isolation test, malnormal closure and
// isolator.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/intersect.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/whitehead.hpp"
#include "stallings/words.hpp"

namespace stallings {

struct ExtensionOptions {
  /// principal_quotients refuses Γ(K) with more vertices than this
  std::size_t vertex_bound = 10;
  std::size_t plateau_budget = kDefaultPlateauBudget;
};

/// Canonical order on subgroup graphs: more vertices first, then edge lists
/// lexicographically.
inline bool canonical_less(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return a.vertex_count() > b.vertex_count();
  auto ea = a.graph().edges();
  auto eb = b.graph().edges();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

inline bool is_subgroup(const SubgroupGraph& k, const SubgroupGraph& h) {
  return canonical_morphism(k.based(), h.based()).has_value();
}

// ---------------------------------------------------------------------------
// Relative images

struct RelativeImage {
  std::vector<bool> vertices;  // vertices of Γ(H) hit by Γ(K)
  std::vector<bool> edges;     // edges of Γ(H) hit by Γ(K)
  BasedGraph graph;            // the image as a graph, base = image of 1_K
  bool is_whole() const {
    return std::all_of(vertices.begin(), vertices.end(), [](bool b) { return b; }) &&
           std::all_of(edges.begin(), edges.end(), [](bool b) { return b; });
  }
};

/// Γ_H(K): the image of the canonical morphism Γ(K) -> Γ(H).
inline RelativeImage relative_image(const SubgroupGraph& k, const SubgroupGraph& h) {
  detail::require_same_alphabet(h, k);
  auto m = canonical_morphism(k.based(), h.based());
  if (!m) throw invalid_input("K is not a subgroup of H");
  RelativeImage out;
  out.vertices.assign(h.vertex_count(), false);
  out.edges.assign(h.edge_count(), false);
  for (Vertex v : m->vertex_map) out.vertices[v] = true;
  for (const auto& e : k.graph().edges()) {
    out.edges[h.transitions().edge((*m)(e.from), Letter::positive(e.label))] = true;
  }
  auto sub = extract_subgraph(h.graph(), out.vertices, out.edges);
  out.graph = {std::move(sub.graph), sub.vertex_map[h.base()]};
  return out;
}

// ---------------------------------------------------------------------------
// Principal quotients

struct PrincipalQuotient {
  SubgroupGraph graph;
  /// Γ(K) -> graph, surjective and base-preserving
  Morphism quotient_map;
};

/// All folded core quotients of Γ(K) up to based isomorphism, Γ(K) itself
/// included, in canonical order. Generated breadth-first by identifying one
/// pair of vertices and folding; every vertex partition is a composition of
/// such steps.
inline std::vector<PrincipalQuotient> principal_quotients(const SubgroupGraph& k, const ExtensionOptions& opt = {}) {
  if (k.vertex_count() > opt.vertex_bound) {
    throw resource_limit("principal quotients: graph has " + std::to_string(k.vertex_count()) +
                             " vertices, bound is " + std::to_string(opt.vertex_bound),
                         opt.vertex_bound);
  }
  std::vector<SubgroupGraph> found{k};
  std::set<std::vector<Edge>> seen_keys;
  auto key = [](const SubgroupGraph& g) {
    std::vector<Edge> out(g.graph().edges().begin(), g.graph().edges().end());
    out.push_back({static_cast<Vertex>(g.vertex_count()), 0, 0});
    return out;
  };
  seen_keys.insert(key(k));
  for (std::size_t head = 0; head < found.size(); ++head) {
    const SubgroupGraph cur = found[head];
    for (Vertex u = 0; u < cur.vertex_count(); ++u) {
      for (Vertex v = u + 1; v < cur.vertex_count(); ++v) {
        XDigraph merged(cur.alphabet(), cur.vertex_count());
        auto place = [&](Vertex w) { return w == v ? u : w; };
        for (const auto& e : cur.graph().edges()) merged.add_edge(place(e.from), e.label, place(e.to));
        auto q = SubgroupGraph::fold_and_core(merged, cur.base());
        if (seen_keys.insert(key(q)).second) found.push_back(std::move(q));
      }
    }
  }
  std::sort(found.begin(), found.end(), canonical_less);
  std::vector<PrincipalQuotient> out;
  for (auto& q : found) {
    auto m = canonical_morphism(k.based(), q.based());
    if (!m) throw error("internal: quotient does not receive Γ(K)");
    out.push_back({std::move(q), std::move(*m)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebraic and free extensions

struct ExtensionVerdict {
  enum class Kind { algebraic, free };
  Kind kind = Kind::algebraic;
  /// free: a proper free factor K' of H containing K
  std::optional<SubgroupGraph> factor;
  /// principal quotients examined
  std::size_t quotients_checked = 0;

  bool is_algebraic() const noexcept { return kind == Kind::algebraic; }
};

namespace detail {

inline ExtensionVerdict classify(const SubgroupGraph& k, const SubgroupGraph& h,
                                 const std::vector<PrincipalQuotient>& quotients, const ExtensionOptions& opt) {
  ExtensionVerdict out;
  if (k == h) return out;
  // A proper relative image is a subgraph of Γ(H), hence a free factor.
  auto image = relative_image(k, h);
  if (!image.is_whole()) {
    out.kind = ExtensionVerdict::Kind::free;
    out.factor = SubgroupGraph::from_graph(image.graph.graph, image.graph.base);
    return out;
  }
  for (const auto& q : quotients) {
    ++out.quotients_checked;
    if (q.graph == h || rank(q.graph) >= rank(h) || !is_subgroup(q.graph, h)) continue;
    if (is_free_factor(q.graph, h, opt.plateau_budget)) {
      out.kind = ExtensionVerdict::Kind::free;
      out.factor = q.graph;
      return out;
    }
  }
  return out;
}

}  // namespace detail

/// Whether K <= H is algebraic (no H = K' * C with K <= K', C ≠ 1) or free,
/// with a free-factor certificate in the latter case. K = H is algebraic.
inline ExtensionVerdict is_algebraic_extension(const SubgroupGraph& k, const SubgroupGraph& h,
                                               const ExtensionOptions& opt = {}) {
  detail::require_same_alphabet(h, k);
  if (!is_subgroup(k, h)) throw invalid_input("K is not a subgroup of H");
  if (k == h) return {};
  return detail::classify(k, h, principal_quotients(k, opt), opt);
}

/// Every algebraic extension of K, in canonical order (K itself first).
inline std::vector<SubgroupGraph> algebraic_extensions(const SubgroupGraph& k, const ExtensionOptions& opt = {}) {
  auto quotients = principal_quotients(k, opt);
  std::vector<SubgroupGraph> out;
  for (const auto& q : quotients) {
    if (detail::classify(k, q.graph, quotients, opt).is_algebraic()) out.push_back(q.graph);
  }
  return out;
}

namespace detail {

// The member of `list` contained in (largest) / containing (smallest) all others.
inline SubgroupGraph extreme(const std::vector<SubgroupGraph>& list, bool largest, const char* what) {
  for (const auto& c : list) {
    bool ok = std::all_of(list.begin(), list.end(), [&](const SubgroupGraph& other) {
      return largest ? is_subgroup(other, c) : is_subgroup(c, other);
    });
    if (ok) return c;
  }
  throw error(std::string("internal: no ") + what);
}

}  // namespace detail

/// cl(K): the largest algebraic extension of K in F(X).
inline SubgroupGraph algebraic_closure(const SubgroupGraph& k, const ExtensionOptions& opt = {}) {
  return detail::extreme(algebraic_extensions(k, opt), true, "largest algebraic extension");
}

/// K is algebraically closed in F(X) iff it is a free factor of F(X).
inline bool is_algebraically_closed(const SubgroupGraph& k, const ExtensionOptions& opt = {}) {
  return is_free_factor_of_ambient(k, opt.plateau_budget);
}

// ---------------------------------------------------------------------------
// Isolation

struct IsolationOptions {
  /// search words up to this length instead of the full bound M
  std::optional<std::uint64_t> depth_override;
  /// candidate words examined before giving up
  std::uint64_t word_budget = 1000000;
};

struct IsolationResult {
  bool isolated = true;
  /// (f, m) with f ∉ H and f^m ∈ H, m >= 2
  std::optional<std::pair<Word, std::size_t>> witness;
  /// the full bound M = [(2n)^k k^(2k) + 1](k + 1) + 2k (saturating)
  std::uint64_t full_bound = 0;
  /// length actually covered
  std::uint64_t searched_length = 0;
  /// true when the answer "isolated" rests on a search shorter than M
  bool bounded = false;
  std::uint64_t words_examined = 0;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

}  // namespace detail

/// Length bound for the isolation search, with m = k in the exponent.
inline std::uint64_t isolation_bound(std::uint64_t n, std::uint64_t k) {
  using namespace detail;
  std::uint64_t inner = saturating_add(saturating_mul(saturating_pow(2 * n, k), saturating_pow(k, 2 * k)), 1);
  return saturating_add(saturating_mul(inner, k + 1), 2 * k);
}

/// H is isolated iff no f ∉ H has f^m ∈ H for some 2 <= m <= #V. Words are
/// scanned in shortlex order up to the bound M (or the override); a witness
/// is definitive whenever it is found.
inline IsolationResult is_isolated(const SubgroupGraph& h, const IsolationOptions& opt = {}) {
  IsolationResult out;
  const std::uint64_t n = h.alphabet().size();
  const std::uint64_t k = h.vertex_count();
  out.full_bound = isolation_bound(n, k);
  // One vertex leaves no exponent 2 <= m <= k; malnormal subgroups are isolated.
  if (k == 1 || n == 0 || is_malnormal(h).malnormal) {
    out.searched_length = out.full_bound;
    return out;
  }
  const std::uint64_t limit = opt.depth_override ? std::min(*opt.depth_override, out.full_bound) : out.full_bound;
  const std::uint32_t width = static_cast<std::uint32_t>(2 * n);
  std::vector<Letter> word;
  std::vector<std::uint32_t> choice;
  for (std::uint64_t len = 1; len <= limit; ++len) {
    // Odometer over reduced words of exactly `len` letters, shortlex order.
    word.assign(len, Letter{0});
    choice.assign(len, 0);
    auto valid_from = [&](std::size_t pos) {
      // Fill positions pos.. with the least letters keeping the word reduced.
      for (std::size_t i = pos; i < len; ++i) {
        std::uint32_t c = 0;
        while (i > 0 && Letter{c} == word[i - 1].inverse()) ++c;
        word[i] = Letter{c};
      }
    };
    valid_from(0);
    for (;;) {
      if (out.words_examined >= opt.word_budget) {
        throw resource_limit("isolation search exhausted its budget of " + std::to_string(opt.word_budget) +
                                 " words at length " + std::to_string(len) + "; the full bound is " +
                                 std::to_string(out.full_bound),
                             out.full_bound);
      }
      ++out.words_examined;
      Word f(word);
      if (!contains(h, f)) {
        if (auto m = power_in(h, f)) {
          out.isolated = false;
          out.witness = {std::move(f), *m};
          out.searched_length = len;
          return out;
        }
      }
      // Advance to the next reduced word of the same length.
      std::size_t pos = len;
      bool advanced = false;
      while (pos > 0 && !advanced) {
        --pos;
        std::uint32_t c = word[pos].code + 1;
        while (c < width && pos > 0 && Letter{c} == word[pos - 1].inverse()) ++c;
        if (c < width) {
          word[pos] = Letter{c};
          valid_from(pos + 1);
          advanced = true;
        }
      }
      if (!advanced) break;
    }
    out.searched_length = len;
  }
  out.bounded = limit < out.full_bound;
  return out;
}

// ---------------------------------------------------------------------------
// Closures

/// mal(K): the least malnormal algebraic extension of K. K must be nontrivial.
inline SubgroupGraph malnormal_closure(const SubgroupGraph& k, const ExtensionOptions& opt = {}) {
  if (k.is_trivial()) throw invalid_input("malnormal closure needs a nontrivial subgroup");
  std::vector<SubgroupGraph> candidates;
  for (auto& e : algebraic_extensions(k, opt)) {
    if (is_malnormal(e).malnormal) candidates.push_back(std::move(e));
  }
  return detail::extreme(candidates, false, "least malnormal algebraic extension");
}

/// iso(K): the least isolated algebraic extension of K. K must be nontrivial.
inline SubgroupGraph isolator(const SubgroupGraph& k, const ExtensionOptions& opt = {},
                              const IsolationOptions& iso = {}) {
  if (k.is_trivial()) throw invalid_input("isolator needs a nontrivial subgroup");
  std::vector<SubgroupGraph> candidates;
  for (auto& e : algebraic_extensions(k, opt)) {
    if (is_isolated(e, iso).isolated) candidates.push_back(std::move(e));
  }
  return detail::extreme(candidates, false, "least isolated algebraic extension");
}

}  // namespace stallings
