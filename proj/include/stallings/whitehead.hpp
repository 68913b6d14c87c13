#pragma once

// Whitehead automorphisms and the free-factor test.
//
// A multiplier (A, a) with a ∈ A, a^-1 ∉ A sends a -> a and every other
// letter x -> a^-[x^-1 ∈ A] x a^[x ∈ A]; with A = {a, b} and multiplier a
// this is b -> ba. Permutation automorphisms permute and invert generators.
//
// K is a free factor of F(X) iff some automorphism carries Type(Γ(K)) to a
// one-vertex rose. The search minimises #E of Type(Γ(φK)) by strict
// multiplier descent, then explores the set of equal-size states (up to
// relabelling of the base) breadth-first within a state budget.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

struct WhiteheadAuto {
  enum class Kind { permutation, multiplier };

  Kind kind = Kind::permutation;
  /// images[i] = φ(x_i)
  std::vector<Word> images;
  /// multiplier kind only
  Letter multiplier{};
  /// multiplier kind only; indexed by letter code
  std::vector<bool> carrier;

  std::size_t rank() const noexcept { return images.size(); }
  bool operator==(const WhiteheadAuto& other) const { return images == other.images; }
};

inline WhiteheadAuto identity_auto(std::size_t n) {
  WhiteheadAuto phi;
  for (std::uint32_t i = 0; i < n; ++i) phi.images.push_back(Word{Letter::positive(i)});
  return phi;
}

/// x_i -> images[i], where the images are signed letters covering every generator once.
inline WhiteheadAuto permutation_auto(const std::vector<Letter>& images) {
  std::vector<bool> used(images.size(), false);
  WhiteheadAuto phi;
  for (Letter l : images) {
    if (l.generator() >= images.size() || used[l.generator()]) {
      throw invalid_input("permutation automorphism must use each generator exactly once");
    }
    used[l.generator()] = true;
    phi.images.push_back(Word{l});
  }
  return phi;
}

inline WhiteheadAuto multiplier_auto(std::size_t n, Letter a, std::vector<bool> carrier) {
  if (a.generator() >= n || carrier.size() != 2 * n) throw invalid_input("multiplier outside the alphabet");
  if (!carrier[a.code] || carrier[a.inverse().code]) {
    throw invalid_input("multiplier carrier must contain a and not a^-1");
  }
  WhiteheadAuto phi;
  phi.kind = WhiteheadAuto::Kind::multiplier;
  phi.multiplier = a;
  for (std::uint32_t i = 0; i < n; ++i) {
    Letter x = Letter::positive(i);
    if (x.generator() == a.generator()) {
      phi.images.push_back(Word{x});
      continue;
    }
    std::vector<Letter> img;
    if (carrier[x.inverse().code]) img.push_back(a.inverse());
    img.push_back(x);
    if (carrier[x.code]) img.push_back(a);
    phi.images.emplace_back(std::move(img));
  }
  phi.carrier = std::move(carrier);
  return phi;
}

inline Word apply_auto(const WhiteheadAuto& phi, const Word& w) {
  std::vector<Letter> raw;
  for (Letter l : w) {
    if (l.generator() >= phi.rank()) throw invalid_input("word uses a letter outside the automorphism's domain");
    const Word& img = phi.images[l.generator()];
    if (l.is_inverse()) {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(it->inverse());
    } else {
      raw.insert(raw.end(), img.begin(), img.end());
    }
  }
  return Word(std::move(raw));
}

/// (A, a)^-1 = (A - a + a^-1, a^-1); permutations invert as permutations.
inline WhiteheadAuto inverse(const WhiteheadAuto& phi) {
  if (phi.kind == WhiteheadAuto::Kind::multiplier) {
    auto carrier = phi.carrier;
    carrier[phi.multiplier.code] = false;
    carrier[phi.multiplier.inverse().code] = true;
    return multiplier_auto(phi.rank(), phi.multiplier.inverse(), std::move(carrier));
  }
  std::vector<Letter> inv(phi.rank());
  for (std::uint32_t i = 0; i < phi.rank(); ++i) {
    Letter y = phi.images[i].front();
    inv[y.generator()] = y.is_inverse() ? Letter::negative(i) : Letter::positive(i);
  }
  return permutation_auto(inv);
}

/// "a->a, b->ba"
inline std::string describe(const WhiteheadAuto& phi, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    if (i > 0) out += ", ";
    out += format_word(Word{Letter::positive(static_cast<std::uint32_t>(i))}, alphabet) + "->" +
           format_word(phi.images[i], alphabet);
  }
  return out;
}

/// Non-identity multipliers, deduplicated by action, ordered by (a, carrier).
inline std::vector<WhiteheadAuto> enumerate_multipliers(std::size_t n) {
  std::vector<WhiteheadAuto> out;
  if (n == 0) return out;
  std::set<std::vector<Word>> seen{identity_auto(n).images};
  const std::size_t width = 2 * n;
  for (std::uint32_t code = 0; code < width; ++code) {
    Letter a{code};
    // Each other generator contributes two free bits: x ∈ A, x^-1 ∈ A.
    const std::uint64_t combos = std::uint64_t{1} << (2 * (n - 1));
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<bool> carrier(width, false);
      carrier[a.code] = true;
      std::uint64_t bits = mask;
      for (std::uint32_t c = 0; c < width; ++c) {
        if (Letter{c}.generator() == a.generator()) continue;
        carrier[c] = (bits & 1U) != 0;
        bits >>= 1;
      }
      auto phi = multiplier_auto(n, a, std::move(carrier));
      if (seen.insert(phi.images).second) out.push_back(std::move(phi));
    }
  }
  return out;
}

/// All signed permutations (identity first), ordered by image letters.
inline std::vector<WhiteheadAuto> enumerate_permutations(std::size_t n) {
  std::vector<WhiteheadAuto> out;
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  do {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      std::vector<Letter> images;
      for (std::uint32_t i = 0; i < n; ++i) {
        images.push_back(((signs >> i) & 1U) ? Letter::negative(perm[i]) : Letter::positive(perm[i]));
      }
      out.push_back(permutation_auto(images));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Signed permutations followed by non-identity multipliers; deduplicated.
/// Size n! 2^n + 2n(4^(n-1) - 1).
inline std::vector<WhiteheadAuto> enumerate_whitehead(const Alphabet& alphabet) {
  auto out = enumerate_permutations(alphabet.size());
  for (auto& phi : enumerate_multipliers(alphabet.size())) out.push_back(std::move(phi));
  return out;
}

/// φ(K) as a subgroup graph, computed from the images of a basis of K.
inline SubgroupGraph apply_auto(const WhiteheadAuto& phi, const SubgroupGraph& k) {
  std::vector<Word> gens;
  for (const auto& y : basis(k).elements) gens.push_back(apply_auto(phi, y));
  return stallings_graph(k.alphabet(), gens);
}

/// Canonical key of Type(Γ) as an unbased graph: the least canonical form
/// over all choices of base vertex.
struct TypeKey {
  std::size_t vertices = 0;
  std::vector<Edge> edges;

  auto operator<=>(const TypeKey&) const = default;
};

inline TypeKey type_key(const SubgroupGraph& k) {
  auto t = type_graph(k.based());
  TypeKey best;
  bool first = true;
  for (Vertex v = 0; v < t.graph.vertex_count(); ++v) {
    auto c = canonicalize({t.graph, v});
    TypeKey key{c.graph.graph.vertex_count(), {c.graph.graph.edges().begin(), c.graph.graph.edges().end()}};
    if (first || key < best) best = std::move(key);
    first = false;
  }
  return best;
}

inline constexpr std::size_t kDefaultPlateauBudget = 10000;

struct WhiteheadMinimum {
  /// φ(K) with Type(Γ(φK)) of least size
  SubgroupGraph minimal;
  /// automorphisms applied in order: minimal = φ_m(...φ_1(K))
  std::vector<WhiteheadAuto> path;
  /// equal-size states visited during the final plateau search
  std::size_t plateau_states = 0;
};

/// Minimises #E of Type(Γ(φK)). Stops early once the Type graph is a
/// one-vertex rose. Throws resource_limit when a plateau exceeds `budget`.
inline WhiteheadMinimum whitehead_minimize(const SubgroupGraph& k, std::size_t budget = kDefaultPlateauBudget) {
  const auto moves = enumerate_multipliers(k.alphabet().size());
  auto size_of = [](const SubgroupGraph& g) { return type_graph(g.based()).graph.edge_count(); };
  auto is_rose = [](const SubgroupGraph& g) { return type_graph(g.based()).graph.vertex_count() == 1; };

  WhiteheadMinimum best{k, {}, 0};
  std::size_t best_size = size_of(k);
  for (;;) {
    if (is_rose(best.minimal)) return best;
    // Strict descent: take the first move that shrinks the Type graph.
    bool improved = false;
    for (const auto& phi : moves) {
      auto next = apply_auto(phi, best.minimal);
      std::size_t s = size_of(next);
      if (s < best_size) {
        best_size = s;
        best.minimal = std::move(next);
        best.path.push_back(phi);
        improved = true;
        break;
      }
    }
    if (improved) continue;

    // Plateau: breadth-first over states of the same size.
    struct State {
      SubgroupGraph graph;
      std::vector<WhiteheadAuto> path;
    };
    std::set<TypeKey> visited{type_key(best.minimal)};
    std::deque<State> queue{{best.minimal, best.path}};
    bool escaped = false;
    while (!queue.empty() && !escaped) {
      State cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& phi : moves) {
        auto next = apply_auto(phi, cur.graph);
        std::size_t s = size_of(next);
        if (s > best_size) continue;
        auto path = cur.path;
        path.push_back(phi);
        if (s < best_size || is_rose(next)) {
          best_size = s;
          best.minimal = std::move(next);
          best.path = std::move(path);
          escaped = true;
          break;
        }
        if (!visited.insert(type_key(next)).second) continue;
        if (visited.size() > budget) {
          throw resource_limit("Whitehead plateau search exceeded " + std::to_string(budget) + " states", budget);
        }
        queue.push_back({std::move(next), std::move(path)});
      }
    }
    best.plateau_states = visited.size();
    if (!escaped) return best;
  }
}

/// K is a free factor of F(X). The trivial subgroup counts as one.
inline bool is_free_factor_of_ambient(const SubgroupGraph& k, std::size_t budget = kDefaultPlateauBudget) {
  if (k.is_trivial()) return true;
  if (rank(k) > k.alphabet().size()) return false;
  if (rank(k) == k.alphabet().size()) return index(k).index == std::size_t{1};
  auto m = whitehead_minimize(k, budget);
  return type_graph(m.minimal.based()).graph.vertex_count() == 1;
}

/// K is a free factor of H (requires K <= H): decided in the free group on a
/// basis of H after rewriting K there.
inline bool is_free_factor(const SubgroupGraph& k, const SubgroupGraph& h, std::size_t budget = kDefaultPlateauBudget) {
  return is_free_factor_of_ambient(express_in(k, h), budget);
}

}  // namespace stallings
