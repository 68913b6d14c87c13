#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace stallings;
using fixtures::ab;
using fixtures::sub;
using fixtures::word;
using testsupport::Rng;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

bool injective(const Morphism& m) {
  std::set<Vertex> seen(m.vertex_map.begin(), m.vertex_map.end());
  return seen.size() == m.vertex_map.size();
}

void hall_example(Check& c) {
  auto h = fixtures::hall_h();
  auto g = fixtures::hall_g();
  c.expect(!contains(h, g), "ab already in H; ");
  auto hall = hall_completion(h, g);
  const auto& l = hall.completion;
  auto idx = index(l);
  c.expect(idx.index && *idx.index == 5, "index != 5; ");
  c.expect(!contains(l, g), "ab in L; ");
  auto m = canonical_morphism(h.based(), l.based());
  c.expect(m && injective(*m), "Gamma(H) not a subgraph of Gamma(L); ");
  c.expect(hall.basis.elements.size() == 6 && rank(l) == 6, "|Y| != 6; ");
  c.expect(hall.y_h.size() == 1 && hall.y_h[0] == word("bbAA"), "Y_H != {bbAA}; ");
  c.expect(hall.y_h.size() + hall.y_c.size() == 6, "split does not cover Y; ");
  c.expect(is_free_factor(h, l), "H not a free factor of L; ");
}

void product_example(Check& c) {
  auto h = fixtures::product_h();
  auto k = fixtures::product_k();
  auto p = product(h.graph(), k.graph(), std::make_pair(h.base(), k.base()));
  c.expect(is_connected(p.graph), "product not connected; ");
  auto core_at_base = core(p.graph, *p.kept);
  c.expect(core_at_base.graph.vertex_count() == p.graph.vertex_count() &&
               core_at_base.graph.edge_count() == p.graph.edge_count(),
           "product is not its own core; ");
  c.expect(p.graph.vertex_count() == 6 && p.graph.edge_count() == 7, "product not 6 vertices / 7 edges; ");
  auto i = intersection(h, k);
  c.expect(rank(i) == 2 && i.vertex_count() == 6 && i.edge_count() == 7, "intersection rank != 2; ");
}

void three_letter(Check& c) {
  auto g = fixtures::three_letter();
  const std::size_t width = g.alphabet().signed_size();
  std::set<Word> expected;
  for (int n = -5; n <= 5; ++n) {
    Word period = word("aB", fixtures::abc());
    expected.insert(n >= 0 ? power(period, static_cast<std::size_t>(n)) : power(invert(period), static_cast<std::size_t>(-n)));
  }
  std::set<Word> accepted;
  std::size_t scanned = 0;
  Transitions t(g);
  // Depth-first over every reduced word of length <= 10; the vertex reached
  // is carried along, kNoVertex once the path has left the graph.
  std::vector<Letter> w;
  std::function<void(Vertex)> dfs = [&](Vertex at) {
    ++scanned;
    if (at == 0) accepted.insert(Word(w));
    if (w.size() == 10) return;
    for (std::uint32_t code = 0; code < width; ++code) {
      Letter l{code};
      if (!w.empty() && l == w.back().inverse()) continue;
      w.push_back(l);
      dfs(at == kNoVertex ? kNoVertex : t.next(at, l));
      w.pop_back();
    }
  };
  dfs(0);
  c.expect(scanned == 1 + 6 * (std::size_t{9765625} - 1) / 4, "scan did not cover all reduced words; ");
  c.expect(accepted == expected, "accepted language differs from (aB)^n, |n| <= 5; ");
  for (const auto& w2 : accepted) c.expect(trace_path(g, 0, w2) == Vertex{0}, "trace_path disagrees; ");
  auto k = core(g, 0);
  bool has_c = std::any_of(k.graph.edges().begin(), k.graph.edges().end(), [](const Edge& e) { return e.label == 2; });
  c.expect(!has_c && k.graph.vertex_count() == 2 && k.graph.edge_count() == 2, "core kept the c-edge; ");
}

void six_vertex(Check& c) {
  auto f = fixtures::six_vertex();
  auto b = basis(f.graph, f.tree);
  std::vector<Word> expected;
  for (const char* s : fixtures::kSixVertexBasis) expected.push_back(word(s));
  c.expect(b.elements.size() == expected.size(), "basis size != 4; ");
  std::size_t verbatim = 0;
  std::size_t up_to_inverse = 0;
  for (const auto& e : expected) {
    bool same = std::find(b.elements.begin(), b.elements.end(), e) != b.elements.end();
    bool inv = std::find(b.elements.begin(), b.elements.end(), invert(e)) != b.elements.end();
    verbatim += same ? 1 : 0;
    up_to_inverse += (same || inv) ? 1 : 0;
  }
  c.expect(up_to_inverse == 4, "basis differs from the expected set; ");
  c.expect(verbatim >= 3, "fewer than three elements match verbatim; ");
  std::vector<std::size_t> nontree;
  for (std::size_t i = 0; i < f.tree.in_tree.size(); ++i) {
    if (!f.tree.in_tree[i]) nontree.push_back(i);
  }
  c.expect(nontree.size() == 4, "tree does not leave 4 non-tree edges; ");
}

void confluence(Check& c) {
  Rng rng(501);
  for (int trial = 0; trial < 100; ++trial) {
    auto gens = testsupport::random_generators(rng, 2 + trial % 2, 4, 8);
    Alphabet alphabet = Alphabet::standard(2 + trial % 2);
    auto w = oracle::wedge(alphabet, gens);
    Rng r1(trial * 2 + 1), r2(trial * 2 + 2);
    auto f1 = fold_all(w, &r1);
    auto f2 = fold_all(w, &r2);
    auto c1 = core(f1.graph, f1.vertex_trace[0]);
    auto c2 = core(f2.graph, f2.vertex_trace[0]);
    c.expect(based_isomorphism(c1, c2).has_value(), "random fold orders disagree; ");
    c.expect(f1.fold_count == w.edge_count() - f1.graph.edge_count(), "fold count mismatch; ");
    // A second generating set of the same subgroup: Nielsen moves.
    auto alt = gens;
    for (int step = 0; step < 4 && alt.size() > 1; ++step) {
      std::size_t i = testsupport::uniform(rng, 0, alt.size() - 1);
      std::size_t j = testsupport::uniform(rng, 0, alt.size() - 2);
      if (j >= i) ++j;
      alt[i] = testsupport::uniform(rng, 0, 1) ? multiply(alt[i], alt[j]) : multiply(invert(alt[j]), alt[i]);
    }
    std::reverse(alt.begin(), alt.end());
    auto h1 = stallings_graph(alphabet, gens);
    auto h2 = stallings_graph(alphabet, alt);
    bool mutual = std::all_of(gens.begin(), gens.end(), [&](const Word& x) { return contains(h2, x); }) &&
                  std::all_of(alt.begin(), alt.end(), [&](const Word& x) { return contains(h1, x); });
    c.expect(mutual, "Nielsen moves changed the subgroup; ");
    c.expect(based_isomorphism(h1.based(), h2.based()).has_value() && h1 == h2, "generating sets disagree; ");
  }
}

void schreier(Check& c) {
  Rng rng(602);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + trial % 2;
    auto h = testsupport::random_finite_index(rng, Alphabet::standard(n), 3, 6);
    auto idx = index(h);
    c.expect(idx.index.has_value(), "completion not of finite index; ");
    if (idx.index) c.expect(rank(h) - 1 == *idx.index * (n - 1), "Schreier formula fails; ");
  }
}

void membership(Check& c) {
  Rng rng(703);
  std::size_t disagreements = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto gens = testsupport::random_generators(rng, 2, 3, 5);
    auto h = stallings_graph(ab(), gens);
    auto bounded = oracle::products(gens, 6);
    auto w = oracle::wedge(ab(), gens);
    auto dyck = oracle::dyck_closure(w);
    for (int i = 0; i < 500; ++i) {
      Word x = i % 2 == 0 ? testsupport::random_element(rng, gens, testsupport::uniform(rng, 0, 6))
                          : testsupport::random_word(rng, 2, 0, 10);
      bool expected = bounded.count(x) > 0 || oracle::path_reads(w, 0, 0, x, dyck);
      if (i % 2 == 0 && !bounded.count(x)) ++disagreements;
      if (contains(h, x) != expected) ++disagreements;
    }
  }
  c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements; ");
}

void nielsen(Check& c) {
  Rng rng(804);
  for (int trial = 0; trial < 100; ++trial) {
    auto h = testsupport::random_subgroup(rng, Alphabet::standard(2 + trial % 2), 4, 7);
    auto b = basis(h, spanning_tree(h, true));
    c.expect(is_nielsen_reduced(b.elements), "geodesic basis not Nielsen reduced; ");
  }
}

void malnormality(Check& c) {
  c.expect(is_malnormal(sub("a")).malnormal, "<a> not malnormal; ");
  auto m = is_malnormal(sub("aa"));
  c.expect(!m.malnormal && m.witness && *m.witness == word("a"), "<a^2> verdict or witness wrong; ");
  Rng rng(905);
  int found = 0;
  for (int attempts = 0; found < 100 && attempts < 5000; ++attempts) {
    auto h = testsupport::random_subgroup(rng, ab(), 3, 6);
    auto r = is_malnormal(h);
    if (r.malnormal) continue;
    ++found;
    c.expect(r.witness.has_value(), "missing witness; ");
    if (!r.witness) continue;
    c.expect(!contains(h, *r.witness), "witness in H; ");
    c.expect(rank(intersection(conjugate(h, *r.witness), h)) >= 1, "gHg^-1 ∩ H trivial; ");
  }
  c.expect(found == 100, "too few non-malnormal samples; ");
}

void immersed(Check& c) {
  Rng rng(1006);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + trial % 2;
    auto gens = testsupport::random_immersed(rng, n, 7);
    c.expect(is_immersed(gens), "constructed tuple not immersed; ");
    c.expect(is_folded(oracle::wedge(Alphabet::standard(n), gens)), "wedge not folded; ");
    c.expect(is_cyclonormal(stallings_graph(Alphabet::standard(n), gens)), "immersed but not cyclonormal; ");
  }
}

void hanna_neumann(Check& c) {
  Rng rng(1107);
  int found = 0;
  for (int attempts = 0; found < 200 && attempts < 20000; ++attempts) {
    auto shared = testsupport::random_word(rng, 2, 1, 4);
    auto a = testsupport::random_generators(rng, 2, 3, 5);
    auto b = testsupport::random_generators(rng, 2, 3, 5);
    if (attempts % 2 == 0) {
      a.push_back(shared);
      b.push_back(power(shared, 2));
    }
    auto h = stallings_graph(ab(), a);
    auto k = stallings_graph(ab(), b);
    auto i = intersection(h, k);
    if (i.is_trivial()) continue;
    ++found;
    long lhs = static_cast<long>(rank(i)) - 1;
    long rhs = (static_cast<long>(rank(h)) - 1) * (static_cast<long>(rank(k)) - 1);
    c.expect(lhs <= rhs, "inequality fails; ");
    c.expect(hanna_neumann_check(h, k), "hanna_neumann_check false; ");
  }
  c.expect(found == 200, "too few pairs with nontrivial intersection; ");
}

void extensions(Check& c) {
  auto k = sub("aa");
  auto a = sub("a");
  c.expect(principal_quotients(k).size() == 2, "quotient count != 2; ");
  auto ext = algebraic_extensions(k);
  c.expect(ext.size() == 2 && std::count(ext.begin(), ext.end(), k) == 1 && std::count(ext.begin(), ext.end(), a) == 1,
           "extensions != {<a^2>, <a>}; ");
  c.expect(algebraic_closure(k) == a, "cl(<a^2>) != <a>; ");
  c.expect(malnormal_closure(k) == a, "mal(<a^2>) != <a>; ");
  c.expect(isolator(k) == a, "iso(<a^2>) != <a>; ");
  Rng rng(1208);
  int tested = 0;
  for (int attempts = 0; tested < 50 && attempts < 5000; ++attempts) {
    auto h = testsupport::random_subgroup(rng, ab(), 2, 4);
    if (h.vertex_count() > 6) continue;
    ++tested;
    bool closed = is_algebraically_closed(h);
    c.expect(closed == is_free_factor_of_ambient(h), "closed != free factor; ");
    c.expect(closed == (algebraic_closure(h) == h), "Whitehead and quotient routes disagree; ");
  }
  c.expect(tested == 50, "too few small subgroups; ");
}

void powers(Check& c) {
  Rng rng(1309);
  for (int trial = 0; trial < 100; ++trial) {
    Word g = testsupport::random_word(rng, 2, 1, 4);
    std::size_t n = testsupport::uniform(rng, 1, 5);
    auto gens = testsupport::random_generators(rng, 2, 2, 5);
    gens.push_back(power(g, n));
    auto h = stallings_graph(ab(), gens);
    auto m = power_in(h, g);
    c.expect(m.has_value(), "planted power not found; ");
    if (!m) continue;
    c.expect(*m >= 1 && *m <= h.vertex_count(), "m > #V; ");
    c.expect(contains(h, power(g, *m)), "g^m not in H; ");
    for (std::size_t j = 1; j < *m; ++j) c.expect(!contains(h, power(g, j)), "m not least; ");
    c.expect(n % *m == 0, "m does not divide the planted exponent; ");
  }
}

void greenberg_stallings(Check& c) {
  Rng rng(1410);
  for (int trial = 0; trial < 20; ++trial) {
    // Host subgroup L of rank r, free basis Y; A', B' of finite index in F(r).
    SubgroupGraph l;
    do {
      l = testsupport::random_subgroup(rng, ab(), 3, 4);
    } while (rank(l) < 2 || rank(l) > 3);
    auto y = basis(l).elements;
    Alphabet fr = Alphabet::standard(y.size());
    auto a = testsupport::random_finite_index(rng, fr, 2, 3);
    auto b = testsupport::random_finite_index(rng, fr, 2, 3);
    auto image = [&](const SubgroupGraph& s) {
      std::vector<Word> gens;
      for (const auto& w : basis(s).elements) gens.push_back(oracle::substitute_letters(w, y));
      return stallings_graph(ab(), gens);
    };
    auto h = image(a);
    auto k = image(b);
    auto i = intersection(h, k);
    auto j = join(h, k);
    auto in_h = relative_index(i, h);
    auto in_k = relative_index(i, k);
    auto in_j = relative_index(i, j);
    c.expect(in_h && in_k, "intersection not of finite index in both factors; ");
    c.expect(in_j.has_value(), "intersection of infinite index in the join; ");
    auto ab_meet = index(intersection(a, b)).index;
    auto ab_join = index(join(a, b)).index;
    if (in_j && ab_meet && ab_join) {
      c.expect(*in_j * *ab_join == *ab_meet, "relative index differs from the oracle; ");
    }
  }
}

void isolation(Check& c) {
  Alphabet a1 = Alphabet::from_letters("a");
  for (std::size_t p : {2, 3, 5}) {
    auto h = stallings_graph(a1, {power(parse_word("a", a1), p)});
    auto r = is_isolated(h);
    c.expect(!r.isolated && r.witness && r.witness->first == parse_word("a", a1) && r.witness->second == p,
             "a^" + std::to_string(p) + " verdict or witness wrong; ");
    c.expect(!r.bounded, "search marked bounded; ");
  }
  auto r = is_isolated(stallings_graph(a1, {parse_word("a", a1)}));
  c.expect(r.isolated && !r.bounded, "<a> not isolated; ");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"hall completion of <bbAA> avoiding ab", hall_example},
      {"product graph of <ab,Ba> and <aaa,Aba>", product_example},
      {"language and core of the three-letter graph", three_letter},
      {"basis of the six-vertex fixture", six_vertex},
      {"folding confluence and canonicity", confluence},
      {"Schreier index formula", schreier},
      {"membership against brute force", membership},
      {"geodesic bases are Nielsen reduced", nielsen},
      {"malnormality and witnesses", malnormality},
      {"immersed implies cyclonormal", immersed},
      {"Hanna Neumann inequality", hanna_neumann},
      {"algebraic extensions and closures", extensions},
      {"power membership bound", powers},
      {"Greenberg-Stallings finite index", greenberg_stallings},
      {"isolated test at the full bound", isolation},
  };
  int failures = 0;
  int number = 0;
  for (const auto& cr : criteria) {
    ++number;
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", number, cr.name, secs, c.ok ? "" : ": ",
                c.ok ? "" : c.detail.str().c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", number - failures, number);
  return failures == 0 ? 0 : 1;
}
