#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "support/oracles.hpp"

using namespace stallings;
using fixtures::ab;
using fixtures::word;

namespace {

TEST(Oracle, NaiveReduce) {
  EXPECT_EQ(Word(oracle::naive_reduce(oracle::letters(Word(std::vector<Letter>{})))), Word{});
  std::vector<Letter> raw{Letter::positive(0), Letter::positive(1), Letter::negative(1), Letter::negative(0),
                          Letter::positive(1)};
  EXPECT_EQ(oracle::naive_reduce(raw), std::vector<Letter>{Letter::positive(1)});
}

TEST(Oracle, PartitionsCountBellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 0; n < 6; ++n) {
    std::size_t count = 0;
    oracle::for_each_partition(n, [&](const std::vector<std::uint32_t>&) { ++count; });
    EXPECT_EQ(count, bell[n]);
  }
}

TEST(Oracle, WhiteheadCount) {
  EXPECT_EQ(oracle::whitehead_count(1), 2u);
  EXPECT_EQ(oracle::whitehead_count(2), 20u);
  EXPECT_EQ(oracle::whitehead_count(3), 138u);
}

TEST(Oracle, Products) {
  auto p = oracle::products({word("a")}, 2);
  EXPECT_EQ(p, (std::set<Word>{Word{}, word("a"), word("A"), word("aa"), word("AA")}));
  EXPECT_EQ(oracle::products({word("ab"), word("B")}, 1).size(), 5u);
}

TEST(Oracle, PathReadsOnUnfoldedGraph) {
  // Two a-loops at 0 through distinct vertices: the Dyck relation glues them.
  XDigraph g(ab(), 3);
  g.add_edge(0, 0, 1);
  g.add_edge(0, 0, 2);
  g.add_edge(2, 1, 2);
  EXPECT_TRUE(oracle::path_reads(g, 1, 2, word("b")));
  EXPECT_TRUE(oracle::path_reads(g, 0, 0, word("abA")));
  EXPECT_FALSE(oracle::path_reads(g, 0, 0, word("a")));
  EXPECT_TRUE(oracle::path_reads(g, 1, 1, Word{}));
  EXPECT_TRUE(oracle::dyck_closure(g)[1][2]);
  EXPECT_FALSE(oracle::dyck_closure(g)[0][1]);
}

TEST(Oracle, CoreEdgesDropHairs) {
  XDigraph g(ab(), 3);
  g.add_edge(0, 0, 0);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 0, 2);
  EXPECT_EQ(oracle::core_edges(g, 0), (std::vector<bool>{true, false, false}));
  EXPECT_EQ(oracle::core_edges(g, 2), (std::vector<bool>{true, true, true}));
}

TEST(Oracle, SubstituteLetters) {
  auto x = parse_word("aB", Alphabet::standard(2));
  EXPECT_EQ(oracle::substitute_letters(x, {word("ab"), word("b")}), word("a"));
}

}  // namespace
