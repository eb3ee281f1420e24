#include <gtest/gtest.h>

#include <random>

#include "bicayley/canonical.hpp"
#include "bicayley/cayley.hpp"
#include "bicayley/parse.hpp"
#include "oracles.hpp"

using namespace bicayley;

namespace {

Digraph cay(const std::string& group, const std::string& set) {
  auto A = parse_group(group);
  return build_cayley(A, ConnectionSet::from_elements(A, parse_element_list(A, set))).digraph();
}

std::vector<std::vector<bool>> matrix(const Digraph& g) {
  std::vector<std::vector<bool>> m(g.order(), std::vector<bool>(g.order()));
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = 0; v < g.order(); ++v) m[u][v] = g.has_arc(u, v);
  return m;
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t n, unsigned density) {
  Digraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 8 < density) g.add_arc(u, v);
  return g;
}

}  // namespace

TEST(Canonical, CayleyExamples) {
  EXPECT_EQ(canonical_form(cay("C6", "1")), canonical_form(cay("C6", "5")));
  EXPECT_NE(canonical_form(cay("C6", "1")), canonical_form(cay("C6", "2")));
  EXPECT_EQ(canonical_form(cay("C2^2", "0,1")), canonical_form(cay("C2^2", "1,0")));
}

TEST(Canonical, ByteLayout) {
  Digraph g(3);
  g.add_arc(0, 1);
  auto form = canonical_form(g);
  ASSERT_EQ(form.size(), 4u + 2u);
  EXPECT_EQ(form[3], 3);
  int ones = 0;
  for (std::size_t i = 4; i < form.size(); ++i) ones += __builtin_popcount(form[i]);
  EXPECT_EQ(ones, 1);
  EXPECT_EQ(form.back() & 0x7f, 0);  // 9 bits used out of 16
}

TEST(Canonical, LabelingReproducesForm) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto g = random_digraph(rng, 2 + rng() % 12, 1 + rng() % 6);
    auto r = canonical_labeling(g);
    auto relabeled = g.relabeled(r.labeling);
    EXPECT_EQ(canonical_form(relabeled), r.form);
    for (const auto& p : r.automorphisms) EXPECT_TRUE(g.is_automorphism(p));
  }
}

TEST(Canonical, RelabelingInvariance) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    auto g = random_digraph(rng, 1 + rng() % 20, 1 + rng() % 6);
    Permutation p = identity_permutation(g.order());
    std::shuffle(p.begin(), p.end(), rng);
    ASSERT_EQ(canonical_form(g), canonical_form(g.relabeled(p))) << g.to_adjacency_text();
  }
  for (const auto& spec : {std::pair{"C4xC2^2", "1,0,0;1,1,0;3,0,1"}, std::pair{"C2^5", "1,0,0,0,0;0,1,0,0,0"},
                           std::pair{"C3xC6", "0,1;1,1;2,3"}}) {
    auto g = cay(spec.first, spec.second);
    for (int t = 0; t < 10; ++t) {
      Permutation p = identity_permutation(g.order());
      std::shuffle(p.begin(), p.end(), rng);
      ASSERT_EQ(canonical_form(g), canonical_form(g.relabeled(p)));
    }
  }
}

TEST(Canonical, AgreesWithBruteForceIsomorphism) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + rng() % 5;
    auto a = random_digraph(rng, n, 1 + rng() % 6);
    auto b = random_digraph(rng, n, 1 + rng() % 6);
    if (rng() % 2) {
      Permutation p = identity_permutation(n);
      std::shuffle(p.begin(), p.end(), rng);
      b = a.relabeled(p);
      if (rng() % 2) {
        Vertex u = rng() % n, v = rng() % n;
        if (!b.has_arc(u, v)) b.add_arc(u, v);
      }
    }
    ASSERT_EQ(canonical_form(a) == canonical_form(b), oracle::isomorphic(matrix(a), matrix(b)))
        << a.to_adjacency_text() << "--\n" << b.to_adjacency_text();
  }
}

TEST(Canonical, HighlySymmetricGraphsFinish) {
  EXPECT_EQ(canonical_form(Digraph(200)).size(), 4u + 5000u);
  auto cube = cay("C2^8", "1,0,0,0,0,0,0,0;0,1,0,0,0,0,0,0;0,0,1,0,0,0,0,0;0,0,0,1,0,0,0,0;0,0,0,0,1,0,0,0;0,0,0,0,0,1,0,0;0,0,0,0,0,0,1,0;0,0,0,0,0,0,0,1");
  auto r = canonical_labeling(cube);
  EXPECT_FALSE(r.automorphisms.empty());
}

TEST(Canonical, Cap) {
  EXPECT_THROW(canonical_form(Digraph(257)), Error);
}
