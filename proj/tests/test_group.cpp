#include <gtest/gtest.h>

#include "bicayley/automorphism.hpp"
#include "bicayley/group.hpp"
#include "bicayley/parse.hpp"
#include "oracles.hpp"

using namespace bicayley;

namespace {

Subgroup gen(const AbelianGroup& A, const std::string& text) {
  auto elems = parse_element_list(A, text);
  return generated_subgroup(A, elems);
}

}  // namespace

TEST(Group, BuildSizesAndExponents) {
  auto a = AbelianGroup::build({4, 2});
  EXPECT_EQ(a.size(), 8u);
  EXPECT_EQ(a.exponent(), 4);
  auto b = AbelianGroup::build({2, 2, 2});
  EXPECT_EQ(b.size(), 8u);
  EXPECT_EQ(b.exponent(), 2);
  auto c = AbelianGroup::build({3, 6});
  EXPECT_EQ(c.size(), 18u);
  EXPECT_EQ(c.exponent(), 6);
}

TEST(Group, BuildErrors) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of([] { AbelianGroup::build({}); }), ErrorCode::EmptyOrders);
  EXPECT_EQ(code_of([] { AbelianGroup::build({4, 1}); }), ErrorCode::OrderBelowTwo);
  EXPECT_EQ(code_of([] { AbelianGroup::build({1024, 1024, 2}); }), ErrorCode::SizeCapExceeded);
  EXPECT_EQ(code_of([] { AbelianGroup::build({16, 16}, 100); }), ErrorCode::SizeCapExceeded);
}

TEST(Group, CodecAndArithmeticAgreeWithOracle) {
  for (const auto& orders : oracle::factor_multisets(24)) {
    auto A = AbelianGroup::build(orders);
    oracle::Group G{orders};
    ASSERT_EQ(A.size(), static_cast<std::size_t>(G.size()));
    for (ElementIndex a = 0; a < A.size(); ++a) {
      EXPECT_EQ(A.encode(A.decode(a)), a);
      EXPECT_EQ(A.neg(A.neg(a)), a);
      EXPECT_EQ(static_cast<int>(A.neg(a)), G.neg(static_cast<int>(a)));
      EXPECT_EQ(A.element_order(a), G.order(static_cast<int>(a)));
      EXPECT_EQ(A.element_order(A.neg(a)), A.element_order(a));
      EXPECT_EQ(generated_subgroup(A, std::vector<ElementIndex>{a}).order(),
                static_cast<std::size_t>(A.element_order(a)));
      for (ElementIndex b = 0; b < A.size(); ++b)
        ASSERT_EQ(static_cast<int>(A.add(a, b)), G.add(static_cast<int>(a), static_cast<int>(b)));
    }
  }
}

TEST(Group, LargeGroupArithmeticWithoutTables) {
  auto A = AbelianGroup::build({64, 32, 2});
  oracle::Group G{{64, 32, 2}};
  for (ElementIndex a = 0; a < A.size(); a += 97)
    for (ElementIndex b = 0; b < A.size(); b += 131)
      ASSERT_EQ(static_cast<int>(A.add(a, b)), G.add(static_cast<int>(a), static_cast<int>(b)));
}

TEST(Group, ElementOrders) {
  auto A = parse_group("C4xC2");
  EXPECT_EQ(element_order(A, A.identity()), 1);
  EXPECT_EQ(element_order(A, Element{{2, 1}}), 2);
  EXPECT_EQ(element_order(A, Element{{1, 1}}), 4);
}

TEST(Group, InvolutionSubgroup) {
  auto a = parse_group("C4xC2");
  auto a2 = involution_subgroup(a);
  EXPECT_EQ(a2.order(), 4u);
  for (ElementIndex x = 0; x < a.size(); ++x) EXPECT_EQ(a2.contains(x), a.coord(x, 0) % 2 == 0);
  EXPECT_EQ(involution_subgroup(parse_group("C2^3")).order(), 8u);
  auto c = parse_group("C3xC6");
  auto c2 = involution_subgroup(c);
  EXPECT_EQ(c2.order(), 2u);
  EXPECT_TRUE(c2.contains(c.encode(Element{{0, 3}})));
}

TEST(Group, GeneratedSubgroups) {
  auto A = parse_group("C4xC2");
  EXPECT_EQ(generated_subgroup(A, std::vector<ElementIndex>{}).order(), 1u);
  EXPECT_EQ(gen(A, "1,0").order(), 4u);
  EXPECT_EQ(gen(A, "1,0;0,1").order(), 8u);
}

TEST(Group, SubgroupClosureExhaustive) {
  for (const auto& orders : oracle::factor_multisets(16)) {
    auto A = AbelianGroup::build(orders);
    oracle::Group G{orders};
    for (const auto& H : all_subgroups(A)) {
      std::vector<bool> member(A.size());
      for (ElementIndex x = 0; x < A.size(); ++x) member[x] = H.contains(x);
      EXPECT_TRUE(oracle::is_subgroup(G, member));
      EXPECT_EQ(A.size() % H.order(), 0u);
    }
  }
}

TEST(Group, CosetDecompose) {
  auto A = parse_group("C6");
  auto H = gen(A, "2");
  EXPECT_EQ(H.order(), 3u);
  EXPECT_TRUE(coset_decompose(A, H, A.empty_set()));
  Bitset odd = A.empty_set();
  for (ElementIndex x : {1u, 3u, 5u}) odd.set(x);
  EXPECT_TRUE(coset_decompose(A, H, odd));
  Bitset one = A.empty_set();
  one.set(1);
  EXPECT_FALSE(coset_decompose(A, H, one));
}

TEST(Group, InvariantFactors) {
  EXPECT_EQ(parse_group("C2xC4").invariant_factors(), (std::vector<int>{2, 4}));
  EXPECT_EQ(parse_group("C3xC6").invariant_factors(), (std::vector<int>{3, 6}));
  EXPECT_EQ(parse_group("C2xC3").invariant_factors(), (std::vector<int>{6}));
  EXPECT_EQ(parse_group("C4xC6xC10").invariant_factors(), (std::vector<int>{2, 2, 60}));
  auto A = parse_group("C4xC2");
  EXPECT_EQ(invariant_factors(A, involution_subgroup(A)), (std::vector<int>{2, 2}));
  EXPECT_EQ(invariant_factors(A, gen(A, "1,1")), (std::vector<int>{4}));
}

TEST(Parse, GroupGrammar) {
  EXPECT_EQ(parse_group_spec("C4xC2^3"), (std::vector<int>{4, 2, 2, 2}));
  EXPECT_EQ(parse_group_spec(" C3 x C6 "), (std::vector<int>{3, 6}));
  try {
    parse_group_spec("C4yC2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos);
  }
  EXPECT_THROW(parse_group_spec("C1"), Error);
  EXPECT_THROW(parse_group_spec(""), Error);
}

TEST(Parse, ElementLists) {
  auto c6 = parse_group("C6");
  EXPECT_EQ(parse_element_list(c6, "1,3,5"), (std::vector<ElementIndex>{1, 3, 5}));
  auto A = parse_group("C4xC2");
  auto v = parse_element_list(A, "(1,0);3,1");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(A.format(v[1]), "(3,1)");
  EXPECT_THROW(parse_element_list(A, "1,0,1"), Error);
}

TEST(Aut, Inversion) {
  auto c2 = parse_group("C2^3");
  EXPECT_TRUE(inversion_automorphism(c2).is_identity());
  auto A = parse_group("C4xC2");
  EXPECT_EQ(A.format(inversion_automorphism(A)(A.encode(Element{{1, 1}}))), "(3,1)");
  EXPECT_EQ(inversion_automorphism(parse_group("C6")).order(), 2u);
}

TEST(Aut, CountsMatchBruteForce) {
  EXPECT_EQ(automorphism_count(parse_group("C6")), 2u);
  EXPECT_EQ(automorphism_count(parse_group("C2^3")), 168u);
  EXPECT_EQ(automorphism_count(parse_group("C4xC2")), 8u);
  for (const auto& orders : oracle::factor_multisets(16)) {
    auto A = AbelianGroup::build(orders);
    EXPECT_EQ(automorphism_count(A), oracle::automorphism_count(oracle::Group{orders})) << A.name();
  }
}

TEST(Aut, EnumeratedMapsAreAutomorphisms) {
  for (const auto& orders : oracle::factor_multisets(18)) {
    auto A = AbelianGroup::build(orders);
    std::set<std::vector<ElementIndex>> seen;
    const auto count = for_each_automorphism(A, [&](const GroupAutomorphism& alpha) {
      EXPECT_TRUE(alpha.is_bijection());
      EXPECT_TRUE(alpha.is_homomorphism(A));
      for (ElementIndex a = 0; a < A.size(); ++a) EXPECT_EQ(A.element_order(alpha(a)), A.element_order(a));
      seen.insert(std::vector<ElementIndex>(alpha.image().begin(), alpha.image().end()));
      return true;
    });
    EXPECT_EQ(seen.size(), count) << A.name();
    // |Aut(A)| <= |A|^floor(log2|A|)
    double bound = 1;
    for (std::size_t i = 0; (std::size_t{2} << i) <= A.size(); ++i) bound *= static_cast<double>(A.size());
    EXPECT_LE(static_cast<double>(count), bound);
  }
}

TEST(Aut, EnumerationCap) {
  try {
    automorphism_count(parse_group("C2^13"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(Aut, StabilizingAutomorphisms) {
  auto A = parse_group("C4xC2");
  EXPECT_EQ(stabilizing_automorphisms(A, involution_subgroup(A)).size(), 8u);
  auto c6 = parse_group("C6");
  EXPECT_EQ(stabilizing_automorphisms(c6, gen(c6, "2")).size(), 2u);
  auto v4 = parse_group("C2^2");
  EXPECT_EQ(stabilizing_automorphisms(v4, gen(v4, "1,0")).size(), 2u);
  EXPECT_THROW(stabilizing_automorphisms(A, gen(A, "2,0")), Error);
}

TEST(Aut, IndexTwoSubgroupsMatchBruteForce) {
  EXPECT_EQ(index2_subgroups(parse_group("C6")).size(), 1u);
  EXPECT_EQ(index2_subgroups(parse_group("C2^3")).size(), 7u);
  EXPECT_TRUE(index2_subgroups(parse_group("C3xC3")).empty());
  auto A = parse_group("C4xC2");
  auto subs = index2_subgroups(A);
  ASSERT_EQ(subs.size(), 3u);
  int cyclic = 0;
  for (const auto& B : subs) cyclic += invariant_factors(A, B) == std::vector<int>{4};
  EXPECT_EQ(cyclic, 2);
  for (const auto& orders : oracle::factor_multisets(16)) {
    auto G = AbelianGroup::build(orders);
    auto mine = index2_subgroups(G);
    auto theirs = oracle::index_two_subgroups(oracle::Group{orders});
    ASSERT_EQ(mine.size(), theirs.size()) << G.name();
    for (const auto& B : mine) {
      std::vector<bool> m(G.size());
      for (ElementIndex x = 0; x < G.size(); ++x) m[x] = B.contains(x);
      EXPECT_NE(std::find(theirs.begin(), theirs.end(), m), theirs.end());
    }
  }
}

TEST(Aut, PrimeOrderAndIndex) {
  auto c6 = parse_group("C6");
  auto po = prime_order_subgroups(c6);
  ASSERT_EQ(po.size(), 2u);
  auto pi = prime_index_subgroups(c6);
  ASSERT_EQ(pi.size(), 2u);
  std::multiset<std::size_t> orders;
  for (auto& H : pi) orders.insert(H.order());
  EXPECT_EQ(orders, (std::multiset<std::size_t>{2, 3}));
  EXPECT_EQ(prime_order_subgroups(parse_group("C4")).size(), 1u);
  EXPECT_EQ(prime_order_subgroups(parse_group("C2^2")).size(), 3u);
  for (const auto& orders2 : oracle::factor_multisets(32)) {
    auto A = AbelianGroup::build(orders2);
    EXPECT_LE(prime_order_subgroups(A).size(), A.size());
    EXPECT_LE(prime_index_subgroups(A).size(), A.size());
    EXPECT_LE(index2_subgroups(A).size(), A.size());
  }
}

TEST(Aut, FixInvertDecomposition) {
  auto A = parse_group("C4xC2");
  auto id = fix_invert_decomposition(A, GroupAutomorphism::identity(A));
  EXPECT_EQ(id.fixed.order(), 8u);
  EXPECT_EQ(id.inverted, involution_subgroup(A));
  auto inv = fix_invert_decomposition(A, inversion_automorphism(A));
  EXPECT_EQ(inv.fixed, involution_subgroup(A));
  EXPECT_EQ(inv.inverted.order(), 8u);
}

TEST(Aut, ExampleOneSmallest) {
  auto ex = example1_automorphism(1);
  const auto& A = ex.group;
  auto d = fix_invert_decomposition(A, ex.alpha);
  EXPECT_EQ(d.fixed, gen(A, "1,1"));
  EXPECT_EQ(d.inverted, gen(A, "1,0"));
  EXPECT_EQ(d.fixed.order(), 4u);
  EXPECT_EQ(ex.alpha.order(), 2u);
}

TEST(Aut, ExampleFamiliesInvariants) {
  auto check = [](const ExceptionalExample& ex) {
    const auto& A = ex.group;
    const auto& alpha = ex.alpha;
    EXPECT_TRUE(alpha.is_automorphism(A));
    EXPECT_FALSE(alpha.is_identity());
    EXPECT_NE(alpha, inversion_automorphism(A));
    EXPECT_TRUE(alpha.then(alpha).is_identity());
    EXPECT_TRUE(alpha.stabilizes(ex.b.members()));
    EXPECT_TRUE(is_exceptional_pair(A, ex.b));
    auto d = fix_invert_decomposition(A, alpha);
    for (ElementIndex a = 0; a < A.size(); ++a) {
      if (ex.b.contains(a)) continue;
      EXPECT_TRUE(d.fixed.contains(a) || d.inverted.contains(a));
      EXPECT_TRUE(alpha(a) == a || alpha(a) == A.neg(a));
    }
  };
  for (int ell = 1; ell <= 3; ++ell) check(example1_automorphism(ell));
  for (int ell = 0; ell <= 2; ++ell) check(example2_automorphism(ell));
  auto e2 = example2_automorphism(0);
  auto x = e2.group.encode(Element{{1, 1}});
  EXPECT_EQ(e2.alpha(x), e2.group.neg(x));
  EXPECT_THROW(example1_automorphism(0), Error);
}

TEST(Aut, ExceptionalPairs) {
  auto A = parse_group("C4xC2");
  EXPECT_TRUE(is_exceptional_pair(A, involution_subgroup(A)));
  EXPECT_FALSE(is_exceptional_pair(A, gen(A, "1,0")));
  auto c6 = parse_group("C6");
  EXPECT_FALSE(is_exceptional_pair(c6, gen(c6, "2")));
  auto c4 = parse_group("C4");
  EXPECT_FALSE(is_exceptional_pair(c4, gen(c4, "2")));
}

TEST(Aut, TwoOrbitsOnIndexTwoSubgroups) {
  // C4^2 x C2^l and C4 x C2^l with l >= 1: Aut(A) has two orbits on index-2 subgroups.
  for (auto spec : {"C4xC2", "C4xC2^2", "C4xC4xC2"}) {
    auto A = parse_group(spec);
    auto subs = index2_subgroups(A);
    auto auts = all_automorphisms(A);
    std::vector<int> orbit(subs.size(), -1);
    int orbits = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (orbit[i] >= 0) continue;
      for (const auto& alpha : auts) {
        Bitset img = alpha.apply(subs[i].members());
        for (std::size_t j = 0; j < subs.size(); ++j)
          if (subs[j].members() == img) orbit[j] = orbits;
      }
      ++orbits;
    }
    EXPECT_EQ(orbits, 2) << spec;
  }
}
