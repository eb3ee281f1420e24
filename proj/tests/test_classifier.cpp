#include <gtest/gtest.h>

#include <set>

#include "bicayley/classifier.hpp"
#include "bicayley/index.hpp"
#include "bicayley/parse.hpp"
#include "bicayley/subsets.hpp"
#include "oracles.hpp"

using namespace bicayley;

namespace {

constexpr std::size_t kBigAutCap = std::size_t{1} << 16;

Bitset set_of(const AbelianGroup& A, const std::string& text) {
  Bitset s = A.empty_set();
  for (ElementIndex a : parse_element_list(A, text)) s.set(a);
  return s;
}

Subgroup subgroup_of(const AbelianGroup& A, const std::string& gens) {
  return Subgroup::generated(A, parse_element_list(A, gens));
}

/// One representative factor list per isomorphism type.
std::vector<std::vector<int>> groups_up_to(int n, bool even_only = true) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (const auto& f : oracle::factor_multisets(n)) {
    auto A = AbelianGroup::build(f);
    if (even_only && A.size() % 2) continue;
    if (seen.insert(A.invariant_factors()).second) out.push_back(f);
  }
  return out;
}

std::vector<bool> to_bools(const Bitset& b) {
  std::vector<bool> v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v[i] = b.test(i);
  return v;
}

}  // namespace

TEST(Classifier, DirectedExamples) {
  auto A = parse_group("C6");
  auto B = subgroup_of(A, "2");
  EXPECT_EQ(classify_directed(A, B, A.empty_set()).verdict, Verdict::A1);
  EXPECT_TRUE(std::get<A1Witness>(classify_directed(A, B, A.empty_set()).witness).c.order() < 6);

  auto odd = classify_directed(A, B, set_of(A, "1,3,5"));
  ASSERT_EQ(odd.verdict, Verdict::A2);
  EXPECT_EQ(std::get<A2Witness>(odd.witness).alpha, inversion_automorphism(A));

  EXPECT_EQ(classify_directed(A, B, set_of(A, "1")).verdict, Verdict::Good);
  EXPECT_TRUE(is_drr(A, set_of(A, "1")));
}

TEST(Classifier, UndirectedExamples) {
  auto A = parse_group("C6");
  auto B = subgroup_of(A, "2");
  auto S = set_of(A, "1,3,5");
  Classifier cl(A, B, Mode::Undirected);
  auto c = cl.classify(S);
  ASSERT_EQ(c.verdict, Verdict::A3);
  const auto& w = std::get<A3Witness>(c.witness);
  EXPECT_EQ(w.h.order(), 3u);
  EXPECT_EQ(w.k, B);
  EXPECT_TRUE(cl.verify(S, c));
  EXPECT_EQ(cayley_index(A, S), 12);

  auto G = parse_group("C4xC2");
  auto Bc4 = subgroup_of(G, "(1,0)");
  auto T = set_of(G, "(0,1);(2,1)");
  auto ct = classify_undirected(G, Bc4, T);
  EXPECT_TRUE(Classifier(G, Bc4, Mode::Undirected).verify(T, ct));
  // <(0,1),(2,1)> is proper, so this one is disconnected
  EXPECT_EQ(ct.verdict, Verdict::A1);
  EXPECT_NE(cayley_index(G, T), 2);
}

TEST(Classifier, ExceptionalPairRejectedFirst) {
  auto A = parse_group("C4xC2");
  auto A2 = involution_subgroup(A);
  try {
    Classifier cl(A, A2, Mode::Undirected);
    FAIL() << "expected ExceptionalPair";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExceptionalPair);
  }
  EXPECT_NO_THROW(Classifier(A, A2, Mode::Directed));
}

TEST(Classifier, InputErrors) {
  auto A = parse_group("C6");
  auto B = subgroup_of(A, "2");
  auto code = [&](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([&] { classify_directed(A, B, set_of(A, "2")); }), ErrorCode::SetNotAvoidingB);
  EXPECT_EQ(code([&] { classify_undirected(A, B, set_of(A, "1")); }), ErrorCode::NotInverseClosed);
  EXPECT_EQ(code([&] { classify_directed(A, Subgroup::trivial(A), set_of(A, "1")); }), ErrorCode::BadSubgroup);
  EXPECT_EQ(code([&] { classify_directed(A, B, Bitset(5)); }), ErrorCode::SetOutOfRange);
}

TEST(Classifier, A4WitnessExamples) {
  auto C6 = parse_group("C6");
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    Bitset s = C6.empty_set();
    for (ElementIndex a = 0; a < 6; ++a)
      if (mask >> a & 1) s.set(a);
    if (!ConnectionSet::from_bits(C6, s).inverse_closed()) continue;
    // C6 x 1 is the only decomposition, so only the four special sets split
    const bool special = s.count() == 0 || s == set_of(C6, "0") || s.count() == 6 || s == set_of(C6, "1,2,3,4,5");
    EXPECT_EQ(a4_witness_search(C6, s).has_value(), special) << mask;
  }
  EXPECT_FALSE(a4_witness_search(C6, set_of(C6, "1,3,5")));

  auto A = parse_group("C4xC2");
  auto S = set_of(A, "(0,1);(1,1);(2,1);(3,1)");
  auto w = a4_witness_search(A, S);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->s_prime_kind, CyclicPart::Whole);
  EXPECT_EQ(w->c.order(), 4u);
  EXPECT_EQ(w->s_double_prime, set_of(A, "(0,1)"));

  auto e = a4_witness_search(A, A.empty_set());
  ASSERT_TRUE(e);
  EXPECT_EQ(e->s_prime_kind, CyclicPart::Empty);
}

TEST(Classifier, A1IffDisconnected) {
  for (const auto& f : groups_up_to(12)) {
    auto A = AbelianGroup::build(f);
    for (const auto& B : index2_subgroups(A)) {
      Classifier cl(A, B, Mode::Directed);
      AdmissibleSets(A, B, Mode::Directed).for_each([&](std::uint64_t, const Bitset& s) {
        const bool a1 = cl.classify(s).verdict == Verdict::A1;
        EXPECT_EQ(a1, !is_connected(build_cayley(A, s))) << A.name();
      });
    }
  }
}

TEST(Classifier, WitnessesReverifyAndMatchOracle) {
  for (const auto& f : groups_up_to(16)) {
    auto A = AbelianGroup::build(f);
    oracle::Group G{f};
    for (const auto& B : index2_subgroups(A))
      for (Mode mode : {Mode::Directed, Mode::Undirected}) {
        if (mode == Mode::Undirected && is_exceptional_pair(A, B)) continue;
        if (mode == Mode::Directed && A.size() > 12) continue;
        Classifier cl(A, B, mode, kBigAutCap);
        AdmissibleSets(A, B, mode).for_each([&](std::uint64_t, const Bitset& s) {
          auto c = cl.classify(s, true);
          ASSERT_TRUE(cl.verify(s, c)) << A.name() << " " << format_set(A, s);
          ASSERT_FALSE(c.all_matches.empty());
          EXPECT_EQ(c.all_matches.front(), c.verdict);
          // A1 agrees with a from-scratch closure
          const auto gen = oracle::generated(G, oracle::elements_of(to_bools(s)));
          const bool proper = oracle::count_members(gen) < G.size();
          EXPECT_EQ(c.verdict == Verdict::A1, proper);
        });
      }
  }
}

// The core claim: GOOD sets reach the minimum index.
TEST(Classifier, GoodImpliesMinimalIndex) {
  std::size_t good_directed = 0, good_undirected = 0;
  for (const auto& f : groups_up_to(16)) {
    auto A = AbelianGroup::build(f);
    oracle::Group G{f};
    for (const auto& B : index2_subgroups(A))
      for (Mode mode : {Mode::Directed, Mode::Undirected}) {
        if (mode == Mode::Undirected && is_exceptional_pair(A, B)) continue;
        if (mode == Mode::Directed && A.size() > 12) continue;
        Classifier cl(A, B, mode, kBigAutCap);
        const std::uint64_t target = mode == Mode::Directed ? 1 : minimal_graph_index(A);
        AdmissibleSets(A, B, mode).for_each([&](std::uint64_t, const Bitset& s) {
          if (cl.classify(s).verdict != Verdict::Good) return;
          (mode == Mode::Directed ? good_directed : good_undirected)++;
          const auto idx = cayley_index(A, s);
          EXPECT_EQ(idx, target) << A.name() << " " << to_string(mode) << " " << format_set(A, s);
          if (A.size() <= 8) {
            auto adj = oracle::cayley_adjacency(G, oracle::elements_of(to_bools(s)));
            EXPECT_EQ(oracle::stabilizer_order(adj, 0), target);
          }
        });
      }
  }
  EXPECT_GT(good_directed, 0u);
  EXPECT_GT(good_undirected, 0u);
}

TEST(Classifier, UndirectedTwoGroupSkipsA3) {
  auto A = parse_group("C8xC2");
  for (const auto& B : index2_subgroups(A)) {
    if (is_exceptional_pair(A, B)) continue;
    EXPECT_TRUE(Classifier(A, B, Mode::Undirected).candidate_pairs().empty());
    EXPECT_FALSE(Classifier(A, B, Mode::Directed).candidate_pairs().empty());
  }
  auto E = parse_group("C2^3");
  EXPECT_TRUE(Classifier(E, index2_subgroups(E).front(), Mode::Undirected).uses_directed_rules());
}
