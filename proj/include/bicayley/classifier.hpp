#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bicayley/automorphism.hpp"
#include "bicayley/cayley.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"

namespace bicayley {

enum class Verdict { A1, A2, A3, A4, Good };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::A1: return "A1";
    case Verdict::A2: return "A2";
    case Verdict::A3: return "A3";
    case Verdict::A4: return "A4";
    case Verdict::Good: return "GOOD";
  }
  return "?";
}

/// Proper subgroup containing S.
struct A1Witness {
  Subgroup c;
};

/// Nontrivial automorphism fixing S and B setwise.
struct A2Witness {
  GroupAutomorphism alpha;
};

/// H <= K with |H|, |A:K| prime, H <= B and S \ K a union of H-cosets.
struct A3Witness {
  Subgroup h;
  Subgroup k;
};

enum class CyclicPart { Empty, Identity, Whole, WholeMinusIdentity };

inline std::string_view to_string(CyclicPart p) {
  switch (p) {
    case CyclicPart::Empty: return "empty";
    case CyclicPart::Identity: return "identity";
    case CyclicPart::Whole: return "C";
    case CyclicPart::WholeMinusIdentity: return "C-minus-identity";
  }
  return "?";
}

/// A = C x Z (C cyclic of order >= 4, Z elementary abelian 2-group) and
/// S = S' + S'' with S' one of the four special subsets of C, S'' in Z.
struct A4Witness {
  Subgroup c;
  Subgroup z;
  CyclicPart s_prime_kind;
  Bitset s_prime;
  Bitset s_double_prime;
};

using Witness = std::variant<std::monostate, A1Witness, A2Witness, A3Witness, A4Witness>;

struct Classification {
  Verdict verdict = Verdict::Good;
  Witness witness;
  std::vector<Verdict> all_matches;  // filled only on request
};

namespace detail {

/// A = C x Z with projections, precomputed once.
struct DirectDecomposition {
  Subgroup c;
  Subgroup z;
  std::vector<ElementIndex> c_part;  // a -> its C component
  std::vector<ElementIndex> z_part;  // a -> its Z component
};

inline std::optional<DirectDecomposition> decompose(const AbelianGroup& A, const Subgroup& C, const Subgroup& Z) {
  if (C.order() * Z.order() != A.size()) return std::nullopt;
  if (C.members().intersection_count(Z.members()) != 1) return std::nullopt;
  DirectDecomposition d{C, Z, std::vector<ElementIndex>(A.size()), std::vector<ElementIndex>(A.size())};
  const auto cs = C.members().indices();
  const auto zs = Z.members().indices();
  for (ElementIndex c : cs)
    for (ElementIndex z : zs) {
      const ElementIndex a = A.add(c, z);
      d.c_part[a] = c;
      d.z_part[a] = z;
    }
  return d;
}

inline bool is_elementary_two(const AbelianGroup& A, const Subgroup& Z) {
  bool ok = true;
  Z.members().for_each([&](std::size_t z) {
    if (A.add(static_cast<ElementIndex>(z), static_cast<ElementIndex>(z)) != A.identity()) ok = false;
  });
  return ok;
}

inline bool is_cyclic(const AbelianGroup& A, const Subgroup& C) {
  bool found = false;
  C.members().for_each([&](std::size_t c) {
    if (static_cast<std::size_t>(A.element_order(static_cast<ElementIndex>(c))) == C.order()) found = true;
  });
  return found;
}

/// S as S' + S'' in the given decomposition, if possible.
inline std::optional<A4Witness> split_product(const AbelianGroup& A, const DirectDecomposition& d, const Bitset& S) {
  Bitset sp = A.empty_set();
  Bitset spp = A.empty_set();
  if (S.none()) return A4Witness{d.c, d.z, CyclicPart::Empty, sp, spp};
  S.for_each([&](std::size_t a) {
    sp.set(d.c_part[a]);
    spp.set(d.z_part[a]);
  });
  if (sp.count() * spp.count() != S.count()) return std::nullopt;
  CyclicPart kind;
  const std::size_t n = sp.count();
  if (n == 1 && sp.test(A.identity())) kind = CyclicPart::Identity;
  else if (n == d.c.order()) kind = CyclicPart::Whole;
  else if (n + 1 == d.c.order() && !sp.test(A.identity())) kind = CyclicPart::WholeMinusIdentity;
  else return std::nullopt;
  return A4Witness{d.c, d.z, kind, std::move(sp), std::move(spp)};
}

}  // namespace detail

/// Every decomposition A = C x Z with C cyclic of order >= 4 and Z an
/// elementary abelian 2-group.
inline std::vector<std::pair<Subgroup, Subgroup>> cyclic_by_elementary_decompositions(const AbelianGroup& A) {
  std::vector<std::pair<Subgroup, Subgroup>> out;
  for (const auto& C : cyclic_subgroups(A, 4)) {
    const std::size_t rest = A.size() / C.order();
    if (!detail::is_power_of_two(rest)) continue;
    for (const auto& Z : elementary_two_subgroups(A, rest))
      if (C.members().intersection_count(Z.members()) == 1) out.emplace_back(C, Z);
  }
  return out;
}

/// Searches for an A4 quadruple for S.
inline std::optional<A4Witness> a4_witness_search(const AbelianGroup& A, const Bitset& S) {
  if (!ConnectionSet::from_bits(A, S).inverse_closed())
    throw Error(ErrorCode::NotInverseClosed, "connection set " + format_set(A, S) + " is not inverse-closed");
  for (const auto& [C, Z] : cyclic_by_elementary_decompositions(A)) {
    auto d = detail::decompose(A, C, Z);
    if (!d) continue;
    if (auto w = detail::split_product(A, *d, S)) return w;
  }
  return std::nullopt;
}

/// Precomputed candidate witnesses for one (A, B, mode), so that many
/// connection sets can be classified cheaply.
class Classifier {
 public:
  Classifier(const AbelianGroup& A, const Subgroup& B, Mode mode, std::size_t aut_cap = kDefaultAutEnumerationCap)
      : group_(A), b_(B), mode_(mode) {
    require_index_two(A, B);
    if (mode == Mode::Undirected && is_exceptional_pair(A, B))
      throw Error(ErrorCode::ExceptionalPair,
                  "(" + A.name() + ", " + isomorphism_type_name(invariant_factors(A, B)) +
                      ") is an exceptional pair; no inverse-closed set reaches index 2");
    // Over an exponent-2 group every Cayley digraph is a graph and the
    // directed classes apply unchanged.
    directed_rules_ = mode == Mode::Directed || A.exponent() == 2;

    maximal_ = prime_index_subgroups(A);

    const GroupAutomorphism iota = inversion_automorphism(A);
    for_each_automorphism(
        A,
        [&](GroupAutomorphism&& alpha) {
          if (alpha.is_identity()) return true;
          if (!directed_rules_ && alpha == iota) return true;
          if (alpha.stabilizes(B.members())) autos_.push_back(std::move(alpha));
          return true;
        },
        aut_cap);

    if (directed_rules_ || !A.is_two_group()) {
      const auto hs = prime_order_subgroups(A);
      for (const auto& K : maximal_)
        for (const auto& H : hs)
          if (H.is_subgroup_of(K) && H.is_subgroup_of(B)) hk_.emplace_back(H, K);
    }

    if (!directed_rules_)
      for (const auto& [C, Z] : cyclic_by_elementary_decompositions(A))
        if (auto d = detail::decompose(A, C, Z)) decompositions_.push_back(std::move(*d));
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const Subgroup& subgroup() const noexcept { return b_; }
  Mode mode() const noexcept { return mode_; }
  bool uses_directed_rules() const noexcept { return directed_rules_; }
  const std::vector<GroupAutomorphism>& candidate_automorphisms() const noexcept { return autos_; }
  const std::vector<std::pair<Subgroup, Subgroup>>& candidate_pairs() const noexcept { return hk_; }

  Classification classify(const Bitset& S, bool all_matches = false) const {
    check_admissible(S);
    Classification out;
    bool decided = false;
    auto record = [&](Verdict v, Witness w) {
      if (!decided) {
        out.verdict = v;
        out.witness = std::move(w);
        decided = true;
      }
      if (all_matches) out.all_matches.push_back(v);
    };

    if (auto w = match_a1(S)) record(Verdict::A1, std::move(*w));
    if (decided && !all_matches) return out;
    if (auto w = match_a2(S)) record(Verdict::A2, std::move(*w));
    if (decided && !all_matches) return out;
    if (auto w = match_a3(S)) record(Verdict::A3, std::move(*w));
    if (decided && !all_matches) return out;
    if (!directed_rules_)
      if (auto w = match_a4(S)) record(Verdict::A4, std::move(*w));
    if (!decided) {
      out.verdict = Verdict::Good;
      if (all_matches) out.all_matches.push_back(Verdict::Good);
    }
    return out;
  }

  std::optional<A1Witness> match_a1(const Bitset& S) const {
    for (const auto& C : maximal_)
      if (S.is_subset_of(C.members())) return A1Witness{C};
    return std::nullopt;
  }

  std::optional<A2Witness> match_a2(const Bitset& S) const {
    for (const auto& alpha : autos_)
      if (alpha.stabilizes(S)) return A2Witness{alpha};
    return std::nullopt;
  }

  std::optional<A3Witness> match_a3(const Bitset& S) const {
    for (const auto& [H, K] : hk_)
      if (coset_decompose(group_, H, S - K.members())) return A3Witness{H, K};
    return std::nullopt;
  }

  std::optional<A4Witness> match_a4(const Bitset& S) const {
    for (const auto& d : decompositions_)
      if (auto w = detail::split_product(group_, d, S)) return w;
    return std::nullopt;
  }

  /// Independent re-check of a witness against its defining property.
  bool verify(const Bitset& S, const Classification& c) const {
    const AbelianGroup& A = group_;
    switch (c.verdict) {
      case Verdict::A1: {
        const auto& w = std::get<A1Witness>(c.witness);
        return w.c.order() < A.size() && generated_subgroup(A, S).is_subgroup_of(w.c);
      }
      case Verdict::A2: {
        const auto& w = std::get<A2Witness>(c.witness);
        if (!w.alpha.is_automorphism(A) || w.alpha.is_identity()) return false;
        if (!directed_rules_ && w.alpha == inversion_automorphism(A)) return false;
        return w.alpha.stabilizes(S) && w.alpha.stabilizes(b_.members());
      }
      case Verdict::A3: {
        const auto& w = std::get<A3Witness>(c.witness);
        return w.h.order() > 1 && w.h.is_subgroup_of(w.k) && w.k.order() < A.size() && w.h.is_subgroup_of(b_) &&
               detail::is_prime(static_cast<std::int64_t>(w.h.order())) &&
               detail::is_prime(static_cast<std::int64_t>(A.size() / w.k.order())) &&
               coset_decompose(A, w.h, S - w.k.members());
      }
      case Verdict::A4: {
        const auto& w = std::get<A4Witness>(c.witness);
        if (directed_rules_) return false;
        if (w.c.order() < 4 || !detail::is_cyclic(A, w.c) || !detail::is_elementary_two(A, w.z)) return false;
        if (w.c.order() * w.z.order() != A.size() || w.c.members().intersection_count(w.z.members()) != 1)
          return false;
        if (!w.s_prime.is_subset_of(w.c.members()) || !w.s_double_prime.is_subset_of(w.z.members())) return false;
        Bitset expected_prime = A.empty_set();
        switch (w.s_prime_kind) {
          case CyclicPart::Empty: break;
          case CyclicPart::Identity: expected_prime.set(A.identity()); break;
          case CyclicPart::Whole: expected_prime = w.c.members(); break;
          case CyclicPart::WholeMinusIdentity:
            expected_prime = w.c.members();
            expected_prime.reset(A.identity());
            break;
        }
        if (!(expected_prime == w.s_prime)) return false;
        Bitset product = A.empty_set();
        w.s_prime.for_each([&](std::size_t x) {
          w.s_double_prime.for_each([&](std::size_t y) {
            product.set(A.add(static_cast<ElementIndex>(x), static_cast<ElementIndex>(y)));
          });
        });
        return product == S;
      }
      case Verdict::Good:
        return !match_a1(S) && !match_a2(S) && !match_a3(S) && (directed_rules_ || !match_a4(S));
    }
    return false;
  }

 private:
  void check_admissible(const Bitset& S) const {
    if (S.size() != group_.size()) throw Error(ErrorCode::SetOutOfRange, "connection set does not belong to group");
    if (S.intersects(b_.members()))
      throw Error(ErrorCode::SetNotAvoidingB, "connection set " + format_set(group_, S) + " meets B");
    if (mode_ == Mode::Undirected && !ConnectionSet::from_bits(group_, S).inverse_closed())
      throw Error(ErrorCode::NotInverseClosed, "connection set " + format_set(group_, S) + " is not inverse-closed");
  }

  AbelianGroup group_;
  Subgroup b_;
  Mode mode_;
  bool directed_rules_ = true;
  std::vector<Subgroup> maximal_;
  std::vector<GroupAutomorphism> autos_;
  std::vector<std::pair<Subgroup, Subgroup>> hk_;
  std::vector<detail::DirectDecomposition> decompositions_;
};

inline Classification classify_directed(const AbelianGroup& A, const Subgroup& B, const Bitset& S,
                                        bool all_matches = false) {
  return Classifier(A, B, Mode::Directed).classify(S, all_matches);
}

inline Classification classify_undirected(const AbelianGroup& A, const Subgroup& B, const Bitset& S,
                                          bool all_matches = false) {
  return Classifier(A, B, Mode::Undirected).classify(S, all_matches);
}

}  // namespace bicayley
