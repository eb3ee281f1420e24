#pragma once

#include <limits>
#include <vector>

#include "bicayley/cayley.hpp"
#include "bicayley/error.hpp"
#include "bicayley/stabilizer.hpp"

namespace bicayley {

/// Automorphism data of a Cayley digraph. Right translations act
/// regularly, so |Aut| = |A| * |Aut_0| and the Cayley index is |Aut_0|.
struct AutReport {
  BigInt stabilizer_order;
  BigInt full_order;
  BigInt cayley_index;
  std::vector<Permutation> stabilizer_generators;
  std::uint64_t nodes = 0;
};

inline AutReport automorphism_report(const CayleyDigraph& G, const SearchLimits& limits = {}) {
  auto r = vertex_stabilizer(G.digraph(), G.group().identity(), limits);
  AutReport out;
  out.stabilizer_order = r.order;
  out.full_order = r.order * G.group().size();
  out.cayley_index = r.order;
  out.stabilizer_generators = std::move(r.generators);
  out.nodes = r.nodes;
  return out;
}

/// |Aut(Cay(A,S)) : A|.
inline BigInt cayley_index(const AbelianGroup& A, const Bitset& S, const SearchLimits& limits = {}) {
  return automorphism_report(build_cayley(A, S), limits).cayley_index;
}

/// Same, for survey loops that only need small values: saturates at
/// UINT64_MAX rather than overflowing.
inline std::uint64_t cayley_index_u64(const AbelianGroup& A, const Bitset& S, const SearchLimits& limits = {}) {
  const BigInt c = cayley_index(A, S, limits);
  if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(c);
}

inline bool is_drr(const AbelianGroup& A, const Bitset& S, const SearchLimits& limits = {}) {
  return cayley_index(A, S, limits) == 1;
}

/// Smallest index an undirected Cayley graph on A can have: inversion fixes
/// the identity vertex, so it is 2 unless A has exponent 2.
inline std::uint64_t minimal_graph_index(const AbelianGroup& A) { return A.exponent() == 2 ? 1 : 2; }

inline bool is_minimal_graph_index(const AbelianGroup& A, const Bitset& S, const SearchLimits& limits = {}) {
  if (!ConnectionSet::from_bits(A, S).inverse_closed())
    throw Error(ErrorCode::NotInverseClosed, "connection set " + format_set(A, S) + " is not inverse-closed");
  return cayley_index(A, S, limits) == minimal_graph_index(A);
}

}  // namespace bicayley
