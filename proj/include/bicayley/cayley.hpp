#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bicayley/automorphism.hpp"
#include "bicayley/digraph.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"

namespace bicayley {

/// Directed: any S inside A \ B. Undirected: S must also be inverse-closed.
enum class Mode { Directed, Undirected };

inline std::string_view to_string(Mode m) { return m == Mode::Directed ? "directed" : "undirected"; }

/// Subset S of a group, with inverse-closure cached.
class ConnectionSet {
 public:
  ConnectionSet() = default;

  static ConnectionSet from_bits(const AbelianGroup& A, Bitset bits) {
    if (bits.size() != A.size())
      throw Error(ErrorCode::SetOutOfRange, "connection set sized for " + std::to_string(bits.size()) +
                                                " elements, group has " + std::to_string(A.size()));
    ConnectionSet s;
    s.bits_ = std::move(bits);
    s.inverse_closed_ = true;
    s.bits_.for_each([&](std::size_t a) {
      if (!s.bits_.test(A.neg(static_cast<ElementIndex>(a)))) s.inverse_closed_ = false;
    });
    return s;
  }

  static ConnectionSet from_elements(const AbelianGroup& A, const std::vector<ElementIndex>& elems) {
    Bitset bits = A.empty_set();
    for (ElementIndex a : elems) {
      if (a >= A.size()) throw Error(ErrorCode::SetOutOfRange, "element index " + std::to_string(a) + " outside group");
      bits.set(a);
    }
    return from_bits(A, std::move(bits));
  }

  const Bitset& bits() const noexcept { return bits_; }
  bool inverse_closed() const noexcept { return inverse_closed_; }
  std::size_t size() const noexcept { return bits_.count(); }
  bool contains(ElementIndex a) const noexcept { return bits_.test(a); }
  bool avoids(const Subgroup& B) const noexcept { return !bits_.intersects(B.members()); }
  std::vector<ElementIndex> elements() const { return bits_.indices(); }

  friend bool operator==(const ConnectionSet& a, const ConnectionSet& b) noexcept { return a.bits_ == b.bits_; }

 private:
  Bitset bits_;
  bool inverse_closed_ = true;
};

/// "{(1,0),(3,0)}" with elements in index order.
inline std::string format_set(const AbelianGroup& A, const Bitset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t a) {
    if (!first) out += ',';
    out += A.format(static_cast<ElementIndex>(a));
    first = false;
  });
  return out + "}";
}

/// Cay(A,S): arc g -> h iff g - h lies in S.
class CayleyDigraph {
 public:
  CayleyDigraph(AbelianGroup A, ConnectionSet S) : group_(std::move(A)), conn_(std::move(S)), graph_(group_.size()) {
    const auto elems = conn_.elements();
    for (ElementIndex g = 0; g < group_.size(); ++g)
      for (ElementIndex s : elems) graph_.add_arc(g, group_.sub(g, s));
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const ConnectionSet& connection_set() const noexcept { return conn_; }
  const Digraph& digraph() const noexcept { return graph_; }
  bool is_graph() const noexcept { return conn_.inverse_closed(); }

 private:
  AbelianGroup group_;
  ConnectionSet conn_;
  Digraph graph_;
};

inline CayleyDigraph build_cayley(const AbelianGroup& A, const ConnectionSet& S) {
  if (S.bits().size() != A.size()) throw Error(ErrorCode::SetOutOfRange, "connection set does not belong to group");
  return CayleyDigraph(A, S);
}

inline CayleyDigraph build_cayley(const AbelianGroup& A, const Bitset& S) {
  return CayleyDigraph(A, ConnectionSet::from_bits(A, S));
}

/// Weak connectivity, i.e. S generates A.
inline bool is_connected(const CayleyDigraph& G) {
  return generated_subgroup(G.group(), G.connection_set().bits()).order() == G.group().size();
}

/// Every arc joins B to its complement.
inline bool bipartition_respected(const CayleyDigraph& G, const Subgroup& B) {
  require_index_two(G.group(), B);
  return G.connection_set().avoids(B);
}

/// Vertex permutation x -> x + a.
inline Permutation translation(const AbelianGroup& A, ElementIndex a) {
  Permutation p(A.size());
  for (ElementIndex x = 0; x < A.size(); ++x) p[x] = A.add(x, a);
  return p;
}

/// Vertex permutation induced by a group automorphism.
inline Permutation as_permutation(const GroupAutomorphism& alpha) {
  auto img = alpha.image();
  return Permutation(img.begin(), img.end());
}

}  // namespace bicayley
