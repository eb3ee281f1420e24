#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bicayley/bitset.hpp"

namespace bicayley {

using Vertex = std::uint32_t;

/// Vertex permutation: perm[v] is the image of v.
using Permutation = std::vector<Vertex>;

/// Simple digraph (self-loops allowed, no multi-arcs) with both adjacency
/// bitsets and neighbor lists.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : out_bits_(n, Bitset(n)), out_(n), in_(n) {}

  static Digraph from_arcs(std::size_t n, std::span<const std::pair<Vertex, Vertex>> arcs) {
    Digraph g(n);
    for (auto [u, v] : arcs) g.add_arc(u, v);
    return g;
  }

  void add_arc(Vertex u, Vertex v) {
    if (out_bits_[u].test(v)) return;
    out_bits_[u].set(v);
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++arcs_;
  }

  std::size_t order() const noexcept { return out_.size(); }
  std::size_t arc_count() const noexcept { return arcs_; }
  bool has_arc(Vertex u, Vertex v) const noexcept { return out_bits_[u].test(v); }
  const Bitset& out_set(Vertex u) const noexcept { return out_bits_[u]; }
  std::span<const Vertex> out_neighbors(Vertex u) const noexcept { return out_[u]; }
  std::span<const Vertex> in_neighbors(Vertex u) const noexcept { return in_[u]; }

  bool is_symmetric() const {
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : out_[u])
        if (!has_arc(v, u)) return false;
    return true;
  }

  /// True iff perm maps arcs onto arcs (perm is assumed to be a bijection).
  bool is_automorphism(const Permutation& perm) const {
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : out_[u])
        if (!has_arc(perm[u], perm[v])) return false;
    return true;
  }

  /// The digraph with vertex v renamed perm[v].
  Digraph relabeled(const Permutation& perm) const {
    Digraph g(order());
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : out_[u]) g.add_arc(perm[u], perm[v]);
    return g;
  }

  /// DIMACS-like arc list: "p edge n m" then one "e u v" line per arc,
  /// vertices numbered from 1.
  std::string to_edge_list() const {
    std::string s = "p edge " + std::to_string(order()) + " " + std::to_string(arcs_) + "\n";
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : out_[u]) s += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return s;
  }

  /// One row of '0'/'1' characters per vertex.
  std::string to_adjacency_text() const {
    std::string s;
    for (Vertex u = 0; u < order(); ++u) {
      for (Vertex v = 0; v < order(); ++v) s += has_arc(u, v) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

 private:
  std::vector<Bitset> out_bits_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t arcs_ = 0;
};

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
  return p;
}

/// Cycle notation with 0-based vertex numbers, fixed points omitted;
/// the identity prints as "()".
inline std::string cycle_notation(const Permutation& perm) {
  std::string s;
  std::vector<char> seen(perm.size(), 0);
  for (Vertex v = 0; v < perm.size(); ++v) {
    if (seen[v] || perm[v] == v) continue;
    s += '(';
    Vertex w = v;
    bool first = true;
    while (!seen[w]) {
      seen[w] = 1;
      if (!first) s += ',';
      s += std::to_string(w);
      first = false;
      w = perm[w];
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

}  // namespace bicayley
