#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bicayley/digraph.hpp"
#include "bicayley/error.hpp"
#include "bicayley/refinement.hpp"
#include "bicayley/stabilizer.hpp"

namespace bicayley {

inline constexpr std::size_t kDefaultCanonicalVertexCap = std::size_t{1} << 8;

struct CanonicalLimits {
  std::size_t vertex_cap = kDefaultCanonicalVertexCap;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Canonical form bytes: the vertex count as 4 big-endian bytes, then the
/// adjacency matrix of the canonically relabeled digraph, row-major, packed
/// eight entries per byte with the first entry in the most significant bit.
using CanonicalForm = std::vector<std::uint8_t>;

struct CanonicalResult {
  CanonicalForm form;
  Permutation labeling;  // labeling[v] = canonical label of v
  std::vector<Permutation> automorphisms;
  std::uint64_t nodes = 0;
};

namespace detail {

class CanonicalSearch {
 public:
  CanonicalSearch(const Digraph& g, const CanonicalLimits& limits) : g_(g), limits_(limits), refiner_(g) {}

  CanonicalResult run() {
    Partition p = Partition::unit(g_.order());
    traces_.push_back(refiner_.refine_all(p));
    count_node();
    explore(p, 0, 0, true);
    CanonicalResult out;
    const std::uint32_t n = static_cast<std::uint32_t>(g_.order());
    out.form.resize(4 + best_->adj.size());
    for (int i = 0; i < 4; ++i) out.form[i] = static_cast<std::uint8_t>(n >> (24 - 8 * i));
    std::copy(best_->adj.begin(), best_->adj.end(), out.form.begin() + 4);
    out.labeling.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) out.labeling[best_->lab[i]] = i;
    out.automorphisms = std::move(generators_);
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Leaf {
    std::vector<std::uint64_t> traces;
    std::vector<Vertex> path;
    std::vector<Vertex> lab;
    std::vector<std::uint8_t> adj;
  };

  static constexpr int kNoJump = INT_MAX;

  void count_node() {
    if (++nodes_ > limits_.node_budget)
      throw Error(ErrorCode::Timeout,
                  "canonical labeling exceeded node budget of " + std::to_string(limits_.node_budget));
  }

  std::vector<std::uint8_t> adjacency_bits(const std::vector<Vertex>& lab) const {
    const std::size_t n = lab.size();
    std::vector<std::uint8_t> bits((n * n + 7) / 8, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++k)
        if (g_.has_arc(lab[i], lab[j])) bits[k >> 3] |= static_cast<std::uint8_t>(0x80u >> (k & 7));
    return bits;
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  int record_automorphism(const Leaf& other, const std::vector<Vertex>& lab) {
    Permutation perm(g_.order());
    for (std::size_t i = 0; i < lab.size(); ++i) perm[other.lab[i]] = lab[i];
    if (g_.is_automorphism(perm)) generators_.push_back(std::move(perm));
    return static_cast<int>(common_prefix(other.path, path_));
  }

  /// cmp: sign of (traces so far) versus the best leaf's prefix, 0 if equal.
  int explore(const Partition& p, std::size_t depth, int cmp, bool eq_first) {
    if (best_) {
      const std::uint64_t t = traces_[depth];
      if (cmp == 0) {
        if (depth >= best_->traces.size() || t > best_->traces[depth]) cmp = 1;
        else if (t < best_->traces[depth]) cmp = -1;
      }
      if (eq_first && (depth >= first_->traces.size() || t != first_->traces[depth])) eq_first = false;
      if (cmp > 0 && !eq_first) return kNoJump;
    }

    if (p.discrete()) {
      auto adj = adjacency_bits(p.lab);
      if (!first_) {
        first_ = Leaf{traces_, path_, p.lab, adj};
        best_ = first_;
        return kNoJump;
      }
      if (eq_first && first_->traces.size() == depth + 1 && adj == first_->adj)
        return record_automorphism(*first_, p.lab);
      if (cmp == 0 && best_->traces.size() == depth + 1) {
        if (adj == best_->adj) return record_automorphism(*best_, p.lab);
        if (adj < best_->adj) best_ = Leaf{traces_, path_, p.lab, std::move(adj)};
      } else if (cmp < 0) {
        best_ = Leaf{traces_, path_, p.lab, std::move(adj)};
      }
      return kNoJump;
    }

    const std::uint32_t t = p.smallest_nontrivial_cell();
    std::vector<Vertex> explored;
    for (Vertex w : p.cell_members(t)) {
      if (!explored.empty() && equivalent_to_explored(w, explored)) continue;
      Partition child = p;
      traces_.push_back(refiner_.individualize(child, w));
      count_node();
      path_.push_back(w);
      const int r = explore(child, depth + 1, cmp, eq_first);
      path_.pop_back();
      traces_.pop_back();
      explored.push_back(w);
      if (r < static_cast<int>(depth)) return r;
      // The best leaf may have changed; recompute the comparison state.
      cmp = compare_prefix(depth);
    }
    return kNoJump;
  }

  int compare_prefix(std::size_t depth) const {
    for (std::size_t i = 0; i <= depth; ++i) {
      if (i >= best_->traces.size()) return 1;
      if (traces_[i] != best_->traces[i]) return traces_[i] < best_->traces[i] ? -1 : 1;
    }
    return 0;
  }

  /// w lies in the orbit of an explored sibling under the automorphisms
  /// found so far that fix the current path pointwise.
  bool equivalent_to_explored(Vertex w, const std::vector<Vertex>& explored) const {
    UnionFind uf(g_.order());
    bool any = false;
    for (const auto& gen : generators_) {
      bool fixes = true;
      for (Vertex x : path_)
        if (gen[x] != x) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      any = true;
      for (Vertex x = 0; x < gen.size(); ++x) uf.unite(x, gen[x]);
    }
    if (!any) return false;
    for (Vertex u : explored)
      if (uf.find(u) == uf.find(w)) return true;
    return false;
  }

  const Digraph& g_;
  CanonicalLimits limits_;
  Refiner refiner_;
  std::vector<std::uint64_t> traces_;
  std::vector<Vertex> path_;
  std::optional<Leaf> first_;
  std::optional<Leaf> best_;
  std::vector<Permutation> generators_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline CanonicalResult canonical_labeling(const Digraph& g, const CanonicalLimits& limits = {}) {
  if (g.order() > limits.vertex_cap)
    throw Error(ErrorCode::CapExceeded, "digraph has " + std::to_string(g.order()) +
                                            " vertices, canonical form cap is " + std::to_string(limits.vertex_cap));
  return detail::CanonicalSearch(g, limits).run();
}

/// Byte string equal for two digraphs exactly when they are isomorphic.
inline CanonicalForm canonical_form(const Digraph& g, const CanonicalLimits& limits = {}) {
  return canonical_labeling(g, limits).form;
}

inline std::string to_hex(const CanonicalForm& form) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(form.size() * 2);
  for (std::uint8_t b : form) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

}  // namespace bicayley
