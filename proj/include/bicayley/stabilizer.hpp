#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bicayley/digraph.hpp"
#include "bicayley/error.hpp"
#include "bicayley/refinement.hpp"

namespace bicayley {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultSearchVertexCap = std::size_t{1} << 12;
inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 26;

struct SearchLimits {
  std::size_t vertex_cap = kDefaultSearchVertexCap;
  std::uint64_t node_budget = kDefaultNodeBudget;  // refinement calls per search
};

struct StabilizerResult {
  BigInt order;
  std::vector<Permutation> generators;
  std::vector<Vertex> base;                // first-path branch vertices, outermost first
  std::vector<std::size_t> orbit_lengths;  // basic orbit lengths along the base
  std::uint64_t nodes = 0;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Individualization-refinement search for the stabilizer of one vertex.
class StabilizerSearch {
 public:
  StabilizerSearch(const Digraph& g, const SearchLimits& limits) : g_(g), limits_(limits), refiner_(g) {}

  StabilizerResult run(Vertex v) {
    StabilizerResult out;
    const std::size_t n = g_.order();
    Partition p = Partition::unit(n);
    refiner_.refine_all(p);
    count_node();
    traces_.push_back(refiner_.individualize(p, v));
    count_node();
    path_.push_back(p);
    while (!path_.back().discrete()) {
      const Partition& cur = path_.back();
      const std::uint32_t t = cur.smallest_nontrivial_cell();
      const Vertex b = cur.cell_members(t).front();
      targets_.push_back(t);
      out.base.push_back(b);
      Partition next = cur;
      traces_.push_back(refiner_.individualize(next, b));
      count_node();
      path_.push_back(std::move(next));
    }

    const std::size_t depth = targets_.size();
    UnionFind orbits(n);
    out.orbit_lengths.assign(depth, 1);
    out.order = 1;
    for (std::size_t j = depth; j-- > 0;) {
      const Vertex b = out.base[j];
      std::vector<Vertex> failed;
      for (Vertex w : path_[j].cell_members(targets_[j])) {
        if (orbits.find(w) == orbits.find(b)) continue;
        bool known_bad = false;
        for (Vertex f : failed)
          if (orbits.find(f) == orbits.find(w)) {
            known_bad = true;
            break;
          }
        if (known_bad) continue;
        Partition q = path_[j];
        const std::uint64_t tr = refiner_.individualize(q, w);
        count_node();
        std::optional<Permutation> found;
        if (tr == traces_[j + 1] && q.same_shape(path_[j + 1])) found = descend(q, j + 1);
        if (!found) {
          failed.push_back(w);
          continue;
        }
        for (Vertex x = 0; x < n; ++x) orbits.unite(x, (*found)[x]);
        out.generators.push_back(std::move(*found));
      }
      std::size_t len = 0;
      for (Vertex x : path_[j].cell_members(targets_[j]))
        if (orbits.find(x) == orbits.find(b)) ++len;
      out.orbit_lengths[j] = len;
      out.order *= len;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  void count_node() {
    if (++nodes_ > limits_.node_budget)
      throw Error(ErrorCode::Timeout, "stabilizer search exceeded node budget of " +
                                          std::to_string(limits_.node_budget));
  }

  /// Looks for a leaf below q (at depth k) equivalent to the first leaf.
  std::optional<Permutation> descend(const Partition& q, std::size_t k) {
    if (k == targets_.size()) {
      const Partition& leaf = path_.back();
      Permutation perm(g_.order());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[leaf.lab[i]] = q.lab[i];
      if (g_.is_automorphism(perm)) return perm;
      return std::nullopt;
    }
    const std::uint32_t t = targets_[k];
    for (Vertex u : q.cell_members(t)) {
      Partition r = q;
      const std::uint64_t tr = refiner_.individualize(r, u);
      count_node();
      if (tr != traces_[k + 1] || !r.same_shape(path_[k + 1])) continue;
      if (auto perm = descend(r, k + 1)) return perm;
    }
    return std::nullopt;
  }

  const Digraph& g_;
  SearchLimits limits_;
  Refiner refiner_;
  std::vector<Partition> path_;
  std::vector<std::uint64_t> traces_;   // traces_[j] produced path_[j]
  std::vector<std::uint32_t> targets_;  // target cell start at each non-leaf level
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Order and generators of the stabilizer of v in Aut(g).
inline StabilizerResult vertex_stabilizer(const Digraph& g, Vertex v, const SearchLimits& limits = {}) {
  if (g.order() > limits.vertex_cap)
    throw Error(ErrorCode::CapExceeded, "digraph has " + std::to_string(g.order()) +
                                            " vertices, search cap is " + std::to_string(limits.vertex_cap));
  if (v >= g.order()) throw Error(ErrorCode::BadParameter, "vertex out of range");
  return detail::StabilizerSearch(g, limits).run(v);
}

}  // namespace bicayley
