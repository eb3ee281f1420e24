#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bicayley/digraph.hpp"

namespace bicayley {

/// Ordered partition of the vertex set. Cells are contiguous runs of `lab`
/// and are identified by their start position.
struct Partition {
  std::vector<Vertex> lab;
  std::vector<std::uint32_t> cell_of;   // vertex -> start of its cell
  std::vector<std::uint32_t> cell_end;  // start -> one past the end (starts only)
  std::uint32_t num_cells = 0;

  static Partition unit(std::size_t n) {
    Partition p;
    p.lab = identity_permutation(n);
    p.cell_of.assign(n, 0);
    p.cell_end.assign(n, 0);
    if (n) {
      p.cell_end[0] = static_cast<std::uint32_t>(n);
      p.num_cells = 1;
    }
    return p;
  }

  std::size_t size() const noexcept { return lab.size(); }
  bool discrete() const noexcept { return num_cells == lab.size(); }
  std::uint32_t cell_size(std::uint32_t start) const noexcept { return cell_end[start] - start; }

  /// Start of the smallest non-singleton cell (first one on ties).
  std::uint32_t smallest_nontrivial_cell() const noexcept {
    std::uint32_t best = static_cast<std::uint32_t>(size());
    std::uint32_t best_size = best + 1;
    for (std::uint32_t s = 0; s < size(); s = cell_end[s]) {
      const std::uint32_t sz = cell_size(s);
      if (sz > 1 && sz < best_size) {
        best = s;
        best_size = sz;
      }
    }
    return best;
  }

  /// Members of the cell at `start`, ascending by vertex number.
  std::vector<Vertex> cell_members(std::uint32_t start) const {
    std::vector<Vertex> m(lab.begin() + start, lab.begin() + cell_end[start]);
    std::sort(m.begin(), m.end());
    return m;
  }

  /// Same cell layout (starts and sizes) as another partition.
  bool same_shape(const Partition& o) const noexcept {
    if (num_cells != o.num_cells || size() != o.size()) return false;
    for (std::uint32_t s = 0; s < size(); s = cell_end[s])
      if (o.cell_of[o.lab[s]] != s || o.cell_end[s] != cell_end[s]) return false;
    return true;
  }
};

/// Equitable refinement with respect to (out-neighbour, in-neighbour) counts.
///
/// Every decision depends only on cell positions and counts, never on
/// vertex numbers, so refining commutes with relabeling; the returned trace
/// hash is therefore an isomorphism invariant of (digraph, partition).
class Refiner {
 public:
  explicit Refiner(const Digraph& g)
      : g_(g),
        outc_(g.order(), 0),
        inc_(g.order(), 0),
        touched_flag_(g.order(), 0),
        in_queue_(g.order(), 0),
        keys_(g.order(), 0) {}

  /// Refines with every cell as an initial splitter.
  std::uint64_t refine_all(Partition& p) {
    queue_.clear();
    for (std::uint32_t s = 0; s < p.size(); s = p.cell_end[s]) enqueue(s);
    return run(p);
  }

  /// Splits v off the front of its cell, then refines from {v}.
  std::uint64_t individualize(Partition& p, Vertex v) {
    const std::uint32_t s = p.cell_of[v];
    const std::uint32_t e = p.cell_end[s];
    if (e - s == 1) return mix(0x51ed27a3ULL, s);
    auto it = std::find(p.lab.begin() + s, p.lab.begin() + e, v);
    std::iter_swap(p.lab.begin() + s, it);
    p.cell_end[s] = s + 1;
    p.cell_end[s + 1] = e;
    for (std::uint32_t i = s + 1; i < e; ++i) p.cell_of[p.lab[i]] = s + 1;
    ++p.num_cells;
    queue_.clear();
    enqueue(s);
    return run(p, mix(0x51ed27a3ULL, s));
  }

 private:
  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    v *= 0x9e3779b97f4a7c15ULL;
    v ^= v >> 29;
    h ^= v + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
    return h;
  }

  void enqueue(std::uint32_t s) {
    if (!in_queue_[s]) {
      in_queue_[s] = 1;
      queue_.push_back(s);
    }
  }

  std::uint64_t run(Partition& p, std::uint64_t trace = 0x2545f4914f6cdd1dULL) {
    const std::uint64_t width = g_.order() + 1;
    std::size_t head = 0;
    while (head < queue_.size() && !p.discrete()) {
      const std::uint32_t s = queue_[head++];
      in_queue_[s] = 0;
      splitter_.assign(p.lab.begin() + s, p.lab.begin() + p.cell_end[s]);
      trace = mix(trace, s);

      touched_.clear();
      touched_cells_.clear();
      for (Vertex x : splitter_) {
        for (Vertex u : g_.in_neighbors(x)) {
          ++outc_[u];
          touch(p, u);
        }
        for (Vertex u : g_.out_neighbors(x)) {
          ++inc_[u];
          touch(p, u);
        }
      }
      std::sort(touched_cells_.begin(), touched_cells_.end());
      for (std::uint32_t y : touched_cells_) split_cell(p, y, width, trace);
      for (Vertex u : touched_) {
        outc_[u] = 0;
        inc_[u] = 0;
        touched_flag_[u] = 0;
      }
      for (std::uint32_t y : touched_cells_) cell_touched_[y] = 0;
    }
    for (std::size_t i = head; i < queue_.size(); ++i) in_queue_[queue_[i]] = 0;
    queue_.clear();
    return mix(trace, p.num_cells);
  }

  void touch(const Partition& p, Vertex u) {
    if (touched_flag_[u]) return;
    touched_flag_[u] = 1;
    touched_.push_back(u);
    if (cell_touched_.size() < p.size()) cell_touched_.assign(p.size(), 0);
    const std::uint32_t c = p.cell_of[u];
    if (!cell_touched_[c]) {
      cell_touched_[c] = 1;
      touched_cells_.push_back(c);
    }
  }

  void split_cell(Partition& p, std::uint32_t y, std::uint64_t width, std::uint64_t& trace) {
    const std::uint32_t e = p.cell_end[y];
    if (e - y == 1) return;
    bool uniform = true;
    for (std::uint32_t i = y; i < e; ++i) {
      const Vertex v = p.lab[i];
      keys_[v] = outc_[v] * width + inc_[v];
      if (keys_[v] != keys_[p.lab[y]]) uniform = false;
    }
    if (uniform) return;
    std::sort(p.lab.begin() + y, p.lab.begin() + e,
              [&](Vertex a, Vertex b) { return keys_[a] < keys_[b]; });
    const bool was_queued = in_queue_[y];
    // Fragment boundaries.
    frag_starts_.clear();
    for (std::uint32_t i = y; i < e; ++i)
      if (i == y || keys_[p.lab[i]] != keys_[p.lab[i - 1]]) frag_starts_.push_back(i);
    std::uint32_t largest = frag_starts_[0];
    std::uint32_t largest_size = 0;
    trace = mix(trace, y);
    trace = mix(trace, frag_starts_.size());
    for (std::size_t f = 0; f < frag_starts_.size(); ++f) {
      const std::uint32_t fs = frag_starts_[f];
      const std::uint32_t fe = f + 1 < frag_starts_.size() ? frag_starts_[f + 1] : e;
      p.cell_end[fs] = fe;
      for (std::uint32_t i = fs; i < fe; ++i) p.cell_of[p.lab[i]] = fs;
      trace = mix(trace, keys_[p.lab[fs]]);
      trace = mix(trace, fe - fs);
      if (fe - fs > largest_size) {
        largest = fs;
        largest_size = fe - fs;
      }
    }
    p.num_cells += static_cast<std::uint32_t>(frag_starts_.size() - 1);
    for (std::uint32_t fs : frag_starts_)
      if (was_queued || fs != largest) enqueue(fs);
  }

  const Digraph& g_;
  std::vector<std::uint64_t> outc_;
  std::vector<std::uint64_t> inc_;
  std::vector<char> touched_flag_;
  std::vector<char> in_queue_;
  std::vector<std::uint64_t> keys_;
  std::vector<char> cell_touched_;
  std::vector<Vertex> touched_;
  std::vector<std::uint32_t> touched_cells_;
  std::vector<std::uint32_t> queue_;
  std::vector<Vertex> splitter_;
  std::vector<std::uint32_t> frag_starts_;
};

}  // namespace bicayley
