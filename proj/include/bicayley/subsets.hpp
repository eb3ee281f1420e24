#pragma once

#include <cstdint>
#include <vector>

#include "bicayley/automorphism.hpp"
#include "bicayley/cayley.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"

namespace bicayley {

/// The admissible connection sets for (A, B, mode), indexed by bit masks.
///
/// Directed: every subset of A \ B, one bit per element. Undirected: the
/// inverse-closed subsets, one bit per pair {a, -a} (a single element when
/// a is an involution). Units are listed in increasing order of their
/// smallest element, so mask bit i always refers to the same unit.
class AdmissibleSets {
 public:
  AdmissibleSets(const AbelianGroup& A, const Subgroup& B, Mode mode) : size_(A.size()) {
    require_index_two(A, B);
    for (ElementIndex a = 0; a < A.size(); ++a) {
      if (B.contains(a)) continue;
      if (mode == Mode::Undirected) {
        const ElementIndex b = A.neg(a);
        if (b < a) continue;
        units_.push_back(b == a ? std::vector<ElementIndex>{a} : std::vector<ElementIndex>{a, b});
      } else {
        units_.push_back({a});
      }
    }
  }

  std::size_t unit_count() const noexcept { return units_.size(); }
  const std::vector<std::vector<ElementIndex>>& units() const noexcept { return units_; }

  /// Number of admissible sets; BudgetExceeded when it does not fit 63 bits.
  std::uint64_t count() const {
    if (units_.size() >= 63) throw Error(ErrorCode::BudgetExceeded, "admissible set count 2^" + std::to_string(units_.size()) + " too large");
    return std::uint64_t{1} << units_.size();
  }

  Bitset set_for(std::uint64_t mask) const {
    Bitset s(size_);
    for (std::size_t i = 0; i < units_.size(); ++i)
      if (mask >> i & 1)
        for (ElementIndex a : units_[i]) s.set(a);
    return s;
  }

  /// Inverse of set_for on admissible sets.
  std::uint64_t mask_for(const Bitset& s) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < units_.size(); ++i)
      if (s.test(units_[i].front())) mask |= std::uint64_t{1} << i;
    return mask;
  }

  template <class F>
  void for_each(F&& f) const {
    const std::uint64_t n = count();
    for (std::uint64_t mask = 0; mask < n; ++mask) f(mask, set_for(mask));
  }

  /// Number of admissible sets satisfying pred.
  template <class Pred>
  std::uint64_t count_if(Pred&& pred) const {
    std::uint64_t c = 0;
    for_each([&](std::uint64_t, const Bitset& s) {
      if (pred(s)) ++c;
    });
    return c;
  }

 private:
  std::size_t size_;
  std::vector<std::vector<ElementIndex>> units_;
};

}  // namespace bicayley
