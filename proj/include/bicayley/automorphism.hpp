#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bicayley/bitset.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"

namespace bicayley {

inline constexpr std::size_t kDefaultAutEnumerationCap = std::size_t{1} << 12;

/// Group automorphism stored as the permutation of element indices.
class GroupAutomorphism {
 public:
  GroupAutomorphism() = default;
  explicit GroupAutomorphism(std::vector<ElementIndex> image) : image_(std::move(image)) {}

  static GroupAutomorphism identity(const AbelianGroup& A) {
    std::vector<ElementIndex> img(A.size());
    std::iota(img.begin(), img.end(), ElementIndex{0});
    return GroupAutomorphism(std::move(img));
  }

  /// The homomorphism sending the i-th unit vector to images[i]. The caller
  /// is responsible for the images defining an automorphism.
  static GroupAutomorphism from_generator_images(const AbelianGroup& A, std::span<const ElementIndex> images) {
    std::vector<ElementIndex> img(A.size());
    for (ElementIndex a = 0; a < A.size(); ++a) {
      ElementIndex x = A.identity();
      for (std::size_t i = 0; i < A.rank(); ++i) x = A.add(x, A.multiple(images[i], A.coord(a, i)));
      img[a] = x;
    }
    return GroupAutomorphism(std::move(img));
  }

  ElementIndex operator()(ElementIndex a) const noexcept { return image_[a]; }
  std::span<const ElementIndex> image() const noexcept { return image_; }
  std::size_t degree() const noexcept { return image_.size(); }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  /// (this * other)(a) = other(this(a)): apply this first.
  GroupAutomorphism then(const GroupAutomorphism& other) const {
    std::vector<ElementIndex> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) img[i] = other.image_[image_[i]];
    return GroupAutomorphism(std::move(img));
  }

  GroupAutomorphism inverse() const {
    std::vector<ElementIndex> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) img[image_[i]] = static_cast<ElementIndex>(i);
    return GroupAutomorphism(std::move(img));
  }

  std::size_t order() const {
    std::size_t ord = 1;
    GroupAutomorphism power = *this;
    while (!power.is_identity()) {
      power = power.then(*this);
      ++ord;
    }
    return ord;
  }

  Bitset apply(const Bitset& set) const {
    Bitset out(set.size());
    set.for_each([&](std::size_t i) { out.set(image_[i]); });
    return out;
  }

  /// alpha(X) = X.
  bool stabilizes(const Bitset& set) const {
    bool ok = true;
    set.for_each([&](std::size_t i) {
      if (ok && !set.test(image_[i])) ok = false;
    });
    return ok;
  }

  bool is_bijection() const {
    std::vector<char> seen(image_.size(), 0);
    for (ElementIndex x : image_) {
      if (x >= image_.size() || seen[x]) return false;
      seen[x] = 1;
    }
    return true;
  }

  /// Exhaustive check alpha(a+b) = alpha(a)+alpha(b) over all pairs.
  bool is_homomorphism(const AbelianGroup& A) const {
    for (ElementIndex a = 0; a < A.size(); ++a)
      for (ElementIndex b = 0; b < A.size(); ++b)
        if (image_[A.add(a, b)] != A.add(image_[a], image_[b])) return false;
    return true;
  }

  /// Checks additivity on the unit generators only.
  bool is_homomorphism_on_generators(const AbelianGroup& A) const {
    for (ElementIndex a = 0; a < A.size(); ++a)
      for (std::size_t i = 0; i < A.rank(); ++i)
        if (image_[A.add(a, A.unit(i))] != A.add(image_[a], image_[A.unit(i)])) return false;
    return true;
  }

  bool is_automorphism(const AbelianGroup& A) const {
    if (image_.size() != A.size() || !is_bijection()) return false;
    return A.size() <= (std::size_t{1} << 10) ? is_homomorphism(A) : is_homomorphism_on_generators(A);
  }

  friend bool operator==(const GroupAutomorphism&, const GroupAutomorphism&) = default;

 private:
  std::vector<ElementIndex> image_;
};

/// iota: a -> -a.
inline GroupAutomorphism inversion_automorphism(const AbelianGroup& A) {
  std::vector<ElementIndex> img(A.size());
  for (ElementIndex a = 0; a < A.size(); ++a) img[a] = A.neg(a);
  return GroupAutomorphism(std::move(img));
}

/// Streams every automorphism of A exactly once to `visit`; stops early when
/// `visit` returns false. Returns the number visited.
///
/// Backtracks over images of the unit generators e_1..e_k: the image of e_i
/// must have order n_i and must not fall back into the span of earlier
/// images before n_i steps, which makes the final map injective.
template <class Visitor>
std::size_t for_each_automorphism(const AbelianGroup& A, Visitor&& visit,
                                  std::size_t cap = kDefaultAutEnumerationCap) {
  if (A.size() > cap)
    throw Error(ErrorCode::CapExceeded,
                "automorphism enumeration cap " + std::to_string(cap) + " exceeded by " + A.name());
  const std::size_t k = A.rank();
  std::vector<std::vector<ElementIndex>> candidates(k);
  for (ElementIndex a = 0; a < A.size(); ++a) {
    const std::int64_t o = A.element_order(a);
    for (std::size_t i = 0; i < k; ++i)
      if (o == A.orders()[i]) candidates[i].push_back(a);
  }

  std::vector<ElementIndex> images(k);
  std::vector<Bitset> spans(k + 1, Bitset(A.size()));
  spans[0].set(A.identity());
  std::size_t visited = 0;
  bool stop = false;

  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (stop) return;
    if (depth == k) {
      ++visited;
      if (!visit(GroupAutomorphism::from_generator_images(A, images))) stop = true;
      return;
    }
    const Bitset& span = spans[depth];
    const auto old = span.indices();
    const std::int64_t n = A.orders()[depth];
    for (ElementIndex a : candidates[depth]) {
      bool independent = true;
      ElementIndex t = a;
      for (std::int64_t s = 1; s < n; ++s, t = A.add(t, a)) {
        if (span.test(t)) {
          independent = false;
          break;
        }
      }
      if (!independent) continue;
      images[depth] = a;
      Bitset& next = spans[depth + 1];
      next = span;
      ElementIndex shift = a;
      for (std::int64_t s = 1; s < n; ++s, shift = A.add(shift, a))
        for (ElementIndex h : old) next.set(A.add(h, shift));
      extend(depth + 1);
      if (stop) return;
    }
  };
  extend(0);
  return visited;
}

inline std::vector<GroupAutomorphism> all_automorphisms(const AbelianGroup& A,
                                                        std::size_t cap = kDefaultAutEnumerationCap) {
  std::vector<GroupAutomorphism> out;
  for_each_automorphism(
      A,
      [&](GroupAutomorphism&& alpha) {
        out.push_back(std::move(alpha));
        return true;
      },
      cap);
  return out;
}

inline std::size_t automorphism_count(const AbelianGroup& A, std::size_t cap = kDefaultAutEnumerationCap) {
  return for_each_automorphism(A, [](const GroupAutomorphism&) { return true; }, cap);
}

inline bool is_index_two(const AbelianGroup& A, const Subgroup& B) { return B.order() * 2 == A.size(); }

inline void require_index_two(const AbelianGroup& A, const Subgroup& B) {
  if (!is_index_two(A, B))
    throw Error(ErrorCode::BadSubgroup, "subgroup of order " + std::to_string(B.order()) + " does not have index 2 in " + A.name());
}

/// Automorphisms alpha with alpha(B) = B (setwise).
inline std::vector<GroupAutomorphism> stabilizing_automorphisms(const AbelianGroup& A, const Subgroup& B,
                                                                std::size_t cap = kDefaultAutEnumerationCap) {
  require_index_two(A, B);
  std::vector<GroupAutomorphism> out;
  for_each_automorphism(
      A,
      [&](GroupAutomorphism&& alpha) {
        if (alpha.stabilizes(B.members())) out.push_back(std::move(alpha));
        return true;
      },
      cap);
  return out;
}

/// Kernels of the nonzero characters A -> Z_p, deduplicated. Characters are
/// enumerated as coefficient vectors over the factors divisible by p, in
/// increasing mixed-radix order (first such factor least significant).
inline std::vector<Subgroup> prime_index_subgroups_for(const AbelianGroup& A, int p) {
  std::vector<std::size_t> factors;
  for (std::size_t i = 0; i < A.rank(); ++i)
    if (A.orders()[i] % p == 0) factors.push_back(i);
  std::vector<Subgroup> out;
  std::set<Bitset> seen;
  std::size_t total = 1;
  for (std::size_t j = 0; j < factors.size(); ++j) total *= static_cast<std::size_t>(p);
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<std::int64_t> coeff(factors.size());
    std::size_t c = code;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      coeff[j] = static_cast<std::int64_t>(c % static_cast<std::size_t>(p));
      c /= static_cast<std::size_t>(p);
    }
    Bitset kernel(A.size());
    for (ElementIndex a = 0; a < A.size(); ++a) {
      std::int64_t v = 0;
      for (std::size_t j = 0; j < factors.size(); ++j) v += coeff[j] * A.coord(a, factors[j]);
      if (v % p == 0) kernel.set(a);
    }
    if (seen.insert(kernel).second) out.push_back(Subgroup::from_members(A, std::move(kernel)));
  }
  return out;
}

/// All index-2 subgroups in character order: the k-th subgroup is the kernel
/// of the character whose bit j (least significant first) is its value on the
/// j-th even cyclic factor, for the (k+1)-th nonzero mask.
inline std::vector<Subgroup> index2_subgroups(const AbelianGroup& A) {
  if (A.size() % 2) return {};
  return prime_index_subgroups_for(A, 2);
}

inline std::vector<Subgroup> prime_index_subgroups(const AbelianGroup& A) {
  std::vector<Subgroup> out;
  for (int p : detail::prime_factors(static_cast<std::int64_t>(A.size()))) {
    auto part = prime_index_subgroups_for(A, p);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

/// Subgroups of prime order, in order of their least generating element.
inline std::vector<Subgroup> prime_order_subgroups(const AbelianGroup& A) {
  std::vector<Subgroup> out;
  std::set<Bitset> seen;
  for (ElementIndex a = 1; a < A.size(); ++a) {
    if (!detail::is_prime(A.element_order(a))) continue;
    const ElementIndex g[] = {a};
    Subgroup h = Subgroup::generated(A, g);
    if (seen.insert(h.members()).second) out.push_back(std::move(h));
  }
  return out;
}

/// Distinct cyclic subgroups of order at least `min_order`.
inline std::vector<Subgroup> cyclic_subgroups(const AbelianGroup& A, std::int64_t min_order = 1) {
  std::vector<Subgroup> out;
  std::set<Bitset> seen;
  for (ElementIndex a = 0; a < A.size(); ++a) {
    if (A.element_order(a) < min_order) continue;
    const ElementIndex g[] = {a};
    Subgroup h = Subgroup::generated(A, g);
    if (seen.insert(h.members()).second) out.push_back(std::move(h));
  }
  return out;
}

/// All subgroups of A, by closure from the trivial subgroup. Intended for
/// small groups only.
inline std::vector<Subgroup> all_subgroups(const AbelianGroup& A, std::size_t cap = 256) {
  if (A.size() > cap)
    throw Error(ErrorCode::CapExceeded, "subgroup lattice enumeration cap " + std::to_string(cap) + " exceeded");
  std::vector<Subgroup> out{Subgroup::trivial(A)};
  std::set<Bitset> seen{out.front().members()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (ElementIndex a = 1; a < A.size(); ++a) {
      if (out[i].contains(a)) continue;
      std::vector<ElementIndex> gens(out[i].generators().begin(), out[i].generators().end());
      gens.push_back(a);
      Subgroup h = Subgroup::generated(A, gens);
      if (seen.insert(h.members()).second) out.push_back(std::move(h));
    }
  }
  return out;
}

/// Subgroups of the elementary abelian 2-subgroup A_2 having the given order.
inline std::vector<Subgroup> elementary_two_subgroups(const AbelianGroup& A, std::size_t order) {
  const Subgroup a2 = involution_subgroup(A);
  std::vector<Subgroup> out;
  if (a2.order() % order) return out;
  const auto involutions = [&] {
    auto v = a2.members().indices();
    v.erase(v.begin());  // identity
    return v;
  }();
  // Every subgroup of A_2 of order <= `order` is visited once; each step
  // adds one involution outside the current span.
  std::set<Bitset> visited;
  std::function<void(const Subgroup&)> grow = [&](const Subgroup& cur) {
    if (!visited.insert(cur.members()).second) return;
    if (cur.order() == order) {
      out.push_back(cur);
      return;
    }
    std::vector<ElementIndex> gens(cur.generators().begin(), cur.generators().end());
    for (ElementIndex t : involutions) {
      if (cur.contains(t)) continue;
      gens.push_back(t);
      grow(Subgroup::generated(A, gens));
      gens.pop_back();
    }
  };
  grow(Subgroup::trivial(A));
  std::sort(out.begin(), out.end());
  return out;
}

/// Fixed and inverted subgroups of an automorphism.
struct FixInvertDecomposition {
  Subgroup fixed;
  Subgroup inverted;
};

inline FixInvertDecomposition fix_invert_decomposition(const AbelianGroup& A, const GroupAutomorphism& alpha) {
  Bitset fixed(A.size());
  Bitset inverted(A.size());
  for (ElementIndex a = 0; a < A.size(); ++a) {
    if (alpha(a) == a) fixed.set(a);
    if (alpha(a) == A.neg(a)) inverted.set(a);
  }
  return {Subgroup::from_members(A, std::move(fixed)), Subgroup::from_members(A, std::move(inverted))};
}

/// Group, index-2 subgroup and automorphism of one of the two exceptional
/// families.
struct ExceptionalExample {
  AbelianGroup group;
  Subgroup b;
  GroupAutomorphism alpha;
};

/// A = <x> x <y_1> x ... x <y_l> = C4 x C2^l, B = <2x, y_1, ..., y_l>,
/// alpha: x -> -x, y_1 -> 2x + y_1, y_i -> y_i (i >= 2).
inline ExceptionalExample example1_automorphism(int ell, std::size_t size_cap = kDefaultGroupSizeCap) {
  if (ell < 1) throw Error(ErrorCode::BadParameter, "example 1 needs l >= 1");
  std::vector<int> orders{4};
  orders.insert(orders.end(), static_cast<std::size_t>(ell), 2);
  AbelianGroup A = AbelianGroup::build(orders, size_cap);
  std::vector<ElementIndex> b_gens{A.multiple(A.unit(0), 2)};
  for (int i = 1; i <= ell; ++i) b_gens.push_back(A.unit(static_cast<std::size_t>(i)));
  Subgroup B = Subgroup::generated(A, b_gens);

  std::vector<ElementIndex> images(A.rank());
  images[0] = A.neg(A.unit(0));
  images[1] = A.add(A.multiple(A.unit(0), 2), A.unit(1));
  for (int i = 2; i <= ell; ++i) images[static_cast<std::size_t>(i)] = A.unit(static_cast<std::size_t>(i));
  GroupAutomorphism alpha = GroupAutomorphism::from_generator_images(A, images);
  return {std::move(A), std::move(B), std::move(alpha)};
}

/// A = <x_1> x <x_2> x <y_1> x ... x <y_l> = C4^2 x C2^l,
/// B = <2x_1, x_2, y_1, ..., y_l>, alpha: x_1 -> x_1, x_2 -> 2x_1 - x_2,
/// y_i -> y_i.
inline ExceptionalExample example2_automorphism(int ell, std::size_t size_cap = kDefaultGroupSizeCap) {
  if (ell < 0) throw Error(ErrorCode::BadParameter, "example 2 needs l >= 0");
  std::vector<int> orders{4, 4};
  orders.insert(orders.end(), static_cast<std::size_t>(ell), 2);
  AbelianGroup A = AbelianGroup::build(orders, size_cap);
  std::vector<ElementIndex> b_gens{A.multiple(A.unit(0), 2), A.unit(1)};
  for (int i = 0; i < ell; ++i) b_gens.push_back(A.unit(static_cast<std::size_t>(i) + 2));
  Subgroup B = Subgroup::generated(A, b_gens);

  std::vector<ElementIndex> images(A.rank());
  images[0] = A.unit(0);
  images[1] = A.sub(A.multiple(A.unit(0), 2), A.unit(1));
  for (std::size_t i = 2; i < A.rank(); ++i) images[i] = A.unit(i);
  GroupAutomorphism alpha = GroupAutomorphism::from_generator_images(A, images);
  return {std::move(A), std::move(B), std::move(alpha)};
}

/// (A, B) is (C4 x C2^l, C2^(l+1)) with l >= 1 or (C4^2 x C2^l, C4 x C2^(l+1))
/// with l >= 0, compared by invariant factors.
inline bool is_exceptional_pair(const AbelianGroup& A, const Subgroup& B) {
  require_index_two(A, B);
  const auto fa = A.invariant_factors();
  const auto fb = invariant_factors(A, B);
  auto count = [](const std::vector<int>& f, int v) {
    return static_cast<std::size_t>(std::count(f.begin(), f.end(), v));
  };
  const bool only_2_and_4 = count(fa, 2) + count(fa, 4) == fa.size();
  if (!only_2_and_4) return false;
  const std::size_t ell = count(fa, 2);
  if (count(fa, 4) == 1 && ell >= 1)
    return count(fb, 2) == ell + 1 && fb.size() == ell + 1;
  if (count(fa, 4) == 2)
    return count(fb, 4) == 1 && count(fb, 2) == ell + 1 && fb.size() == ell + 2;
  return false;
}

}  // namespace bicayley
