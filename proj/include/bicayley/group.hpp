#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bicayley/bitset.hpp"
#include "bicayley/error.hpp"

namespace bicayley {

/// Dense index of a group element in [0, |A|). The identity is index 0.
using ElementIndex = std::uint32_t;

inline constexpr std::size_t kDefaultGroupSizeCap = std::size_t{1} << 20;
inline constexpr std::size_t kInverseTableCap = std::size_t{1} << 16;
inline constexpr std::size_t kAdditionTableCap = std::size_t{1} << 9;

/// Residue tuple; coords[i] lives in [0, n_i).
struct Element {
  std::vector<std::int64_t> coords;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

namespace detail {

inline std::vector<int> prime_factors(std::int64_t n) {
  std::vector<int> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline bool is_power_of_two(std::size_t n) { return n && (n & (n - 1)) == 0; }

/// Invariant factors d_1 | d_2 | ... (ascending) of the abelian group whose
/// p-primary parts have the given cyclic factor orders.
inline std::vector<int> combine_primary(std::map<int, std::vector<int>> primary) {
  std::size_t len = 0;
  for (auto& [p, powers] : primary) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  // The largest invariant factor takes the largest prime power of each prime.
  std::vector<int> factors(len, 1);
  for (const auto& [p, powers] : primary)
    for (std::size_t i = 0; i < powers.size(); ++i) factors[i] *= powers[i];
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace detail

/// Finite abelian group C_{n_1} x ... x C_{n_k} with mixed-radix element
/// indexing: index = sum_i coords[i] * stride[i], stride[0] = 1.
///
/// Immutable after construction; copies share the arithmetic tables.
class AbelianGroup {
 public:
  static AbelianGroup build(std::vector<int> orders, std::size_t size_cap = kDefaultGroupSizeCap) {
    if (orders.empty()) throw Error(ErrorCode::EmptyOrders, "a group needs at least one cyclic factor");
    std::size_t size = 1;
    std::int64_t exponent = 1;
    for (int n : orders) {
      if (n < 2) throw Error(ErrorCode::OrderBelowTwo, "cyclic factor order " + std::to_string(n) + " is below 2");
      if (size > size_cap / static_cast<std::size_t>(n))
        throw Error(ErrorCode::SizeCapExceeded, "group size exceeds cap " + std::to_string(size_cap));
      size *= static_cast<std::size_t>(n);
      exponent = std::lcm(exponent, static_cast<std::int64_t>(n));
    }
    AbelianGroup g;
    g.orders_ = std::move(orders);
    g.size_ = size;
    g.exponent_ = exponent;
    g.strides_.resize(g.orders_.size());
    std::size_t stride = 1;
    for (std::size_t i = 0; i < g.orders_.size(); ++i) {
      g.strides_[i] = stride;
      stride *= static_cast<std::size_t>(g.orders_[i]);
    }
    auto tables = std::make_shared<Tables>();
    if (size <= kInverseTableCap) {
      tables->inverse.resize(size);
      for (std::size_t a = 0; a < size; ++a)
        tables->inverse[a] = g.compute_neg(static_cast<ElementIndex>(a));
    }
    if (size <= kAdditionTableCap) {
      tables->addition.resize(size * size);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
          tables->addition[a * size + b] =
              g.compute_add(static_cast<ElementIndex>(a), static_cast<ElementIndex>(b));
    }
    g.tables_ = std::move(tables);
    return g;
  }

  std::span<const int> orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  ElementIndex identity() const noexcept { return 0; }

  bool contains(const Element& e) const noexcept {
    if (e.coords.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      if (e.coords[i] < 0 || e.coords[i] >= orders_[i]) return false;
    return true;
  }

  ElementIndex encode(const Element& e) const {
    if (!contains(e)) throw Error(ErrorCode::SetOutOfRange, "element is not a residue tuple of " + name());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) idx += static_cast<std::size_t>(e.coords[i]) * strides_[i];
    return static_cast<ElementIndex>(idx);
  }

  Element decode(ElementIndex a) const {
    Element e;
    e.coords.resize(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) e.coords[i] = coord(a, i);
    return e;
  }

  std::int64_t coord(ElementIndex a, std::size_t i) const noexcept {
    return static_cast<std::int64_t>((a / strides_[i]) % static_cast<std::size_t>(orders_[i]));
  }

  /// Index of the i-th unit vector (generator of the i-th cyclic factor).
  ElementIndex unit(std::size_t i) const noexcept { return static_cast<ElementIndex>(strides_[i]); }

  ElementIndex add(ElementIndex a, ElementIndex b) const noexcept {
    if (!tables_->addition.empty()) return tables_->addition[static_cast<std::size_t>(a) * size_ + b];
    return compute_add(a, b);
  }
  ElementIndex neg(ElementIndex a) const noexcept {
    if (!tables_->inverse.empty()) return tables_->inverse[a];
    return compute_neg(a);
  }
  ElementIndex sub(ElementIndex a, ElementIndex b) const noexcept { return add(a, neg(b)); }

  /// m * a for m >= 0.
  ElementIndex multiple(ElementIndex a, std::int64_t m) const noexcept {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t n = orders_[i];
      const std::int64_t c = ((coord(a, i) * (m % n)) % n + n) % n;
      idx += static_cast<std::size_t>(c) * strides_[i];
    }
    return static_cast<ElementIndex>(idx);
  }

  /// Least m >= 1 with m * a = 0: lcm over coordinates of n_i / gcd(n_i, a_i).
  std::int64_t element_order(ElementIndex a) const noexcept {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t n = orders_[i];
      ord = std::lcm(ord, n / std::gcd(n, coord(a, i)));
    }
    return ord;
  }

  /// Canonical decomposition as ascending invariant factors d_1 | d_2 | ...
  std::vector<int> invariant_factors() const {
    std::map<int, std::vector<int>> primary;
    for (int n : orders_) {
      int m = n;
      for (int p : detail::prime_factors(n)) {
        int q = 1;
        while (m % p == 0) {
          m /= p;
          q *= p;
        }
        primary[p].push_back(q);
      }
    }
    return detail::combine_primary(std::move(primary));
  }

  bool is_two_group() const noexcept { return detail::is_power_of_two(size_); }

  /// Group spec string in CLI grammar, e.g. "C4xC2xC2".
  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += 'x';
      s += 'C' + std::to_string(orders_[i]);
    }
    return s;
  }

  std::string format(ElementIndex a) const {
    std::string s = "(";
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coord(a, i));
    }
    return s + ")";
  }

  Bitset empty_set() const { return Bitset(size_); }
  Bitset full_set() const {
    Bitset b(size_);
    b.set_all();
    return b;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) noexcept { return a.orders_ == b.orders_; }

 private:
  struct Tables {
    std::vector<ElementIndex> inverse;
    std::vector<ElementIndex> addition;
  };

  AbelianGroup() = default;

  ElementIndex compute_add(ElementIndex a, ElementIndex b) const noexcept {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t n = orders_[i];
      idx += static_cast<std::size_t>((coord(a, i) + coord(b, i)) % n) * strides_[i];
    }
    return static_cast<ElementIndex>(idx);
  }
  ElementIndex compute_neg(ElementIndex a) const noexcept {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t n = orders_[i];
      idx += static_cast<std::size_t>((n - coord(a, i)) % n) * strides_[i];
    }
    return static_cast<ElementIndex>(idx);
  }

  std::vector<int> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  std::int64_t exponent_ = 1;
  std::shared_ptr<const Tables> tables_;
};

/// Subgroup stored as a membership bitset plus a small generating set.
class Subgroup {
 public:
  /// Smallest subgroup containing gens, by breadth-first closure under
  /// addition of the generators.
  static Subgroup generated(const AbelianGroup& A, std::span<const ElementIndex> gens) {
    Bitset members(A.size());
    members.set(A.identity());
    std::vector<ElementIndex> frontier{A.identity()};
    std::vector<ElementIndex> kept;
    for (ElementIndex g : gens) {
      if (members.test(g)) continue;
      kept.push_back(g);
      // Closing under one more generator: the new subgroup is the union of
      // the cosets t*g + old.
      std::vector<ElementIndex> old = members.indices();
      ElementIndex shift = g;
      while (!members.test(shift)) {
        for (ElementIndex h : old) members.set(A.add(h, shift));
        shift = A.add(shift, g);
      }
    }
    Subgroup s;
    s.members_ = std::move(members);
    s.generators_ = std::move(kept);
    s.order_ = s.members_.count();
    return s;
  }

  /// Wraps a membership set known to be a subgroup; generators are chosen
  /// greedily in index order.
  static Subgroup from_members(const AbelianGroup& A, Bitset members) {
    Subgroup s;
    s.order_ = members.count();
    Bitset span(A.size());
    span.set(A.identity());
    std::vector<ElementIndex> gens;
    members.for_each([&](std::size_t i) {
      const auto a = static_cast<ElementIndex>(i);
      if (span.test(a)) return;
      gens.push_back(a);
      span = generated(A, gens).members_;
    });
    s.members_ = std::move(members);
    s.generators_ = std::move(gens);
    return s;
  }

  static Subgroup trivial(const AbelianGroup& A) { return generated(A, {}); }
  static Subgroup whole(const AbelianGroup& A) { return from_members(A, A.full_set()); }

  const Bitset& members() const noexcept { return members_; }
  std::span<const ElementIndex> generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return order_; }
  bool contains(ElementIndex a) const noexcept { return members_.test(a); }
  bool is_subgroup_of(const Subgroup& other) const noexcept { return members_.is_subset_of(other.members_); }
  bool is_trivial() const noexcept { return order_ == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept { return a.members_ == b.members_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) noexcept { return a.members_ < b.members_; }

 private:
  Subgroup() = default;

  Bitset members_;
  std::vector<ElementIndex> generators_;
  std::size_t order_ = 0;
};

inline std::int64_t element_order(const AbelianGroup& A, ElementIndex a) { return A.element_order(a); }

inline std::int64_t element_order(const AbelianGroup& A, const Element& a) { return A.element_order(A.encode(a)); }

/// A_2 = {a : 2a = 0}.
inline Subgroup involution_subgroup(const AbelianGroup& A) {
  Bitset members(A.size());
  for (ElementIndex a = 0; a < A.size(); ++a)
    if (A.add(a, a) == A.identity()) members.set(a);
  return Subgroup::from_members(A, std::move(members));
}

inline Subgroup generated_subgroup(const AbelianGroup& A, std::span<const ElementIndex> gens) {
  return Subgroup::generated(A, gens);
}

inline Subgroup generated_subgroup(const AbelianGroup& A, const std::vector<Element>& gens) {
  std::vector<ElementIndex> idx;
  idx.reserve(gens.size());
  for (const auto& g : gens) idx.push_back(A.encode(g));
  return Subgroup::generated(A, idx);
}

inline Subgroup generated_subgroup(const AbelianGroup& A, const Bitset& set) {
  const auto idx = set.indices();
  return Subgroup::generated(A, idx);
}

/// True iff X is a union of full H-cosets: x + H is inside X for every x in X.
inline bool coset_decompose(const AbelianGroup& A, const Subgroup& H, const Bitset& X) {
  const auto hs = H.members().indices();
  bool ok = true;
  X.for_each([&](std::size_t x) {
    if (!ok) return;
    for (ElementIndex h : hs) {
      if (!X.test(A.add(static_cast<ElementIndex>(x), h))) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

/// Invariant factors of a subgroup, read off from the sizes of its
/// p^k-torsion layers.
inline std::vector<int> invariant_factors(const AbelianGroup& A, const Subgroup& H) {
  std::map<int, std::vector<int>> primary;
  const auto members = H.members().indices();
  for (int p : detail::prime_factors(static_cast<std::int64_t>(H.order()))) {
    // layer[k] = log_p |{h : p^k h = 0}|
    std::vector<int> layer{0};
    std::int64_t pk = 1;
    while (true) {
      pk *= p;
      std::size_t c = 0;
      for (ElementIndex h : members)
        if (A.multiple(h, pk) == A.identity()) ++c;
      int e = 0;
      while (c > 1) {
        c /= static_cast<std::size_t>(p);
        ++e;
      }
      if (e == layer.back()) break;
      layer.push_back(e);
    }
    // Number of cyclic factors of order >= p^k is layer[k] - layer[k-1].
    const int top = static_cast<int>(layer.size()) - 1;
    std::vector<int> counts(static_cast<std::size_t>(top) + 2, 0);
    for (int k = 1; k <= top; ++k) counts[static_cast<std::size_t>(k)] = layer[static_cast<std::size_t>(k)] - layer[static_cast<std::size_t>(k) - 1];
    for (int k = 1; k <= top; ++k) {
      const int exactly = counts[static_cast<std::size_t>(k)] - counts[static_cast<std::size_t>(k) + 1];
      int q = 1;
      for (int j = 0; j < k; ++j) q *= p;
      for (int j = 0; j < exactly; ++j) primary[p].push_back(q);
    }
  }
  return detail::combine_primary(std::move(primary));
}

inline std::string isomorphism_type_name(const std::vector<int>& factors) {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = factors.size(); i-- > 0;) {
    if (!s.empty()) s += 'x';
    s += 'C' + std::to_string(factors[i]);
  }
  return s;
}

}  // namespace bicayley
