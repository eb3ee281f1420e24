#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "bicayley/automorphism.hpp"
#include "bicayley/classifier.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"
#include "bicayley/stabilizer.hpp"
#include "bicayley/subsets.hpp"

namespace bicayley {

using HighFloat = boost::multiprecision::cpp_bin_float_100;

inline constexpr std::size_t kDefaultExactSubsetCap = 20;
inline constexpr std::size_t kDefaultExactTripleCap = 64;

namespace detail {

inline BigInt pow2(std::uint64_t e) { return BigInt(1) << static_cast<unsigned>(e); }

inline BigInt ipow(BigInt b, std::uint64_t e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// Smallest x with x^q >= target (q >= 1, target >= 0).
inline BigInt ceil_root(const BigInt& target, std::uint64_t q) {
  if (target <= 1 || q == 1) return target;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << static_cast<unsigned>(boost::multiprecision::msb(target) / q + 2);
  while (lo < hi) {
    BigInt mid = (lo + hi) >> 1;
    if (ipow(mid, q) >= target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

/// Largest x with x^q <= target.
inline BigInt floor_root(const BigInt& target, std::uint64_t q) {
  BigInt c = ceil_root(target, q);
  return ipow(c, q) == target ? c : c - 1;
}

/// ceil(m * 2^(p/q)) for p >= 0, q >= 1, m >= 0.
inline BigInt ceil_times_pow2(const BigInt& m, std::uint64_t p, std::uint64_t q) {
  return ceil_root(ipow(m, q) << static_cast<unsigned>(p), q);
}

inline BigInt floor_times_pow2(const BigInt& m, std::uint64_t p, std::uint64_t q) {
  return floor_root(ipow(m, q) << static_cast<unsigned>(p), q);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace detail

/// ceil((log2 n)^2). Exact for powers of two; otherwise log2 n is
/// irrational, its square is not an integer, and 100-digit arithmetic with a
/// margin check decides the ceiling.
inline std::uint64_t ceil_log2_squared(std::uint64_t n) {
  if (detail::is_power_of_two(n)) {
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << k) < n) ++k;
    return k * k;
  }
  const HighFloat l = boost::multiprecision::log2(HighFloat(n));
  const HighFloat sq = l * l;
  const HighFloat c = boost::multiprecision::ceil(sq);
  if (c - sq < HighFloat("1e-60")) throw Error(ErrorCode::HypothesisViolated, "ceil((log2 n)^2) not certified");
  return static_cast<std::uint64_t>(c);
}

/// Bound of the shape 2^(num/den) * n^k, kept exact.
struct Log2Bound {
  std::int64_t num = 0;
  std::uint64_t den = 1;
  std::uint64_t n = 1;
  std::uint64_t n_power = 0;
  std::string formula;

  double log2_value() const {
    return static_cast<double>(num) / static_cast<double>(den) + static_cast<double>(n_power) * std::log2(static_cast<double>(n));
  }

  /// x <= 2^(num/den) * n^k, decided as x^den <= 2^num * n^(k*den).
  bool admits(const BigInt& x) const {
    BigInt lhs = detail::ipow(x, den);
    BigInt rhs = detail::ipow(BigInt(n), n_power * den);
    if (num >= 0) rhs <<= static_cast<unsigned>(num);
    else lhs <<= static_cast<unsigned>(-num);
    return lhs <= rhs;
  }
};

inline Log2Bound make_bound(std::int64_t num, std::uint64_t den, std::uint64_t n, std::uint64_t n_power,
                            std::string formula) {
  const std::uint64_t g = detail::gcd_u64(static_cast<std::uint64_t>(num < 0 ? -num : num), den);
  return Log2Bound{num / static_cast<std::int64_t>(g), den / g, n, n_power, std::move(formula)};
}

struct BoundReport {
  std::string name;
  std::string group;
  std::string subgroup;
  std::string params;
  std::optional<BigInt> exact;
  Log2Bound bound;
  bool holds = true;
};

// --------------------------------------------------------------------------
// Inverse-closed count

struct InverseClosedCount {
  BigInt value;
  std::uint64_t log2_value;
  bool involutions_inside_b;  // A_2 <= B, the 2^(|A|/4) case
  std::size_t a2_outside_b;   // |A_2 \ B|
};

/// 2^(|A|/4 + |A_2 \ B|/2) inverse-closed subsets of A \ B.
inline InverseClosedCount count_inverse_closed(const AbelianGroup& A, const Subgroup& B) {
  require_index_two(A, B);
  const Subgroup a2 = involution_subgroup(A);
  const std::size_t outside = a2.order() - a2.members().intersection_count(B.members());
  // |A|/4 + |A_2 \ B|/2 = (|A \ B| + |A_2 \ B|) / 2, an integer.
  const std::uint64_t e = (A.size() / 2 + outside) / 2;
  return {detail::pow2(e), e, outside == 0, outside};
}

// --------------------------------------------------------------------------
// Lemma bounds

struct LemmaParams {
  std::optional<GroupAutomorphism> alpha;
  std::optional<Subgroup> h;
  std::optional<Subgroup> k;
  std::size_t exact_cap = kDefaultExactSubsetCap;
  std::size_t triple_cap = kDefaultExactTripleCap;
};

inline const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{"a1-directed",   "alpha-invariant",  "hk-cosets", "a1-undirected",
                                              "hk-undirected", "alpha-undirected", "triples"};
  return names;
}

namespace detail {

[[noreturn]] inline void hypothesis(const std::string& what) { throw Error(ErrorCode::HypothesisViolated, what); }

inline void require_alpha(const AbelianGroup& A, const Subgroup& B, const LemmaParams& p) {
  if (!p.alpha) hypothesis("lemma needs an automorphism alpha");
  if (p.alpha->degree() != A.size() || !p.alpha->is_automorphism(A)) hypothesis("alpha is not an automorphism of " + A.name());
  if (p.alpha->is_identity()) hypothesis("alpha must not be the identity");
  if (!p.alpha->stabilizes(B.members())) hypothesis("alpha must fix B setwise");
}

inline void require_hk(const AbelianGroup& A, const Subgroup& B, const LemmaParams& p) {
  if (!p.h || !p.k) hypothesis("lemma needs subgroups H and K");
  if (p.h->order() <= 1) hypothesis("H must be nontrivial");
  if (!p.h->is_subgroup_of(*p.k)) hypothesis("H must lie in K");
  if (p.k->order() >= A.size()) hypothesis("K must be proper");
  if (!p.h->is_subgroup_of(B)) hypothesis("H must lie in B");
}

/// Distinct S for each decomposition (C, Z), counted as triples.
inline BigInt count_triples(const AbelianGroup& A, const Subgroup& B, std::size_t cap) {
  BigInt total = 0;
  for (const auto& [C, Z] : cyclic_by_elementary_decompositions(A)) {
    if (Z.order() > cap) hypothesis("triple count needs |Z| <= " + std::to_string(cap));
    const auto zs = Z.members().indices();
    const auto cs = C.members().indices();
    std::vector<Bitset> primes;
    primes.push_back(A.empty_set());
    Bitset id = A.empty_set();
    id.set(A.identity());
    primes.push_back(id);
    primes.push_back(C.members());
    Bitset cm = C.members();
    cm.reset(A.identity());
    primes.push_back(cm);
    std::set<Bitset> distinct;
    for (const auto& sp : primes)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << zs.size()); ++mask) {
        Bitset s = A.empty_set();
        sp.for_each([&](std::size_t c) {
          for (std::size_t i = 0; i < zs.size(); ++i)
            if (mask >> i & 1) s.set(A.add(static_cast<ElementIndex>(c), zs[i]));
        });
        if (!s.intersects(B.members())) distinct.insert(std::move(s));
      }
    total += distinct.size();
  }
  return total;
}

}  // namespace detail

/// One lemma's upper bound for (A, B) with its hypotheses checked, plus the
/// exact count by enumeration when |A| is within the cap.
inline BoundReport lemma_bound(const std::string& name, const AbelianGroup& A, const Subgroup& B,
                               const LemmaParams& params = {}) {
  require_index_two(A, B);
  const std::uint64_t n = A.size();
  BoundReport r;
  r.name = name;
  r.group = A.name();
  r.subgroup = isomorphism_type_name(invariant_factors(A, B));
  const auto ic = count_inverse_closed(A, B);
  const std::uint64_t t = ic.a2_outside_b;
  const bool exact = n <= params.exact_cap;

  auto hk_pred = [&](const Bitset& s) { return coset_decompose(A, *params.h, s - params.k->members()); };
  auto h_k_text = [&] {
    return "H=" + isomorphism_type_name(invariant_factors(A, *params.h)) + " K=" +
           isomorphism_type_name(invariant_factors(A, *params.k));
  };

  if (name == "a1-directed" || name == "a1-undirected") {
    const Mode mode = name == "a1-directed" ? Mode::Directed : Mode::Undirected;
    r.bound = mode == Mode::Directed ? make_bound(static_cast<std::int64_t>(n), 4, n, 1, "|A|/4+log2|A|")
                                     : make_bound(static_cast<std::int64_t>(n + 4 * t), 8, n, 1, "|A|/8+|A2\\B|/2+log2|A|");
    if (exact) {
      const auto maximal = prime_index_subgroups(A);
      r.exact = AdmissibleSets(A, B, mode).count_if([&](const Bitset& s) {
        for (const auto& C : maximal)
          if (s.is_subset_of(C.members())) return true;
        return false;
      });
    }
  } else if (name == "alpha-invariant") {
    detail::require_alpha(A, B, params);
    r.params = "alpha order " + std::to_string(params.alpha->order());
    r.bound = make_bound(static_cast<std::int64_t>(3 * n), 8, n, 0, "3|A|/8");
    if (exact) r.exact = AdmissibleSets(A, B, Mode::Directed).count_if([&](const Bitset& s) { return params.alpha->stabilizes(s); });
  } else if (name == "alpha-undirected") {
    detail::require_alpha(A, B, params);
    if (A.exponent() <= 2) detail::hypothesis("lemma needs exponent greater than 2");
    if (*params.alpha == inversion_automorphism(A)) detail::hypothesis("alpha must differ from inversion");
    if (is_exceptional_pair(A, B)) detail::hypothesis("(A,B) is an exceptional pair");
    r.params = "alpha order " + std::to_string(params.alpha->order());
    r.bound = make_bound(static_cast<std::int64_t>(11 * n + 24 * t), 48, n, 0, "11|A|/48+|A2\\B|/2");
    if (exact) r.exact = AdmissibleSets(A, B, Mode::Undirected).count_if([&](const Bitset& s) { return params.alpha->stabilizes(s); });
  } else if (name == "hk-cosets") {
    detail::require_hk(A, B, params);
    r.params = h_k_text();
    r.bound = make_bound(static_cast<std::int64_t>(3 * n), 8, n, 0, "3|A|/8");
    if (exact) r.exact = AdmissibleSets(A, B, Mode::Directed).count_if(hk_pred);
  } else if (name == "hk-undirected") {
    detail::require_hk(A, B, params);
    if (A.is_two_group()) detail::hypothesis("lemma needs |A| not a power of 2");
    r.params = h_k_text();
    r.bound = make_bound(static_cast<std::int64_t>(11 * n + 24 * t), 48, n, 0, "11|A|/48+|A2\\B|/2");
    if (exact) r.exact = AdmissibleSets(A, B, Mode::Undirected).count_if(hk_pred);
  } else if (name == "triples") {
    // 2^(|A|/8 + 2 log2|A| - 1) = 2^((|A| - 8)/8) * |A|^2
    r.bound = make_bound(static_cast<std::int64_t>(n) - 8, 8, n, 2, "|A|/8+2log2|A|-1");
    if (n <= params.triple_cap) r.exact = detail::count_triples(A, B, params.triple_cap);
  } else {
    throw Error(ErrorCode::BadParameter, "unknown lemma " + name);
  }

  if (r.exact) r.holds = r.bound.admits(*r.exact);
  return r;
}

// --------------------------------------------------------------------------
// Theorem lower bounds

struct LowerBound {
  BigInt value;  // may be negative
  std::string formula;
  std::uint64_t log2_squared_ceiling;
};

/// Directed: 2^(|A|/2) - 3 * 2^(3|A|/8 + (log2|A|)^2).
/// Undirected: 2^(|A|/4 + |A2\B|/2) - 2^(11|A|/48 + |A2\B|/2 + (log2|A|)^2 + 2).
/// The subtracted term uses ceil((log2|A|)^2) and is rounded up, so the
/// value never exceeds the real-valued expression.
inline LowerBound theorem_lower_bound(Mode mode, const AbelianGroup& A, const Subgroup& B) {
  require_index_two(A, B);
  const std::uint64_t n = A.size();
  const std::uint64_t sq = ceil_log2_squared(n);
  LowerBound out;
  out.log2_squared_ceiling = sq;
  if (mode == Mode::Directed) {
    const BigInt main = detail::pow2(n / 2);
    const BigInt sub = detail::ceil_times_pow2(BigInt(3) << static_cast<unsigned>(sq), 3 * n, 8);
    out.value = main - sub;
    out.formula = "2^(|A|/2)-3*2^(3|A|/8+(log2|A|)^2)";
  } else {
    const auto ic = count_inverse_closed(A, B);
    const std::uint64_t t = ic.a2_outside_b;
    // 11|A|/48 + t/2 = (11|A| + 24t)/48
    const BigInt sub = detail::ceil_times_pow2(BigInt(1) << static_cast<unsigned>(sq + 2), 11 * n + 24 * t, 48);
    out.value = ic.value - sub;
    out.formula = "2^(|A|/4+|A2\\B|/2)-2^(11|A|/48+|A2\\B|/2+(log2|A|)^2+2)";
  }
  return out;
}

// --------------------------------------------------------------------------
// Threshold scan

struct ThresholdScan {
  std::uint64_t published_value;
  std::uint64_t computed;
  std::uint64_t scan_limit;
  std::string inequality;
};

/// m/8 - 2 > (log2 m)^2 (directed) or m/48 - 2 > (log2 m)^2 (undirected),
/// decided with 100-digit arithmetic; (log2 m)^2 is never within 1e-60 of a
/// rational with denominator 48 except at powers of two, where it is exact.
inline bool threshold_inequality(Mode mode, std::uint64_t m) {
  const std::uint64_t den = mode == Mode::Directed ? 8 : 48;
  if (detail::is_power_of_two(m)) {
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << k) < m) ++k;
    // m - 2 den > den k^2
    return static_cast<std::int64_t>(m) - static_cast<std::int64_t>(2 * den) > static_cast<std::int64_t>(den * k * k);
  }
  const HighFloat l = boost::multiprecision::log2(HighFloat(m));
  const HighFloat lhs = HighFloat(m) / den - 2;
  const HighFloat diff = lhs - l * l;
  if (boost::multiprecision::abs(diff) < HighFloat("1e-60"))
    throw Error(ErrorCode::HypothesisViolated, "threshold comparison not certified at m=" + std::to_string(m));
  return diff > 0;
}

/// Least even n with the inequality true for every even m in [n, limit].
/// Past a few hundred the left side grows faster than the right, so a
/// limit well beyond the crossover settles it.
inline ThresholdScan threshold_scan(Mode mode, std::uint64_t limit = 200000) {
  ThresholdScan out;
  out.published_value = mode == Mode::Directed ? 744 : 8214;
  out.scan_limit = limit;
  out.inequality = mode == Mode::Directed ? "m/2 > 3m/8 + (log2 m)^2 + 2" : "m/4 > 11m/48 + (log2 m)^2 + 2";
  std::uint64_t last_fail = 0;
  for (std::uint64_t m = 2; m <= limit; m += 2)
    if (!threshold_inequality(mode, m)) last_fail = m;
  out.computed = last_fail + 2;
  return out;
}

// --------------------------------------------------------------------------
// Preliminary facts

/// |Aut(A)| <= |A|^floor(log2|A|) <= 2^((log2|A|)^2); at most |A| subgroups
/// of prime order and of prime index; |Z \ Y| <= |A|/4 for every proper Z
/// and index-2 Y.
inline std::vector<BoundReport> prelim_facts_check(const AbelianGroup& A,
                                                   std::size_t aut_cap = kDefaultAutEnumerationCap,
                                                   std::size_t subgroup_cap = 4096) {
  std::vector<BoundReport> out;
  const std::uint64_t n = A.size();
  std::uint64_t fl = 0;
  while ((std::uint64_t{2} << fl) <= n) ++fl;

  BoundReport aut;
  aut.name = "aut-order";
  aut.group = A.name();
  aut.exact = automorphism_count(A, aut_cap);
  aut.bound = make_bound(0, 1, n, fl, "|A|^floor(log2|A|)");
  aut.holds = aut.bound.admits(*aut.exact);
  // second inequality: |A|^floor(log2|A|) <= 2^((log2|A|)^2) holds since
  // floor(log2|A|) * log2|A| <= (log2|A|)^2.
  out.push_back(aut);

  auto count_report = [&](std::string name, std::size_t value) {
    BoundReport r;
    r.name = std::move(name);
    r.group = A.name();
    r.exact = value;
    r.bound = make_bound(0, 1, n, 1, "|A|");
    r.holds = value <= n;
    out.push_back(std::move(r));
  };
  count_report("prime-order-subgroups", prime_order_subgroups(A).size());
  count_report("prime-index-subgroups", prime_index_subgroups(A).size());

  BoundReport zy;
  zy.name = "proper-minus-index2";
  zy.group = A.name();
  std::size_t worst = 0;
  const auto ys = index2_subgroups(A);
  for (const auto& Z : all_subgroups(A, subgroup_cap)) {
    if (Z.order() == n) continue;
    for (const auto& Y : ys) worst = std::max(worst, Z.order() - Z.members().intersection_count(Y.members()));
  }
  zy.exact = worst;
  zy.bound = make_bound(-2, 1, n, 1, "|A|/4");
  zy.holds = 4 * worst <= n;
  zy.params = "max over proper Z and index-2 Y";
  out.push_back(zy);
  return out;
}

}  // namespace bicayley
