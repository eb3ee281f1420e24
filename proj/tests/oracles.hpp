#pragma once

// Slow, independent reference computations used to check the library.
// Nothing here calls into the library's arithmetic or search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

/// Plain coordinate-tuple group, elements numbered in mixed radix with the
/// first coordinate least significant.
struct Group {
  std::vector<int> n;

  int size() const {
    int s = 1;
    for (int x : n) s *= x;
    return s;
  }
  std::vector<int> decode(int a) const {
    std::vector<int> c(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
      c[i] = a % n[i];
      a /= n[i];
    }
    return c;
  }
  int encode(const std::vector<int>& c) const {
    int a = 0;
    for (std::size_t i = n.size(); i-- > 0;) a = a * n[i] + ((c[i] % n[i]) + n[i]) % n[i];
    return a;
  }
  int add(int a, int b) const {
    auto x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < n.size(); ++i) x[i] += y[i];
    return encode(x);
  }
  int neg(int a) const {
    auto x = decode(a);
    for (auto& v : x) v = -v;
    return encode(x);
  }
  int order(int a) const {
    int m = 1;
    for (int t = a; t != 0; t = add(t, a)) ++m;
    return m;
  }
};

/// Adjacency matrix of Cay(G,S) with arc g -> h iff g - h in S.
inline std::vector<std::vector<bool>> cayley_adjacency(const Group& G, const std::vector<int>& S) {
  const int n = G.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int s : S)
        if (G.add(h, s) == g) adj[g][h] = true;
  return adj;
}

/// Number of permutations fixing v that preserve the arc relation.
inline std::uint64_t stabilizer_order(const std::vector<std::vector<bool>>& adj, int v) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> rest;
  for (int x = 0; x < n; ++x)
    if (x != v) rest.push_back(x);
  std::vector<int> img = rest;
  std::vector<int> perm(n);
  perm[v] = v;
  std::uint64_t count = 0;
  do {
    for (std::size_t i = 0; i < rest.size(); ++i) perm[rest[i]] = img[i];
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n; ++b)
        if (adj[a][b] != adj[perm[a]][perm[b]]) {
          ok = false;
          break;
        }
    if (ok) ++count;
  } while (std::next_permutation(img.begin(), img.end()));
  return count;
}

/// |Aut(G)| by trying every assignment of images to the unit vectors.
inline std::uint64_t automorphism_count(const Group& G) {
  const int k = static_cast<int>(G.n.size());
  const int n = G.size();
  std::uint64_t count = 0;
  std::vector<int> img(k, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      std::set<int> seen;
      for (int a = 0; a < n; ++a) {
        auto c = G.decode(a);
        int x = 0;
        for (int j = 0; j < k; ++j)
          for (int t = 0; t < c[j]; ++t) x = G.add(x, img[j]);
        seen.insert(x);
      }
      if (static_cast<int>(seen.size()) == n) ++count;
      return;
    }
    for (int a = 0; a < n; ++a) {
      // well defined only if n_i * a = 0
      int x = 0;
      for (int t = 0; t < G.n[i]; ++t) x = G.add(x, a);
      if (x != 0) continue;
      img[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

/// Subsets of the group closed under addition and containing 0.
inline bool is_subgroup(const Group& G, const std::vector<bool>& member) {
  if (!member[0]) return false;
  for (int a = 0; a < G.size(); ++a)
    if (member[a])
      for (int b = 0; b < G.size(); ++b)
        if (member[b] && !member[G.add(a, b)]) return false;
  return true;
}

/// All index-2 subgroups, found by testing every half-size subset.
inline std::vector<std::vector<bool>> index_two_subgroups(const Group& G) {
  const int n = G.size();
  std::vector<std::vector<bool>> out;
  if (n % 2) return out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + n / 2, true);
  std::sort(pick.begin(), pick.end());
  do {
    if (is_subgroup(G, pick)) out.push_back(pick);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

/// Inverse-closed subsets of the complement of B, counted one by one.
inline std::uint64_t inverse_closed_count(const Group& G, const std::vector<bool>& B) {
  std::vector<int> outside;
  for (int a = 0; a < G.size(); ++a)
    if (!B[a]) outside.push_back(a);
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << outside.size()); ++mask) {
    std::vector<bool> in(G.size(), false);
    for (std::size_t i = 0; i < outside.size(); ++i)
      if (mask >> i & 1) in[outside[i]] = true;
    bool ok = true;
    for (int a = 0; a < G.size(); ++a)
      if (in[a] && !in[G.neg(a)]) ok = false;
    if (ok) ++count;
  }
  return count;
}

/// Every multiset of cyclic orders (each >= 2) with product at most max_size,
/// listed with nondecreasing factors.
inline std::vector<std::vector<int>> factor_multisets(int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int min_factor, int product) {
    if (!cur.empty()) out.push_back(cur);
    for (int f = min_factor; product * f <= max_size; ++f) {
      cur.push_back(f);
      rec(f, product * f);
      cur.pop_back();
    }
  };
  rec(2, 1);
  return out;
}

/// Isomorphism test by trying every bijection.
inline bool isomorphic(const std::vector<std::vector<bool>>& a, const std::vector<std::vector<bool>>& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n; ++v)
        if (a[u][v] != b[perm[u]][perm[v]]) {
          ok = false;
          break;
        }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Smallest subgroup containing the listed elements.
inline std::vector<bool> generated(const Group& G, const std::vector<int>& gens) {
  std::vector<bool> in(G.size(), false);
  in[0] = true;
  std::vector<int> members{0};
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int g : gens) {
      int x = G.add(members[i], g);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  return in;
}

inline int count_members(const std::vector<bool>& m) { return static_cast<int>(std::count(m.begin(), m.end(), true)); }

/// Every subgroup, grown one generator at a time from the trivial one.
inline std::vector<std::vector<bool>> all_subgroups(const Group& G) {
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> out;
  std::vector<bool> triv(G.size(), false);
  triv[0] = true;
  seen.insert(triv);
  out.push_back(triv);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int a = 0; a < G.size(); ++a) {
      if (out[i][a]) continue;
      std::vector<int> gens{a};
      for (int x = 0; x < G.size(); ++x)
        if (out[i][x]) gens.push_back(x);
      auto h = generated(G, gens);
      if (seen.insert(h).second) out.push_back(h);
    }
  return out;
}

/// Subsets of the complement of B, optionally only the inverse-closed ones.
inline std::vector<std::vector<bool>> admissible_sets(const Group& G, const std::vector<bool>& B, bool inverse_closed) {
  std::vector<int> outside;
  for (int a = 0; a < G.size(); ++a)
    if (!B[a]) outside.push_back(a);
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << outside.size()); ++mask) {
    std::vector<bool> in(G.size(), false);
    for (std::size_t i = 0; i < outside.size(); ++i)
      if (mask >> i & 1) in[outside[i]] = true;
    bool ok = true;
    if (inverse_closed)
      for (int a = 0; a < G.size(); ++a)
        if (in[a] && !in[G.neg(a)]) ok = false;
    if (ok) out.push_back(in);
  }
  return out;
}

inline std::vector<int> elements_of(const std::vector<bool>& m) {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(m.size()); ++a)
    if (m[a]) out.push_back(a);
  return out;
}

/// X is a union of H-cosets.
inline bool union_of_cosets(const Group& G, const std::vector<bool>& H, const std::vector<bool>& X) {
  for (int x = 0; x < G.size(); ++x)
    if (X[x])
      for (int h = 0; h < G.size(); ++h)
        if (H[h] && !X[G.add(x, h)]) return false;
  return true;
}

/// Cyclic subgroup C of order >= 4 times elementary abelian Z, as member
/// lists, found among all subgroups.
inline std::vector<std::pair<std::vector<bool>, std::vector<bool>>> cyclic_by_elementary(const Group& G) {
  const auto subs = all_subgroups(G);
  std::vector<std::pair<std::vector<bool>, std::vector<bool>>> out;
  for (const auto& c : subs) {
    const int oc = count_members(c);
    if (oc < 4) continue;
    bool cyclic = false;
    for (int a = 0; a < G.size(); ++a)
      if (c[a] && G.order(a) == oc) cyclic = true;
    if (!cyclic) continue;
    for (const auto& z : subs) {
      const int oz = count_members(z);
      if (oc * oz != G.size()) continue;
      bool elementary = true;
      for (int a = 0; a < G.size(); ++a)
        if (z[a] && G.add(a, a) != 0) elementary = false;
      int meet = 0;
      for (int a = 0; a < G.size(); ++a)
        if (c[a] && z[a]) ++meet;
      if (elementary && meet == 1) out.emplace_back(c, z);
    }
  }
  return out;
}

}  // namespace oracle
