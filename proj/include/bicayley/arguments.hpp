#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "bicayley/automorphism.hpp"
#include "bicayley/cayley.hpp"
#include "bicayley/error.hpp"
#include "bicayley/group.hpp"
#include "bicayley/parse.hpp"

namespace bicayley {

/// Subgroup spec:
///   index:k      k-th index-2 subgroup in index2_subgroups order
///   type:<spec>  first index-2 subgroup isomorphic to <spec>, e.g. type:C4xC2
///   A2           the elements of order at most 2
///   otherwise    generators, as an element list ("2", "(1,0);(0,1)")
inline Subgroup parse_subgroup(const AbelianGroup& A, std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  if (trimmed.starts_with("index:")) {
    const auto digits = trimmed.substr(6);
    std::size_t k = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') detail::parse_fail("expected subgroup number after 'index:'", text, 6);
      k = k * 10 + static_cast<std::size_t>(c - '0');
    }
    if (digits.empty()) detail::parse_fail("expected subgroup number after 'index:'", text, 6);
    const auto subs = index2_subgroups(A);
    if (k >= subs.size())
      throw Error(ErrorCode::BadSubgroup, A.name() + " has " + std::to_string(subs.size()) +
                                              " index-2 subgroups, asked for index:" + std::to_string(k));
    return subs[k];
  }
  if (trimmed.starts_with("type:")) {
    const auto want = AbelianGroup::build(parse_group_spec(trimmed.substr(5))).invariant_factors();
    for (const auto& B : index2_subgroups(A))
      if (invariant_factors(A, B) == want) return B;
    throw Error(ErrorCode::BadSubgroup, A.name() + " has no index-2 subgroup of type " + std::string(trimmed.substr(5)));
  }
  if (trimmed == "A2") return involution_subgroup(A);
  return Subgroup::generated(A, parse_element_list(A, text));
}

/// Connection set spec: an element list, or `all-minus-B` for A \ B.
inline Bitset parse_connection_set(const AbelianGroup& A, const Subgroup* B, std::string_view text) {
  if (text == "all-minus-B") {
    if (!B) throw Error(ErrorCode::BadParameter, "all-minus-B needs --subgroup");
    return A.full_set() - B->members();
  }
  Bitset s = A.empty_set();
  for (ElementIndex a : parse_element_list(A, text)) s.set(a);
  return s;
}

/// Counts written as 1000000, 1e6 or 2^24.
inline std::uint64_t parse_count(std::string_view text) {
  const std::string s(text);
  try {
    if (auto caret = s.find('^'); caret != std::string::npos) {
      const auto base = std::stoull(s.substr(0, caret));
      const auto exp = std::stoull(s.substr(caret + 1));
      const long double v = std::pow(static_cast<long double>(base), static_cast<long double>(exp));
      if (v > 1.8e19L) throw Error(ErrorCode::ParseError, "count '" + s + "' too large");
      return static_cast<std::uint64_t>(v);
    }
    std::size_t used = 0;
    if (s.find_first_of("eE.") != std::string::npos) {
      const long double v = std::stold(s, &used);
      if (used != s.size() || v < 0 || v > 1.8e19L || v != std::floor(v)) throw std::invalid_argument(s);
      return static_cast<std::uint64_t>(v);
    }
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "expected a count like 1000000, 1e6 or 2^24, got '" + s + "'");
  }
}

inline Mode parse_mode(std::string_view s) {
  if (s == "directed") return Mode::Directed;
  if (s == "undirected") return Mode::Undirected;
  throw Error(ErrorCode::ParseError, "mode must be directed or undirected, got '" + std::string(s) + "'");
}

}  // namespace bicayley
