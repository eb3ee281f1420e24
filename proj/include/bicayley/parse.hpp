#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bicayley/error.hpp"
#include "bicayley/group.hpp"

namespace bicayley {

namespace detail {

[[noreturn]] inline void parse_fail(std::string_view what, std::string_view text, std::size_t pos) {
  throw Error(ErrorCode::ParseError,
              std::string(what) + " at position " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, std::string_view what) {
    if (!accept(c)) parse_fail(what, text_, pos_);
  }
  std::int64_t integer(std::string_view what) {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) parse_fail("integer too large", text_, start);
      ++pos_;
    }
    if (pos_ == start) parse_fail(what, text_, start);
    return negative ? -v : v;
  }
  std::size_t pos() const { return pos_; }
  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

inline bool is_blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses the group grammar `C<n>` factors joined by `x`, each optionally
/// repeated with `^k`, e.g. "C4xC2^3". Whitespace is ignored.
inline std::vector<int> parse_group_spec(std::string_view text) {
  detail::Cursor cur(text);
  std::vector<int> orders;
  if (cur.done()) detail::parse_fail("empty group spec", text, 0);
  while (true) {
    if (!(cur.accept('C') || cur.accept('c'))) detail::parse_fail("expected 'C'", text, cur.pos());
    const std::int64_t n = cur.integer("expected cyclic order after 'C'");
    std::int64_t reps = 1;
    if (cur.accept('^')) reps = cur.integer("expected repetition count after '^'");
    if (reps < 1) detail::parse_fail("repetition count must be positive", text, cur.pos());
    if (n < 2) detail::parse_fail("cyclic order must be at least 2", text, cur.pos());
    for (std::int64_t i = 0; i < reps; ++i) orders.push_back(static_cast<int>(n));
    if (cur.done()) break;
    if (!(cur.accept('x') || cur.accept('X'))) detail::parse_fail("expected 'x' between factors", text, cur.pos());
  }
  return orders;
}

inline AbelianGroup parse_group(std::string_view text, std::size_t size_cap = kDefaultGroupSizeCap) {
  return AbelianGroup::build(parse_group_spec(text), size_cap);
}

/// Parses one element tuple "a,b,c" (coordinates reduced modulo n_i).
inline ElementIndex parse_element(const AbelianGroup& A, std::string_view text) {
  detail::Cursor cur(text);
  Element e;
  cur.accept('(');
  for (std::size_t i = 0; i < A.rank(); ++i) {
    if (i) cur.expect(',', "expected ',' between coordinates");
    const std::int64_t n = A.orders()[i];
    e.coords.push_back(((cur.integer("expected coordinate") % n) + n) % n);
  }
  cur.accept(')');
  if (!cur.done()) detail::parse_fail("trailing characters after element", text, cur.pos());
  return A.encode(e);
}

/// Element list: `;` separates elements. For single-factor groups a `,`
/// also separates elements, so "1,3,5" in C6 is three elements.
inline std::vector<ElementIndex> parse_element_list(const AbelianGroup& A, std::string_view text) {
  std::vector<ElementIndex> out;
  if (detail::is_blank(text)) return out;
  for (auto part : detail::split(text, ';')) {
    if (detail::is_blank(part)) continue;
    if (A.rank() == 1) {
      for (auto sub : detail::split(part, ',')) {
        if (detail::is_blank(sub)) continue;
        out.push_back(parse_element(A, sub));
      }
    } else {
      out.push_back(parse_element(A, part));
    }
  }
  return out;
}

}  // namespace bicayley
