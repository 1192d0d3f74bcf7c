#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "meshlimit/pattern.hpp"
#include "meshlimit/permutation.hpp"

namespace meshlimit {

// Grammar or validation failure while reading a pattern string. The message
// says which rule broke (grammar, bijection, box range).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Whitespace is insignificant everywhere in the pattern grammar.
inline std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

class PatternScanner {
 public:
  explicit PatternScanner(std::string text) : text_(std::move(text)) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("pattern: expected '") + c + "' at offset " +
                       std::to_string(pos_) + (done() ? " (end of input)" : ""));
  }

  int integer() {
    const bool neg = eat('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("pattern: expected integer at offset " + std::to_string(pos_));
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (take() - '0');
      if (v > 1000000) throw ParseError("pattern: integer too large");
    }
    return static_cast<int>(neg ? -v : v);
  }

  std::string word() {
    std::string w;
    while (std::isalpha(static_cast<unsigned char>(peek()))) w.push_back(take());
    return w;
  }

  size_t offset() const { return pos_; }

 private:
  std::string text_;
  size_t pos_ = 0;
};

inline Permutation scan_perm(PatternScanner& sc) {
  std::vector<int> letters;
  if (sc.eat('[')) {
    letters.push_back(sc.integer());
    while (sc.eat(',')) letters.push_back(sc.integer());
    sc.expect(']');
  } else {
    while (std::isdigit(static_cast<unsigned char>(sc.peek())))
      letters.push_back(sc.take() - '0');
    if (letters.empty())
      throw ParseError("pattern: expected permutation digits or bracketed word");
  }
  try {
    return Permutation(std::move(letters));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pattern: ") + e.what());
  }
}

inline void append_checked(std::vector<Box>& out, int x, int y, int k) {
  if (x < 0 || x > k || y < 0 || y > k)
    throw ParseError("pattern: box (" + std::to_string(x) + "," + std::to_string(y) +
                     ") outside grid 0.." + std::to_string(k));
  out.push_back({x, y});
}

inline void scan_macro_item(PatternScanner& sc, const std::string& name, int k,
                            std::vector<Box>& out) {
  if (name == "border") {
    for (int t = 0; t <= k; ++t) {
      append_checked(out, 0, t, k);
      append_checked(out, k, t, k);
      append_checked(out, t, 0, k);
      append_checked(out, t, k, k);
    }
    return;
  }
  auto one_arg = [&] {
    sc.expect('(');
    const int v = sc.integer();
    sc.expect(')');
    return v;
  };
  if (name == "row") {
    const int y = one_arg();
    for (int x = 0; x <= k; ++x) append_checked(out, x, y, k);
  } else if (name == "col") {
    const int x = one_arg();
    for (int y = 0; y <= k; ++y) append_checked(out, x, y, k);
  } else if (name == "allbutrow") {
    const int y0 = one_arg();
    if (y0 < 0 || y0 > k) throw ParseError("pattern: allbutrow index outside grid");
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y)
        if (y != y0) append_checked(out, x, y, k);
  } else if (name == "allbutcol") {
    const int x0 = one_arg();
    if (x0 < 0 || x0 > k) throw ParseError("pattern: allbutcol index outside grid");
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y)
        if (x != x0) append_checked(out, x, y, k);
  } else if (name.empty()) {
    throw ParseError("pattern: expected shading item at offset " +
                     std::to_string(sc.offset()));
  } else {
    throw ParseError("pattern: unknown shading item '" + name + "'");
  }
}

inline ShadingSet scan_shading(PatternScanner& sc, int k) {
  std::vector<Box> out;
  bool first = true;
  do {
    if (std::isdigit(static_cast<unsigned char>(sc.peek())) || sc.peek() == '-') {
      const int x = sc.integer();
      sc.expect(',');
      const int y = sc.integer();
      append_checked(out, x, y, k);
    } else {
      const std::string w = sc.word();
      if (first && sc.done()) {
        if (w == "none") return ShadingSet();
        if (w == "all") return ShadingSet::full(k);
      }
      scan_macro_item(sc, w, k, out);
    }
    first = false;
  } while (sc.eat(';'));
  return ShadingSet(std::move(out));
}

}  // namespace detail

// Parses "perm ':' shading". The permutation is compact digits or a
// bracketed comma list (required for length >= 10); the shading is "none",
// "all", or ';'-separated items, each an explicit "x,y" pair or one of the
// macros row(y), col(x), border, allbutrow(y), allbutcol(x). Macros union
// with explicit pairs; whitespace is ignored.
inline MeshPattern parse_pattern(std::string_view text) {
  detail::PatternScanner sc(detail::strip_spaces(text));
  Permutation pi = detail::scan_perm(sc);
  sc.expect(':');
  ShadingSet shading = detail::scan_shading(sc, pi.size());
  if (!sc.done())
    throw ParseError("pattern: trailing input at offset " + std::to_string(sc.offset()));
  return MeshPattern(std::move(pi), std::move(shading));
}

inline std::string format_perm(const Permutation& pi) {
  std::string out;
  if (pi.size() <= 9) {
    for (int v : pi.letters()) out.push_back(static_cast<char>('0' + v));
    return out;
  }
  out.push_back('[');
  for (size_t t = 0; t < pi.letters().size(); ++t) {
    if (t) out.push_back(',');
    out += std::to_string(pi.letters()[t]);
  }
  out.push_back(']');
  return out;
}

// Canonical form: compact digit permutation for length <= 9 (bracketed
// otherwise) and explicit sorted boxes, "none" when the shading is empty.
// parse_pattern(format_pattern(p)) == p for every valid p.
inline std::string format_pattern(const MeshPattern& p) {
  std::string out = format_perm(p.perm());
  out.push_back(':');
  if (p.shading().empty()) return out + "none";
  bool first = true;
  for (const Box& b : p.shading().boxes()) {
    if (!first) out.push_back(';');
    out += std::to_string(b.x);
    out.push_back(',');
    out += std::to_string(b.y);
    first = false;
  }
  return out;
}

// Permutation-only parse for CLI arguments (same two word forms).
inline Permutation parse_perm(std::string_view text) {
  detail::PatternScanner sc(detail::strip_spaces(text));
  Permutation pi = detail::scan_perm(sc);
  if (!sc.done())
    throw ParseError("permutation: trailing input at offset " + std::to_string(sc.offset()));
  return pi;
}

}  // namespace meshlimit
