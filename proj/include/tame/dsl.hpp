#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tame/boxset.hpp"
#include "tame/error.hpp"

namespace tame::dsl {

/// Abstract syntax of a set expression.
struct SetExpr {
  enum class Kind { box, unite, intersect, difference, complement, product, translate, scale, permute, reflect, name };

  Kind kind = Kind::box;
  std::vector<SetExpr> children;
  std::vector<Interval> box;  // Kind::box
  std::vector<double> args;   // translate/scale/permute/reflect
  std::string name;           // Kind::name

  friend bool operator==(const SetExpr&, const SetExpr&) = default;
};

namespace detail {

enum class Tok {
  lbrack, rbrack, lparen, rparen, lbrace, rbrace, comma, pipe, amp, backslash, bang, product,
  number, inf, neg_inf, ident, end
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double value = 0.0;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

inline const std::set<std::string_view>& function_names() {
  static const std::set<std::string_view> names{"translate", "scale", "permute", "reflect"};
  return names;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { lex(); }

  SetExpr parse_all() {
    SetExpr e = expr();
    if (peek().kind != Tok::end) fail(peek().offset, "end of input or an operator");
    return e;
  }

 private:
  [[noreturn]] void fail(std::size_t offset, std::string expected) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(offset, line, col, std::move(expected));
  }

  void lex() {
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t start, std::size_t len, double v = 0.0) {
      toks_.push_back({k, start, src_.substr(start, len), v});
      i = start + len;
    };
    while (i < src_.size()) {
      const char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      switch (c) {
        case '[': push(Tok::lbrack, i, 1); continue;
        case ']': push(Tok::rbrack, i, 1); continue;
        case '(': push(Tok::lparen, i, 1); continue;
        case ')': push(Tok::rparen, i, 1); continue;
        case '{': push(Tok::lbrace, i, 1); continue;
        case '}': push(Tok::rbrace, i, 1); continue;
        case ',': push(Tok::comma, i, 1); continue;
        case '|': push(Tok::pipe, i, 1); continue;
        case '&': push(Tok::amp, i, 1); continue;
        case '\\': push(Tok::backslash, i, 1); continue;
        case '!': push(Tok::bang, i, 1); continue;
        default: break;
      }
      if (c == '-' && src_.substr(i + 1, 3) == "inf" && (i + 4 >= src_.size() || !is_ident_char(src_[i + 4]))) {
        push(Tok::neg_inf, i, 4);
        continue;
      }
      if (is_digit(c) || c == '.' || ((c == '-' || c == '+') && i + 1 < src_.size() &&
                                      (is_digit(src_[i + 1]) || src_[i + 1] == '.'))) {
        std::size_t j = i + ((c == '-' || c == '+') ? 1 : 0);
        while (j < src_.size() && is_digit(src_[j])) ++j;
        if (j < src_.size() && src_[j] == '.') ++j;
        while (j < src_.size() && is_digit(src_[j])) ++j;
        if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < src_.size() && (src_[k] == '-' || src_[k] == '+')) ++k;
          if (k < src_.size() && is_digit(src_[k])) {
            j = k;
            while (j < src_.size() && is_digit(src_[j])) ++j;
          }
        }
        const std::size_t start = c == '+' ? i + 1 : i;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + j, v);
        if (ec != std::errc() || ptr != src_.data() + j) fail(i, "NUMBER");
        push(Tok::number, i, j - i, v);
        continue;
      }
      if (is_ident_start(c)) {
        std::size_t j = i;
        while (j < src_.size() && is_ident_char(src_[j])) ++j;
        const auto word = src_.substr(i, j - i);
        push(word == "x" ? Tok::product : word == "inf" ? Tok::inf : Tok::ident, i, j - i);
        continue;
      }
      fail(i, "a token");
    }
    toks_.push_back({Tok::end, src_.size(), {}});
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek().offset, what);
    return take();
  }

  static SetExpr binary(SetExpr::Kind k, SetExpr l, SetExpr r) {
    SetExpr e;
    e.kind = k;
    e.children.push_back(std::move(l));
    e.children.push_back(std::move(r));
    return e;
  }

  SetExpr expr() {
    SetExpr e = term();
    while (peek().kind == Tok::pipe) {
      take();
      e = binary(SetExpr::Kind::unite, std::move(e), term());
    }
    return e;
  }

  SetExpr term() {
    SetExpr e = factor();
    while (peek().kind == Tok::amp || peek().kind == Tok::backslash) {
      const auto k = take().kind == Tok::amp ? SetExpr::Kind::intersect : SetExpr::Kind::difference;
      e = binary(k, std::move(e), factor());
    }
    return e;
  }

  SetExpr factor() {
    if (peek().kind == Tok::bang) {
      take();
      SetExpr e;
      e.kind = SetExpr::Kind::complement;
      e.children.push_back(factor());
      return e;
    }
    SetExpr e = atom();
    while (peek().kind == Tok::product) {
      take();
      e = binary(SetExpr::Kind::product, std::move(e), atom());
    }
    return e;
  }

  static bool is_bound(Tok k) { return k == Tok::number || k == Tok::inf || k == Tok::neg_inf; }

  bool at_interval() const {
    const auto k = peek().kind;
    return k == Tok::lbrack || k == Tok::lbrace || (k == Tok::lparen && is_bound(peek(1).kind));
  }

  SetExpr atom() {
    const Token& t = peek();
    if (at_interval()) return box();
    if (t.kind == Tok::lparen) {
      take();
      SetExpr e = expr();
      expect(Tok::rparen, "\")\"");
      return e;
    }
    if (t.kind == Tok::ident) {
      if (function_names().count(t.text)) return func();
      SetExpr e;
      e.kind = SetExpr::Kind::name;
      e.name = std::string(take().text);
      return e;
    }
    fail(t.offset, "an interval, \"(\", \"!\", a function or a name");
  }

  SetExpr box() {
    SetExpr e;
    e.kind = SetExpr::Kind::box;
    e.box.push_back(interval());
    while (peek().kind == Tok::comma &&
           (peek(1).kind == Tok::lbrack || peek(1).kind == Tok::lbrace ||
            (peek(1).kind == Tok::lparen && is_bound(peek(2).kind)))) {
      take();
      e.box.push_back(interval());
    }
    return e;
  }

  double bound() {
    const Token& t = peek();
    if (!is_bound(t.kind)) fail(t.offset, "NUMBER, \"-inf\" or \"inf\"");
    take();
    if (t.kind == Tok::inf) return kInf;
    if (t.kind == Tok::neg_inf) return -kInf;
    return t.value;
  }

  Interval interval() {
    const Token open = take();
    if (open.kind == Tok::lbrace) {
      const Token& t = peek();
      if (t.kind != Tok::number) fail(t.offset, "NUMBER");
      take();
      expect(Tok::rbrace, "\"}\"");
      return Interval::point(t.value);
    }
    const std::size_t lo_at = peek().offset;
    const double lo = bound();
    expect(Tok::comma, "\",\"");
    const std::size_t hi_at = peek().offset;
    const double hi = bound();
    const Token& close = peek();
    if (close.kind != Tok::rbrack && close.kind != Tok::rparen) fail(close.offset, "\"]\" or \")\"");
    take();
    const bool lo_closed = open.kind == Tok::lbrack;
    const bool hi_closed = close.kind == Tok::rbrack;
    if (!std::isfinite(lo) && lo_closed) fail(lo_at, "an open bracket \"(\" before an infinite bound");
    if (!std::isfinite(hi) && hi_closed) fail(close.offset, "an open bracket \")\" after an infinite bound");
    auto iv = Interval::make(lo, hi, lo_closed, hi_closed);
    if (!iv) fail(hi_at, "an upper bound making the interval nonempty");
    return *iv;
  }

  SetExpr func() {
    const Token& name = take();
    SetExpr e;
    if (name.text == "translate") e.kind = SetExpr::Kind::translate;
    else if (name.text == "scale") e.kind = SetExpr::Kind::scale;
    else if (name.text == "permute") e.kind = SetExpr::Kind::permute;
    else e.kind = SetExpr::Kind::reflect;
    expect(Tok::lparen, "\"(\"");
    e.children.push_back(expr());
    while (peek().kind == Tok::comma) {
      take();
      e.args.push_back(expect(Tok::number, "NUMBER").value);
    }
    expect(Tok::rparen, "\",\" or \")\"");
    return e;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SetExpr parse(std::string_view source) { return detail::Parser(source).parse_all(); }

/// Canonical text; binary nodes are fully parenthesized so the output reparses
/// to the same tree.
inline std::string print(const SetExpr& e) {
  using K = SetExpr::Kind;
  auto bin = [&](const char* op) { return "(" + print(e.children[0]) + " " + op + " " + print(e.children[1]) + ")"; };
  auto fn = [&](const char* name) {
    std::string out = std::string(name) + "(" + print(e.children[0]);
    for (double a : e.args) out += ", " + format_real(a);
    return out + ")";
  };
  switch (e.kind) {
    case K::box: {
      std::string out;
      for (std::size_t i = 0; i < e.box.size(); ++i) out += (i ? "," : "") + to_string(e.box[i]);
      return out;
    }
    case K::unite: return bin("|");
    case K::intersect: return bin("&");
    case K::difference: return bin("\\");
    case K::product: return bin("x");
    case K::complement: return "!" + print(e.children[0]);
    case K::translate: return fn("translate");
    case K::scale: return fn("scale");
    case K::permute: return fn("permute");
    case K::reflect: return fn("reflect");
    case K::name: return e.name;
  }
  return {};
}

using Environment = std::map<std::string, BoxComplex, std::less<>>;

namespace detail {
inline std::size_t as_index(double v, const char* what) {
  if (!(v >= 0) || v != std::floor(v)) throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}
}  // namespace detail

inline BoxComplex evaluate(const SetExpr& e, const Environment& env = {}) {
  using K = SetExpr::Kind;
  switch (e.kind) {
    case K::box: return box(e.box);
    case K::unite: return unite(evaluate(e.children[0], env), evaluate(e.children[1], env));
    case K::intersect: return intersect(evaluate(e.children[0], env), evaluate(e.children[1], env));
    case K::difference: return difference(evaluate(e.children[0], env), evaluate(e.children[1], env));
    case K::product: return cartesian_product(evaluate(e.children[0], env), evaluate(e.children[1], env));
    case K::complement: return complement(evaluate(e.children[0], env));
    case K::translate: return translate(evaluate(e.children[0], env), e.args);
    case K::scale:
      if (e.args.size() != 1) throw std::invalid_argument("scale takes exactly one factor");
      return scale(evaluate(e.children[0], env), e.args[0]);
    case K::permute: {
      std::vector<std::size_t> sigma;
      for (double a : e.args) sigma.push_back(detail::as_index(a, "permutation entry"));
      return axis_permute(evaluate(e.children[0], env), sigma);
    }
    case K::reflect:
      if (e.args.size() != 1) throw std::invalid_argument("reflect takes exactly one axis");
      return reflect(evaluate(e.children[0], env), detail::as_index(e.args[0], "reflection axis"));
    case K::name: {
      auto it = env.find(e.name);
      if (it == env.end()) throw unknown_name(e.name);
      return it->second;
    }
  }
  throw std::logic_error("unhandled expression kind");
}

struct Definition {
  std::string name;
  SetExpr expr;
};

/// Parses "name = expr" lines; '#' starts a comment. Error positions refer to
/// the whole file.
inline std::vector<Definition> parse_definitions(std::string_view text) {
  std::vector<Definition> defs;
  std::size_t line_start = 0, line_no = 1;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto at = [&](std::size_t col0) { return line_start + col0; };

    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i < line.size()) {
      const std::size_t name_start = i;
      if (!detail::is_ident_start(line[i])) throw parse_error(at(i), line_no, i + 1, "a definition name");
      while (i < line.size() && detail::is_ident_char(line[i])) ++i;
      const std::string name(line.substr(name_start, i - name_start));
      if (name == "x" || name == "inf" || detail::function_names().count(name))
        throw parse_error(at(name_start), line_no, name_start + 1, "a name that is not reserved");
      if (std::any_of(defs.begin(), defs.end(), [&](const Definition& d) { return d.name == name; }))
        throw parse_error(at(name_start), line_no, name_start + 1, "a name not already defined");
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size() || line[i] != '=') throw parse_error(at(i), line_no, i + 1, "\"=\"");
      ++i;
      try {
        defs.push_back({name, parse(line.substr(i))});
      } catch (const parse_error& pe) {
        const std::size_t col0 = i + pe.offset();
        throw parse_error(at(col0), line_no, col0 + 1, pe.expected());
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
    ++line_no;
  }
  return defs;
}

/// Evaluates definitions in dependency order; later names may be referenced
/// earlier as long as there is no cycle.
inline Environment resolve(const std::vector<Definition>& defs, Environment base = {}) {
  std::map<std::string, const SetExpr*, std::less<>> pending;
  for (const auto& d : defs) pending[d.name] = &d.expr;
  std::set<std::string, std::less<>> active;

  auto visit = [&](auto&& self, const std::string& name) -> void {
    if (base.count(name)) return;
    auto it = pending.find(name);
    if (it == pending.end()) throw unknown_name(name);
    if (!active.insert(name).second) throw cyclic_definition(name);
    std::vector<const SetExpr*> stack{it->second};
    while (!stack.empty()) {
      const SetExpr* e = stack.back();
      stack.pop_back();
      if (e->kind == SetExpr::Kind::name) self(self, e->name);
      for (const auto& c : e->children) stack.push_back(&c);
    }
    base.emplace(name, evaluate(*it->second, base));
    active.erase(name);
  };
  for (const auto& d : defs) visit(visit, d.name);
  return base;
}

}  // namespace tame::dsl
