#include "mca/syntax.hpp"

#include <cctype>
#include <limits>

namespace mca {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
      position_(position) {}

const Code& s_code() {
  static const Code s = Code::closure(
      2, Expr::app(Expr::app(Expr::var(0), Expr::var(2)), Expr::app(Expr::var(1), Expr::var(2))));
  return s;
}

const Code& k_code() {
  static const Code k = Code::closure(1, Expr::var(0));
  return k;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char ch = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '<' || ch == '#' || ch == '(' ||
           ch == 'S' || ch == 'K';
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::uint32_t nat() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value >= (std::uint64_t{1} << 32)) {
        pos_ = start;
        fail("number out of range");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return static_cast<std::uint32_t>(value);
  }

  Expr term() {
    if (!at_atom_start()) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a term");
    Expr e = atom();
    while (at_atom_start()) e = Expr::app(std::move(e), atom());
    return e;
  }

  Expr atom() {
    skip_ws();
    const std::size_t start = pos_;
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return Expr::var(nat());
    if (ch == 'S' || ch == 'K') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = start;
        fail("unknown identifier");
      }
      return Expr::lit(ch == 'S' ? s_code() : k_code());
    }
    if (ch == '(') {
      ++pos_;
      Expr e = term();
      expect(')');
      return e;
    }
    if (ch == '#') {
      ++pos_;
      const std::size_t id_start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(id_start, pos_ - id_start);
      if (name.empty()) fail("expected a primitive name");
      if (name == "k" && pos_ < text_.size() && text_[pos_] == ':') {
        pos_ = start;
        fail("captured continuations cannot be written in source");
      }
      const auto kind = prim_from_name(name);
      if (!kind) {
        pos_ = start;
        fail("unknown primitive '#" + std::string(name) + "'");
      }
      return Expr::lit(Code::prim(*kind));
    }
    // '<' NAT '|' term '>'
    ++pos_;
    const std::uint32_t n = nat();
    expect('|');
    const std::size_t body_pos = pos_;
    Expr body = term();
    expect('>');
    if (n == std::numeric_limits<std::uint32_t>::max() || body.bound() > n + 1) {
      pos_ = body_pos;
      fail("variable " + std::to_string(body.bound() - 1) + " is out of scope in <" +
           std::to_string(n) + "|...>");
    }
    return Expr::lit(Code::closure(n, std::move(body)));
  }
};

void print_code(std::string& out, const Code& c, const PrintOptions& opts);

void print_expr(std::string& out, const Expr& e, const PrintOptions& opts) {
  switch (e.tag()) {
    case Expr::Tag::Var:
      out += std::to_string(e.level());
      return;
    case Expr::Tag::Lit:
      print_code(out, e.code(), opts);
      return;
    case Expr::Tag::App:
      print_expr(out, e.fun(), opts);
      out += ' ';
      if (e.arg().is_app()) {
        out += '(';
        print_expr(out, e.arg(), opts);
        out += ')';
      } else {
        print_expr(out, e.arg(), opts);
      }
      return;
  }
}

void print_code(std::string& out, const Code& c, const PrintOptions& opts) {
  if (c.is_prim()) {
    out += '#';
    out += prim_name(c.kind());
    if (c.kind() == PrimKind::Kont) out += ':' + std::to_string(c.id());
    return;
  }
  if (opts.sk_names) {
    if (c == s_code()) {
      out += 'S';
      return;
    }
    if (c == k_code()) {
      out += 'K';
      return;
    }
  }
  out += '<';
  out += std::to_string(c.remaining());
  out += '|';
  print_expr(out, c.body(), opts);
  out += '>';
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

Code parse_code(std::string_view text) {
  Expr e = parse(text);
  if (!e.is_lit()) throw ParseError(0, "expected a single code literal");
  return e.code();
}

std::string print(const Expr& e, PrintOptions opts) {
  std::string out;
  print_expr(out, e, opts);
  return out;
}

std::string print(const Code& c, PrintOptions opts) {
  std::string out;
  print_code(out, c, opts);
  return out;
}

bool scope_check(const Expr& e, std::uint32_t n) { return e.bound() <= n; }

Expr subst(const Expr& e, const Code& c) {
  if (e.bound() == 0) return e;
  switch (e.tag()) {
    case Expr::Tag::Var:
      return e.level() == 0 ? Expr::lit(c) : Expr::var(e.level() - 1);
    case Expr::Tag::Lit:
      return e;
    case Expr::Tag::App: {
      Expr f = subst(e.fun(), c);
      Expr a = subst(e.arg(), c);
      return Expr::app(std::move(f), std::move(a));
    }
  }
  return e;
}

}  // namespace mca
