#include "mca/term.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <unordered_set>
#include <utility>

namespace mca {

namespace detail {

struct ExprNode {
  Expr::Tag tag;
  std::uint32_t level = 0;
  std::optional<Code> code;
  std::optional<Expr> fun;
  std::optional<Expr> arg;
  std::size_t hash = 0;
  std::uint32_t bound = 0;
  std::uint32_t prims = 0;
  std::uint32_t size = 1;
};

struct CodeNode {
  bool closure = false;
  std::uint32_t remaining = 0;
  std::optional<Expr> body;
  PrimKind kind = PrimKind::Flip;
  std::uint64_t id = 0;
  std::shared_ptr<const PrimPayload> payload;
  std::size_t hash = 0;
  std::uint32_t prims = 0;
  std::uint32_t size = 1;
};

struct Access {
  static const ExprNode* node(const Expr& e) { return e.node_.get(); }
  static const CodeNode* node(const Code& c) { return c.node_.get(); }
};

}  // namespace detail

namespace {

using detail::Access;
using detail::CodeNode;
using detail::ExprNode;

constexpr std::array<std::string_view, 7> kPrimNames = {"flip", "fail", "get", "inc",
                                                        "cc",   "search", "k"};

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint32_t sat_add(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t s = std::uint64_t{a} + b + 1;
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(s, std::numeric_limits<std::uint32_t>::max()));
}

struct PairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
    return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
  }
};

// Pairs of distinct nodes already proven equal. Only used for large terms, where
// shared subterms would otherwise make a naive comparison exponential.
using EqMemo = std::unordered_set<std::pair<const void*, const void*>, PairHash>;

constexpr std::uint32_t kMemoThreshold = 64;

bool eq_code(const CodeNode* a, const CodeNode* b, EqMemo* memo);

bool eq_expr(const ExprNode* a, const ExprNode* b, EqMemo* memo) {
  if (a == b) return true;
  if (a->hash != b->hash || a->size != b->size || a->tag != b->tag) return false;
  if (memo && memo->count({a, b})) return true;
  bool same = false;
  switch (a->tag) {
    case Expr::Tag::Var:
      same = a->level == b->level;
      break;
    case Expr::Tag::Lit:
      same = eq_code(Access::node(*a->code), Access::node(*b->code), memo);
      break;
    case Expr::Tag::App:
      same = eq_expr(Access::node(*a->fun), Access::node(*b->fun), memo) &&
             eq_expr(Access::node(*a->arg), Access::node(*b->arg), memo);
      break;
  }
  if (same && memo) memo->insert({a, b});
  return same;
}

bool eq_code(const CodeNode* a, const CodeNode* b, EqMemo* memo) {
  if (a == b) return true;
  if (a->hash != b->hash || a->size != b->size || a->closure != b->closure) return false;
  if (!a->closure) return a->kind == b->kind && a->id == b->id;
  if (a->remaining != b->remaining) return false;
  if (memo && memo->count({a, b})) return true;
  const bool same = eq_expr(Access::node(*a->body), Access::node(*b->body), memo);
  if (same && memo) memo->insert({a, b});
  return same;
}

bool equal_expr(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (a->size < kMemoThreshold) return eq_expr(a, b, nullptr);
  EqMemo memo;
  return eq_expr(a, b, &memo);
}

bool equal_code(const CodeNode* a, const CodeNode* b) {
  if (a == b) return true;
  if (a->size < kMemoThreshold) return eq_code(a, b, nullptr);
  EqMemo memo;
  return eq_code(a, b, &memo);
}

std::strong_ordering cmp_code(const CodeNode* a, const CodeNode* b);

std::strong_ordering cmp_expr(const ExprNode* a, const ExprNode* b) {
  if (equal_expr(a, b)) return std::strong_ordering::equal;
  if (a->tag != b->tag) return a->tag <=> b->tag;
  switch (a->tag) {
    case Expr::Tag::Var:
      return a->level <=> b->level;
    case Expr::Tag::Lit:
      return cmp_code(Access::node(*a->code), Access::node(*b->code));
    case Expr::Tag::App: {
      const auto* fa = Access::node(*a->fun);
      const auto* fb = Access::node(*b->fun);
      if (!equal_expr(fa, fb)) return cmp_expr(fa, fb);
      return cmp_expr(Access::node(*a->arg), Access::node(*b->arg));
    }
  }
  return std::strong_ordering::equal;
}

std::strong_ordering cmp_code(const CodeNode* a, const CodeNode* b) {
  if (equal_code(a, b)) return std::strong_ordering::equal;
  if (a->closure != b->closure) return a->closure ? std::strong_ordering::less : std::strong_ordering::greater;
  if (!a->closure) {
    if (a->kind != b->kind) return a->kind <=> b->kind;
    return a->id <=> b->id;
  }
  if (a->remaining != b->remaining) return a->remaining <=> b->remaining;
  return cmp_expr(Access::node(*a->body), Access::node(*b->body));
}

}  // namespace

std::string_view prim_name(PrimKind kind) { return kPrimNames[static_cast<std::size_t>(kind)]; }

std::optional<PrimKind> prim_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPrimNames.size(); ++i) {
    if (kPrimNames[i] == name && static_cast<PrimKind>(i) != PrimKind::Kont) {
      return static_cast<PrimKind>(i);
    }
  }
  return std::nullopt;
}

// ---- Code ----

Code Code::closure(std::uint32_t remaining, Expr body) {
  if (remaining == std::numeric_limits<std::uint32_t>::max() || body.bound() > remaining + 1) {
    throw ScopeError("closure body of <" + std::to_string(remaining) + "|...> mentions level " +
                     std::to_string(body.bound() - 1));
  }
  auto node = std::make_shared<CodeNode>();
  node->closure = true;
  node->remaining = remaining;
  node->hash = mix(mix(0x51ed27ULL, remaining), body.hash());
  node->prims = body.prim_mask();
  node->size = sat_add(body.size(), 0);
  node->body = std::move(body);
  return Code(std::move(node));
}

Code Code::prim(PrimKind kind, std::uint64_t id, std::shared_ptr<const PrimPayload> payload) {
  auto node = std::make_shared<CodeNode>();
  node->closure = false;
  node->kind = kind;
  node->id = id;
  node->payload = std::move(payload);
  node->hash = mix(mix(0x9a11ULL, static_cast<std::size_t>(kind)), id);
  node->prims = prim_bit(kind);
  return Code(std::move(node));
}

bool Code::is_closure() const { return node_->closure; }

std::uint32_t Code::remaining() const {
  if (!node_->closure) throw std::logic_error("remaining() on a primitive code");
  return node_->remaining;
}

const Expr& Code::body() const {
  if (!node_->closure) throw std::logic_error("body() on a primitive code");
  return *node_->body;
}

PrimKind Code::kind() const {
  if (node_->closure) throw std::logic_error("kind() on a closure code");
  return node_->kind;
}

std::uint64_t Code::id() const { return node_->id; }
const std::shared_ptr<const PrimPayload>& Code::payload() const { return node_->payload; }
std::size_t Code::hash() const { return node_->hash; }
std::uint32_t Code::prim_mask() const { return node_->prims; }
std::uint32_t Code::size() const { return node_->size; }

bool operator==(const Code& a, const Code& b) { return equal_code(a.node_.get(), b.node_.get()); }

std::strong_ordering operator<=>(const Code& a, const Code& b) {
  return cmp_code(a.node_.get(), b.node_.get());
}

// ---- Expr ----

Expr Expr::var(std::uint32_t level) {
  if (level == std::numeric_limits<std::uint32_t>::max()) throw ScopeError("variable level out of range");
  auto node = std::make_shared<ExprNode>();
  node->tag = Tag::Var;
  node->level = level;
  node->bound = level + 1;
  node->hash = mix(0x7a12ULL, level);
  return Expr(std::move(node));
}

Expr Expr::lit(Code code) {
  auto node = std::make_shared<ExprNode>();
  node->tag = Tag::Lit;
  node->hash = mix(0x11c0ULL, code.hash());
  node->prims = code.prim_mask();
  node->size = sat_add(code.size(), 0);
  node->code = std::move(code);
  return Expr(std::move(node));
}

Expr Expr::app(Expr fun, Expr arg) {
  auto node = std::make_shared<ExprNode>();
  node->tag = Tag::App;
  node->bound = std::max(fun.bound(), arg.bound());
  node->hash = mix(mix(0xa99ULL, fun.hash()), arg.hash());
  node->prims = fun.prim_mask() | arg.prim_mask();
  node->size = sat_add(fun.size(), arg.size());
  node->fun = std::move(fun);
  node->arg = std::move(arg);
  return Expr(std::move(node));
}

Expr::Tag Expr::tag() const { return node_->tag; }

std::uint32_t Expr::level() const {
  if (node_->tag != Tag::Var) throw std::logic_error("level() on a non-variable");
  return node_->level;
}

const Code& Expr::code() const {
  if (node_->tag != Tag::Lit) throw std::logic_error("code() on a non-literal");
  return *node_->code;
}

const Expr& Expr::fun() const {
  if (node_->tag != Tag::App) throw std::logic_error("fun() on a non-application");
  return *node_->fun;
}

const Expr& Expr::arg() const {
  if (node_->tag != Tag::App) throw std::logic_error("arg() on a non-application");
  return *node_->arg;
}

std::uint32_t Expr::bound() const { return node_->bound; }
std::size_t Expr::hash() const { return node_->hash; }
std::uint32_t Expr::prim_mask() const { return node_->prims; }
std::uint32_t Expr::size() const { return node_->size; }

bool operator==(const Expr& a, const Expr& b) { return equal_expr(a.node_.get(), b.node_.get()); }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  return cmp_expr(a.node_.get(), b.node_.get());
}

}  // namespace mca
