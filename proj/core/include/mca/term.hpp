#pragma once

// Applicative expressions over de Bruijn levels, and the codes they evaluate to.
//
// Expr and Code are immutable handles onto shared nodes. Every node caches its
// structural hash, its scope bound and the set of primitive kinds it mentions,
// so scope checks and separator membership are O(1) and substitution can skip
// closed subterms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mca {

enum class PrimKind : std::uint8_t { Flip, Fail, Get, Inc, Cc, Search, Kont };

constexpr std::uint32_t prim_bit(PrimKind k) { return 1u << static_cast<unsigned>(k); }

std::string_view prim_name(PrimKind kind);
std::optional<PrimKind> prim_from_name(std::string_view name);

/// Effect-specific data carried by a primitive code, e.g. a captured continuation.
class PrimPayload {
 public:
  virtual ~PrimPayload() = default;
};

/// Raised when a de Bruijn level escapes its binder.
class ScopeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
struct ExprNode;
struct CodeNode;
struct Access;
}  // namespace detail

class Expr;

class Code {
 public:
  /// ⟨λⁿ.body⟩ with body ∈ E_{n+1}; throws ScopeError otherwise.
  static Code closure(std::uint32_t remaining, Expr body);
  static Code prim(PrimKind kind, std::uint64_t id = 0,
                   std::shared_ptr<const PrimPayload> payload = nullptr);

  bool is_closure() const;
  bool is_prim() const { return !is_closure(); }

  // Closure accessors.
  std::uint32_t remaining() const;
  const Expr& body() const;

  // Primitive accessors.
  PrimKind kind() const;
  std::uint64_t id() const;
  const std::shared_ptr<const PrimPayload>& payload() const;

  std::size_t hash() const;
  std::uint32_t prim_mask() const;
  std::uint32_t size() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Code& a, const Code& b);
  friend std::strong_ordering operator<=>(const Code& a, const Code& b);

 private:
  explicit Code(std::shared_ptr<const detail::CodeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::CodeNode> node_;
  friend class Expr;
  friend struct detail::Access;
};

class Expr {
 public:
  enum class Tag : std::uint8_t { Var, Lit, App };

  static Expr var(std::uint32_t level);
  static Expr lit(Code code);
  static Expr app(Expr fun, Expr arg);

  Tag tag() const;
  bool is_var() const { return tag() == Tag::Var; }
  bool is_lit() const { return tag() == Tag::Lit; }
  bool is_app() const { return tag() == Tag::App; }

  std::uint32_t level() const;
  const Code& code() const;
  const Expr& fun() const;
  const Expr& arg() const;

  /// Least n such that this expression is in E_n.
  std::uint32_t bound() const;
  std::size_t hash() const;
  std::uint32_t prim_mask() const;
  std::uint32_t size() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::ExprNode> node_;
  friend class Code;
  friend struct detail::Access;
};

/// Left-nested application of a head to arguments: f a₁ a₂ …
template <class... Args>
Expr apps(Expr head, Args... args) {
  ((head = Expr::app(std::move(head), std::move(args))), ...);
  return head;
}

}  // namespace mca

template <>
struct std::hash<mca::Code> {
  std::size_t operator()(const mca::Code& c) const noexcept { return c.hash(); }
};

template <>
struct std::hash<mca::Expr> {
  std::size_t operator()(const mca::Expr& e) const noexcept { return e.hash(); }
};
