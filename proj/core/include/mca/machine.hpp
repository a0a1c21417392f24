#pragma once

// The eval/apply stack machine. States are
//
//   e ▷ π    evaluate closed term e against stack π
//   c ◀ π    return code c to stack π
//   Final c
//
// Stack entries are t(e), a pending argument term, and v(c), a function code
// waiting for its argument. #cc captures the whole stack as a k_π code.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mca/run.hpp"
#include "mca/term.hpp"

namespace mca {

class Stack {
 public:
  using Entry = std::variant<Expr, Code>;

  Stack() = default;

  Stack push(Entry entry) const;
  bool empty() const { return !head_; }
  const Entry& top() const;
  Stack pop() const;
  std::size_t size() const { return head_ ? head_->size : 0; }

  /// Entries top first, as `t(...)` / `v(...)` separated by ", ".
  std::string show() const;

 private:
  struct Node {
    Entry entry;
    std::shared_ptr<const Node> next;
    std::size_t size;
  };
  explicit Stack(std::shared_ptr<const Node> head) : head_(std::move(head)) {}
  std::shared_ptr<const Node> head_;
};

/// Payload of a k_π code: the captured stack π.
struct StackPayload : PrimPayload {
  explicit StackPayload(Stack s) : stack(std::move(s)) {}
  Stack stack;
};

struct MachineState {
  enum class Kind { Eval, Apply, Final };
  Kind kind;
  std::optional<Expr> term;  // Eval
  std::optional<Code> code;  // Apply, Final
  Stack stack;

  static MachineState eval(Expr e, Stack s = {});
  static MachineState apply(Code c, Stack s = {});
  static MachineState final(Code c);

  /// `E|A|F <tab> term-or-code <tab> stack`
  std::string show() const;
};

class MachineStuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One transition. Every rule costs one unit of fuel except halting.
/// Throws MachineStuck when a primitive without a machine rule is applied.
MachineState step(const MachineState& s, Run& run);

enum class MachineStatus { Final, FuelExhausted, Stuck };

struct MachineResult {
  MachineStatus status;
  std::optional<Code> value;
  std::uint64_t steps = 0;
  std::uint64_t fuel_used = 0;
  std::string stuck_reason;
  /// Visited states, first = e ▷ ∅, when tracing was requested.
  std::vector<MachineState> trace;
};

MachineResult run_machine(const Expr& e, std::uint64_t fuel, bool keep_trace = false);

/// The trace as text, one state per line.
std::string format_trace(const std::vector<MachineState>& trace);

}  // namespace mca
