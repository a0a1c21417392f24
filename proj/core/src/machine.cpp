#include "mca/machine.hpp"

#include "mca/syntax.hpp"

namespace mca {

Stack Stack::push(Entry entry) const {
  return Stack(std::make_shared<const Node>(Node{std::move(entry), head_, size() + 1}));
}

const Stack::Entry& Stack::top() const {
  if (!head_) throw std::logic_error("top of an empty stack");
  return head_->entry;
}

Stack Stack::pop() const {
  if (!head_) throw std::logic_error("pop of an empty stack");
  return Stack(head_->next);
}

std::string Stack::show() const {
  std::string out;
  for (const Node* n = head_.get(); n; n = n->next.get()) {
    if (!out.empty()) out += ", ";
    if (const auto* e = std::get_if<Expr>(&n->entry)) {
      out += "t(" + print(*e) + ")";
    } else {
      out += "v(" + print(std::get<Code>(n->entry)) + ")";
    }
  }
  return out;
}

MachineState MachineState::eval(Expr e, Stack s) { return {Kind::Eval, std::move(e), std::nullopt, std::move(s)}; }
MachineState MachineState::apply(Code c, Stack s) { return {Kind::Apply, std::nullopt, std::move(c), std::move(s)}; }
MachineState MachineState::final(Code c) { return {Kind::Final, std::nullopt, std::move(c), Stack{}}; }

std::string MachineState::show() const {
  switch (kind) {
    case Kind::Eval:
      return "E\t" + print(*term) + "\t" + stack.show();
    case Kind::Apply:
      return "A\t" + print(*code) + "\t" + stack.show();
    case Kind::Final:
      return "F\t" + print(*code) + "\t";
  }
  return {};
}

MachineState step(const MachineState& s, Run& run) {
  switch (s.kind) {
    case MachineState::Kind::Final:
      throw std::logic_error("step from a final state");
    case MachineState::Kind::Eval: {
      const Expr& e = *s.term;
      if (e.bound() != 0) throw ScopeError("machine state holds an open term: " + print(e));
      run.charge();
      if (e.is_app()) return MachineState::eval(e.fun(), s.stack.push(e.arg()));
      return MachineState::apply(e.code(), s.stack);
    }
    case MachineState::Kind::Apply:
      break;
  }
  const Code& c = *s.code;
  if (s.stack.empty()) return MachineState::final(c);
  run.charge();
  const Stack rest = s.stack.pop();
  if (const auto* arg = std::get_if<Expr>(&s.stack.top())) {
    return MachineState::eval(*arg, rest.push(c));
  }
  const Code& f = std::get<Code>(s.stack.top());
  if (f.is_closure()) {
    if (f.remaining() == 0) return MachineState::eval(subst(f.body(), c), rest);
    return MachineState::apply(Code::closure(f.remaining() - 1, subst(f.body(), c)), rest);
  }
  switch (f.kind()) {
    case PrimKind::Cc: {
      Code k = Code::prim(PrimKind::Kont, run.fresh_id(), std::make_shared<StackPayload>(rest));
      return MachineState::apply(std::move(k), rest.push(c));
    }
    case PrimKind::Kont:
      if (auto p = std::dynamic_pointer_cast<const StackPayload>(f.payload())) {
        return MachineState::apply(c, p->stack);
      }
      throw MachineStuck("continuation " + print(f) + " was not captured by this machine");
    default:
      throw MachineStuck("no machine rule for " + print(f));
  }
}

MachineResult run_machine(const Expr& e, std::uint64_t fuel, bool keep_trace) {
  if (e.bound() != 0) throw ScopeError("machine input is open: " + print(e));
  MachineResult result;
  result.status = MachineStatus::FuelExhausted;
  Run run(fuel);
  MachineState s = MachineState::eval(e);
  if (keep_trace) result.trace.push_back(s);
  try {
    while (s.kind != MachineState::Kind::Final) {
      s = step(s, run);
      ++result.steps;
      if (keep_trace) result.trace.push_back(s);
    }
    result.status = MachineStatus::Final;
    result.value = *s.code;
  } catch (const FuelExhausted&) {
    result.status = MachineStatus::FuelExhausted;
  } catch (const MachineStuck& err) {
    result.status = MachineStatus::Stuck;
    result.stuck_reason = err.what();
  }
  result.fuel_used = run.used();
  return result;
}

std::string format_trace(const std::vector<MachineState>& trace) {
  std::string out;
  for (const auto& s : trace) out += s.show() + '\n';
  return out;
}

}  // namespace mca
