#pragma once

// Per-evaluation resources: the fuel budget and the fresh-identifier supply.

#include <cstdint>
#include <stdexcept>

namespace mca {

/// Raised when a computation needs more machine transitions than its budget.
/// Never folded into an effect's result unless a caller opts in explicitly.
class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted() : std::runtime_error("fuel exhausted") {}
};

/// Fuel counts abstract-machine transitions. The evaluator charges exactly what
/// the machine would spend on the same term, so both exhaust at the same budget.
class Run {
 public:
  explicit Run(std::uint64_t fuel) : fuel_(fuel) {}

  void charge(std::uint64_t n = 1) {
    if (n > fuel_) {
      used_ += fuel_;
      fuel_ = 0;
      throw FuelExhausted();
    }
    fuel_ -= n;
    used_ += n;
  }

  std::uint64_t remaining() const { return fuel_; }
  std::uint64_t used() const { return used_; }

  /// Identifiers for captured continuations; deterministic per run.
  std::uint64_t fresh_id() { return next_id_++; }

  /// Runs f on a child budget of at most `cap` fuel. The child shares the id
  /// supply. Fuel it spends is charged here only if it finishes.
  template <class F>
  auto nested(std::uint64_t cap, F&& f) -> decltype(f(std::declval<Run&>())) {
    Run child(cap < fuel_ ? cap : fuel_);
    child.next_id_ = next_id_;
    struct Sync {
      Run& parent;
      Run& child;
      ~Sync() { parent.next_id_ = child.next_id_; }
    } sync{*this, child};
    auto result = f(child);
    charge(child.used());
    return result;
  }

 private:
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  std::uint64_t next_id_ = 0;
};

}  // namespace mca
