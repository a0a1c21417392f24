#pragma once

// Separators: combinatory-complete sets of codes admissible as evidence.
// Membership is decided by which primitive kinds a code mentions, so every
// closure built from members is again a member.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mca/term.hpp"

namespace mca {

class Separator {
 public:
  /// Codes mentioning only primitives in `allowed_prims`. `designated` codes
  /// always appear among generated members.
  Separator(std::string name, std::uint32_t allowed_prims, std::vector<Code> designated = {});

  /// Every code the effect can run.
  static Separator all(std::uint32_t effect_prims, std::vector<Code> designated = {});
  /// Closures without primitives.
  static Separator pure();
  /// Proof-like codes: pure closures extended with #cc, but no captured continuation.
  static Separator proof_like();
  /// Every code the effect can run, except #fail.
  static Separator no_fail(std::uint32_t effect_prims);

  const std::string& name() const { return name_; }
  std::uint32_t allowed_prims() const { return allowed_; }
  const std::vector<Code>& designated() const { return designated_; }

  bool contains(const Code& c) const { return (c.prim_mask() & ~allowed_) == 0; }

  /// `count` members: designated codes, S, K, the loop code, the allowed
  /// primitives, and seeded random closures over them.
  std::vector<Code> generate(std::size_t count, std::uint64_t seed) const;

 private:
  std::string name_;
  std::uint32_t allowed_;
  std::vector<Code> designated_;
};

}  // namespace mca
