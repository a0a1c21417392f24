#pragma once

// Evaluation recurses on term depth; run deep work on a thread with a large stack.

#include <cstddef>
#include <functional>

namespace mca {

inline constexpr std::size_t kDefaultStackBytes = std::size_t{1} << 30;

/// Runs f to completion on a fresh thread with the given stack size and returns
/// its result. Exceptions thrown by f are rethrown in the caller.
int run_with_large_stack(const std::function<int()>& f, std::size_t stack_bytes = kDefaultStackBytes);

}  // namespace mca
