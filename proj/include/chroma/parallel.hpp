#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace chroma {

// splitmix64 step; used to derive independent per-task seeds from one base
// seed so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace chroma
