#pragma once

#include <cstdint>
#include <functional>

namespace hadwalk {

/// Worker count: HW_THREADS environment variable when set, else the hardware
/// concurrency (at least 1).
int thread_budget();

/// Runs fn(chunk_index, begin, end) for every chunk of [0, total), where the
/// chunk grid depends only on `total` and `chunk_size` — never on the worker
/// count — so per-chunk partial results merged in chunk order give the same
/// answer on any machine.
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace hadwalk
