#include "hadwalk/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hadwalk {

int thread_budget() {
    if (const char* env = std::getenv("HW_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
    const int workers = static_cast<int>(std::min<std::uint64_t>(n_chunks, static_cast<std::uint64_t>(thread_budget())));

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * chunk_size;
        const std::uint64_t end = std::min(total, begin + chunk_size);
        fn(static_cast<std::size_t>(c), begin, end);
    };

    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
        });
    for (auto& th : pool) th.join();
}

}  // namespace hadwalk
