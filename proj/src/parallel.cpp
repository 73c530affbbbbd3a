#include "sternmu/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sternmu {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("STERNMU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t count, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    const int workers =
        std::min<std::size_t>(resolve_threads(threads), (count + chunk_size - 1) / chunk_size);
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t lo = next.fetch_add(chunk_size);
            if (lo >= count) return;
            fn(lo, std::min(lo + chunk_size, count));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace sternmu
