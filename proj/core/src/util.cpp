#include "tmpow/util.hpp"

#include <algorithm>
#include <atomic>

namespace tmpow {

void parallel_chunks(uint64_t total, uint64_t chunk_size, unsigned workers,
                     const std::function<void(uint64_t, uint64_t, uint64_t)>& fn) {
    if (total == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    uint64_t nchunks = (total + chunk_size - 1) / chunk_size;
    if (workers <= 1 || nchunks == 1) {
        for (uint64_t c = 0; c < nchunks; ++c)
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return;
    }
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace tmpow
