#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tmpow {

inline constexpr const char* kVersion = "0.1.0";

// Thrown when an internal invariant that the construction guarantees fails.
// Distinct from invalid_argument so the CLI can map it to a separate exit code.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// Budget exhausted (precision ceiling, term budget, digit budget).
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// splitmix64: stable, platform-independent generator used wherever a seeded
// deterministic stream is required. Not std::mt19937 because report
// reproducibility must not depend on the standard library implementation.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Static chunked parallel sweep over [0, total). Each chunk is processed by
// fn(chunk_index, begin, end); chunk boundaries depend only on `total` and
// `chunk_size`, never on the worker count, so per-chunk results can be
// concatenated in chunk order to give worker-count-independent output.
void parallel_chunks(uint64_t total, uint64_t chunk_size, unsigned workers,
                     const std::function<void(uint64_t, uint64_t, uint64_t)>& fn);

} // namespace tmpow
