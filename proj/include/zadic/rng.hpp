#pragma once

#include <cstdint>
#include <random>

namespace zadic {

// Seeded generator with a portable bounded draw (the standard distributions
// are implementation-defined, which would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [lo, hi].
    long uniform(long lo, long hi)
    {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<long>(next());
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    bool coin() { return next() & 1; }

    // Independent stream for item i of a batch, stable under parallel execution.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t i)
    {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace zadic
