#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace gapamp {

/// Seeded generator with an unbiased bounded draw. mt19937_64 output is
/// pinned by the standard, and the rejection loop avoids the
/// implementation-defined std::uniform_int_distribution, so identical
/// seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform value in [0, n).
    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold)
                return r % n;
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace gapamp
