#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapamp/instances.hpp"

namespace gapamp {

// Hard caps: the constructions explode, so oversized searches fail loudly
// with TooLarge instead of hanging.
inline constexpr std::uint64_t kOrientationCap = std::uint64_t(1) << 22;
inline constexpr std::uint64_t kCutsetCap = 10'000'000;

struct SoOracleResult {
    std::uint32_t value = 0;
    Orientation witness;
};

struct DmcOracleResult {
    std::uint32_t value = 0;
    Cutset witness;
};

/// Maximum satisfied pairs over all 2^|E| orientations. Deterministic for
/// any thread count: ties resolve to the lexicographically first witness.
SoOracleResult opt_so(const MixedInstance& inst,
                      std::uint64_t limit = kOrientationCap,
                      unsigned threads = 1);

/// Maximum separated pairs over all cutsets of size <= budget.
DmcOracleResult opt_dmc(const MulticutInstance& inst,
                        std::uint64_t limit = kCutsetCap);

/// Undirected graph with optional part labels, adjacency as bitset rows.
struct PartGraph {
    std::uint32_t n = 0;
    std::uint32_t parts = 0;             // 0 = unlabeled
    std::vector<std::int32_t> part;      // -1 when unlabeled
    std::vector<std::uint64_t> adj;      // n rows of ceil(n/64) words

    std::size_t words() const { return (n + 63) / 64; }
    void init(std::uint32_t vertex_count, std::uint32_t part_count);
    void set_part(std::uint32_t v, std::uint32_t p) { part[v] = std::int32_t(p); }
    void add_edge(std::uint32_t a, std::uint32_t b);
    bool adjacent(std::uint32_t a, std::uint32_t b) const;
};

/// Searches for a clique of size `target`. With part labels the search
/// walks parts in label order picking one vertex per part (target must
/// equal the part count); unlabeled graphs use plain backtracking.
std::optional<std::vector<std::uint32_t>> max_clique_at_least(const PartGraph& graph,
                                                              std::uint32_t target);

} // namespace gapamp
