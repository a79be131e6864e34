#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapamp/instances.hpp"
#include "gapamp/oracles.hpp"

namespace gapamp {

/// All-pairs canonical paths over the relaxation digraph of an acyclic
/// instance: shortest paths, ties broken toward the smallest next vertex.
/// P_{u,u} is the empty path at u. The family satisfies
///   (1) adjacency u->v implies P_{u,v} = (u, v),
///   (2) w on P_{u,v} implies P_{u,v} = P_{u,w} ++ P_{w,v}.
struct CanonicalFamily {
    std::uint32_t n = 0;
    std::vector<std::vector<std::int32_t>> dist;       // -1 = unreachable
    std::vector<std::vector<std::uint32_t>> next_hop;  // UINT32_MAX = none

    bool reachable(std::uint32_t u, std::uint32_t v) const { return dist[u][v] >= 0; }
    std::vector<std::uint32_t> path(std::uint32_t u, std::uint32_t v) const;
};

CanonicalFamily canonical_family(const MixedInstance& inst);  // throws NotAcyclic

/// True iff some undirected edge is traversed by the two paths in opposite
/// directions. Paths are vertex sequences over the relaxation digraph.
bool paths_conflict(std::span<const std::uint32_t> p, std::span<const std::uint32_t> q,
                    const MixedInstance& inst);

/// Breakpoints decomposing a path into canonical pieces.
struct Support {
    std::vector<std::uint32_t> breakpoints;
};

/// Minimum-size support via dynamic programming over breakpoint positions.
Support min_support(std::span<const std::uint32_t> path, const CanonicalFamily& family);

struct CliqueVertex {
    std::uint32_t row = 0;  // terminal pair index i
    std::uint32_t col = 0;  // column j within the row
    std::uint32_t u = 0;    // payload: canonical path endpoints
    std::uint32_t v = 0;
};

struct CliqueInstance {
    std::uint32_t k = 0;
    std::uint32_t beta = 0;
    std::uint32_t target = 0;  // k * beta
    std::vector<CliqueVertex> verts;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, a < b
};

/// Parts (i,j) hold reachable payload pairs (u,v) including (u,u), with
/// u = s_i forced in the first column and v = t_i in the last; edges join
/// non-conflicting canonical paths, and row-consecutive columns keep an
/// edge only when the paths chain (v1 == u2).
CliqueInstance build_clique_instance(const MixedInstance& inst, std::uint32_t beta);

/// Orients every undirected edge used by a selected canonical path along
/// its traversal; unused edges stay as written. Satisfies all k pairs.
Orientation clique_to_orientation(const MixedInstance& inst, const CliqueInstance& clique_inst,
                                  std::span<const std::uint32_t> clique);

struct MinBetaResult {
    std::uint32_t beta = 0;
    std::vector<std::uint32_t> clique;
};

/// 4k * 4^k * (2k)^{2k}: the column count that provably suffices for any
/// satisfiable acyclic instance. Astronomically larger than what desk-scale
/// instances need, so searches use min_beta instead; nullopt past uint64.
std::optional<std::uint64_t> canonical_beta_bound(std::uint32_t k);

/// Smallest beta in 1..beta_max whose clique instance has a k*beta clique.
std::optional<MinBetaResult> min_beta(const MixedInstance& inst, std::uint32_t beta_max,
                                      std::uint64_t vertex_cap = std::uint64_t(1) << 20);

PartGraph to_part_graph(const CliqueInstance& inst);

std::string serialize_clique(const CliqueInstance& inst);
CliqueInstance parse_clique(std::string_view text);

} // namespace gapamp
