#pragma once

#include <cstdint>

#include "gapamp/instances.hpp"

namespace gapamp {

/// The canonical NO gadget: one undirected edge, pairs (0,1) and (1,0).
/// Exactly one pair is satisfiable.
MixedInstance gen_no_edge();

/// k vertex-disjoint s_i -> t_i chains of `links` steps each, the first
/// `undirected` of them undirected. Fully satisfiable by orienting forward.
MixedInstance gen_yes_chain(std::uint32_t k, std::uint32_t links = 2,
                            std::uint32_t undirected = 1);

/// Orienting every chain forward; satisfies all pairs of gen_yes_chain.
Orientation yes_chain_witness(const MixedInstance& inst);

/// Two arcs, four pairs (each arc requested twice), budget 1: at most two
/// pairs are separable.
MulticutInstance gen_dmc_no();

/// Four disjoint arcs, four pairs, budget 4: fully separable.
MulticutInstance gen_dmc_yes();

struct RandomMixedOptions {
    std::uint32_t n = 7;
    std::uint32_t k = 2;
    std::uint32_t edges = 4;   // attempted undirected edges (forest-guarded)
    std::uint32_t arcs = 6;    // attempted arcs (acyclicity-guarded)
    bool planted = false;      // pick pairs along existing relaxation paths
    std::uint64_t seed = 1;
};

/// Seeded acyclic mixed instance: an undirected forest plus arcs that
/// respect a fixed component order, so no orientation creates a cycle.
MixedInstance gen_random_mixed(const RandomMixedOptions& options);

} // namespace gapamp
