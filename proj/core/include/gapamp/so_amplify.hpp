#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapamp/instances.hpp"
#include "gapamp/rational.hpp"

namespace gapamp {

/// Layer schedule for the gap-amplifying self-reduction.
/// Defaults follow the construction exactly: B = 2*k*q^k layers and the
/// per-layer copy recurrence p_{i+1} = 40*k^4*q^{2k} * p_i (the sample
/// count 10 * delta^-2 * log2|F| with delta = 1/(2k*q^k) and
/// log2|F| <= p_i*k^2). Values that overflow uint64 are reported through
/// their base-2 logarithm only.
struct LayerPlan {
    std::uint32_t k = 0;
    std::uint32_t q = 0;
    std::optional<std::uint64_t> layers;              // B
    double layers_log2 = 0.0;
    std::optional<std::uint64_t> multiplier;          // p_{i+1} / p_i
    double multiplier_log2 = 0.0;
    std::vector<std::optional<std::uint64_t>> copies; // p_1..p_B (capped at 64 entries)
    std::vector<double> copies_log2;
    std::optional<Rational> delta;                    // 1/(2k*q^k)
    double delta_log2 = 0.0;
    std::optional<std::uint64_t> pair_count;          // k_0 = k * p_B
    double pair_count_log2 = 0.0;

    std::optional<std::uint64_t> copy_count(std::uint64_t layer) const;  // p_layer, 1-based
};

LayerPlan plan(std::uint32_t k, std::uint32_t q,
               std::optional<std::uint64_t> layer_override = {},
               std::optional<std::uint64_t> copies_multiplier_override = {});

struct PairProvenance {
    std::uint32_t copy = 0;             // the copy whose sink closes the pair
    std::uint32_t layer = 1;
    std::vector<std::uint32_t> tuple;   // R; empty for the initial layer
};

/// A stacked instance: vertex ids are copy_base[c] + original id, every
/// terminal pair has its source in layer 1 and its sink in the top layer,
/// connecting arcs run only from one layer's sinks into the next layer's
/// sources.
struct LayeredInstance {
    MixedInstance base;
    MixedInstance instance;
    std::vector<std::uint32_t> copy_layer;  // copy -> layer, 1-based
    std::vector<std::uint32_t> copy_base;   // copy -> first vertex id
    std::vector<PairProvenance> provenance; // one entry per terminal pair
    std::uint32_t layers = 1;

    std::uint32_t k() const { return std::uint32_t(base.pairs.size()); }
    std::uint32_t pair_universe() const { return std::uint32_t(instance.pairs.size()); }
    std::uint32_t layer_of_vertex(std::uint32_t v) const;
};

struct WiringMode {
    bool full_space = false;
    std::uint64_t seed = 0;

    static WiringMode sampled(std::uint64_t seed) { return {false, seed}; }
    static WiringMode full() { return {true, 0}; }
};

/// The single base copy, layer 1, before any stacking.
LayeredInstance initial_layered(const MixedInstance& base);

/// Appends one layer. The current instance is first replicated into k
/// vertex-disjoint copies (on the first call this promotes the single base
/// copy to k layer-1 copies); then, per tuple R from [k_i]^k, a fresh copy
/// of the base is added with connecting arcs from the sink of pair r_j of
/// prefix copy j into the fresh copy's source j. The terminal set is
/// replaced by the k pairs per tuple. The per-coordinate disjointness is
/// load-bearing: sharing one prefix across coordinates lets paths enter a
/// fresh copy through another coordinate's arc whenever base terminals
/// coincide, and the layer ratio can then grow.
void stack_layer(LayeredInstance& current, const std::vector<std::vector<std::uint32_t>>& tuples);

/// Runs stack_layer layers-1 times with p_{i+1} sampled tuples per layer
/// (or the whole tuple space). Deterministic given the seed.
LayeredInstance amplify(const MixedInstance& base, const LayerPlan& plan, WiringMode mode,
                        std::uint64_t size_cap);

/// Orientation of the stacked instance that applies a fully satisfying
/// base witness inside every copy; satisfies all pairs by construction.
Orientation witness_lift(const Orientation& base_witness, const LayeredInstance& result);

/// Per-copy satisfied-pair sets over [k_i]; the interface between layers.
struct Configuration {
    std::uint32_t pair_universe = 0;                    // k_i
    std::vector<std::vector<std::uint32_t>> satisfied;  // C_1..C_k
};

/// (1/k) * (sum c_j - prod c_j) with c_j = |C_j| / k_i: the expected
/// satisfiable fraction of one fresh copy's pairs under random wiring.
Rational configuration_bound(const Configuration& config);

/// Sidecar text: one line per pair with its index, layer and tuple R.
std::string provenance_to_text(const LayeredInstance& result);

} // namespace gapamp
