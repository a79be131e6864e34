#include "gapamp/so_amplify.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gapamp/error.hpp"
#include "gapamp/rng.hpp"

namespace gapamp {

namespace {

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::nullopt;
    return a * b;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        auto next = checked_mul(out, base);
        if (!next)
            return std::nullopt;
        out = *next;
    }
    return out;
}

} // namespace

std::optional<std::uint64_t> LayerPlan::copy_count(std::uint64_t layer) const {
    assert(layer >= 1);
    if (layer - 1 < copies.size())
        return copies[layer - 1];
    return std::nullopt;
}

LayerPlan plan(std::uint32_t k, std::uint32_t q,
               std::optional<std::uint64_t> layer_override,
               std::optional<std::uint64_t> copies_multiplier_override) {
    if (k < 1)
        throw Error(ErrorCode::EmptyTerminals, "k must be at least 1");
    if (q < 2)
        throw Error(ErrorCode::QTooSmall, "gap q must be at least 2");

    LayerPlan out;
    out.k = k;
    out.q = q;

    const double log2q = std::log2(double(q));
    const double default_layers_log2 = 1.0 + std::log2(double(k)) + double(k) * log2q;

    // B = 2*k*q^k
    out.layers_log2 = default_layers_log2;
    if (auto qk = checked_pow(q, k)) {
        if (auto b = checked_mul(2 * std::uint64_t(k), *qk))
            out.layers = b;
    }
    if (layer_override) {
        out.layers = *layer_override;
        out.layers_log2 = std::log2(double(*layer_override));
    }

    // delta = 1 / (2k * q^k), independent of any layer override
    out.delta_log2 = -default_layers_log2;
    if (auto qk = checked_pow(q, k)) {
        if (auto den = checked_mul(2 * std::uint64_t(k), *qk)) {
            if (*den <= std::uint64_t(std::numeric_limits<std::int64_t>::max()))
                out.delta = Rational(1, std::int64_t(*den));
        }
    }

    // p_{i+1} = 40 * k^4 * q^{2k} * p_i
    out.multiplier_log2 = std::log2(40.0) + 4.0 * std::log2(double(k)) + 2.0 * double(k) * log2q;
    if (auto q2k = checked_pow(q, 2 * std::uint64_t(k))) {
        if (auto k4 = checked_pow(k, 4)) {
            auto m = checked_mul(40, *k4);
            if (m)
                m = checked_mul(*m, *q2k);
            if (m)
                out.multiplier = *m;
        }
    }
    if (copies_multiplier_override) {
        out.multiplier = *copies_multiplier_override;
        out.multiplier_log2 = std::log2(double(*copies_multiplier_override));
    }

    // materialize p_1..p_B while they fit (listing capped; amplify runs the
    // recurrence itself, so the cap only limits what plan reports)
    const std::uint64_t listed = std::min<std::uint64_t>(out.layers.value_or(1024), 1024);
    std::optional<std::uint64_t> p = 1;
    double p_log2 = 0.0;
    for (std::uint64_t i = 1; i <= listed; ++i) {
        out.copies.push_back(p);
        out.copies_log2.push_back(p_log2);
        if (p && out.multiplier)
            p = checked_mul(*p, *out.multiplier);
        else
            p.reset();
        p_log2 += out.multiplier_log2;
    }

    // k_0 = k * p_B with p_B = multiplier^(B-1)
    const double layers_as_double =
        out.layers ? double(*out.layers) : std::exp2(out.layers_log2);
    out.pair_count_log2 =
        std::log2(double(k)) + (layers_as_double - 1.0) * out.multiplier_log2;
    if (out.layers && *out.layers <= listed && out.copies[*out.layers - 1]) {
        if (auto k0 = checked_mul(k, *out.copies[*out.layers - 1])) {
            out.pair_count = k0;
            out.pair_count_log2 = std::log2(double(*k0));
        }
    }
    return out;
}

std::uint32_t LayeredInstance::layer_of_vertex(std::uint32_t v) const {
    auto it = std::upper_bound(copy_base.begin(), copy_base.end(), v);
    assert(it != copy_base.begin());
    return copy_layer[std::uint32_t(it - copy_base.begin()) - 1];
}

LayeredInstance initial_layered(const MixedInstance& base) {
    LayeredInstance out;
    out.base = base;
    out.instance = base;
    out.copy_layer = {1};
    out.copy_base = {0};
    out.provenance.assign(base.pairs.size(), PairProvenance{0, 1, {}});
    out.layers = 1;
    return out;
}

namespace {

// appends a disjoint copy of the base graph (arcs and edges, not pairs)
std::uint32_t append_copy(LayeredInstance& li, std::uint32_t layer) {
    const std::uint32_t offset = li.instance.n;
    li.instance.n += li.base.n;
    for (const auto& [u, v] : li.base.arcs)
        li.instance.arcs.push_back({u + offset, v + offset});
    for (const auto& [u, v] : li.base.edges)
        li.instance.edges.push_back({u + offset, v + offset});
    li.copy_base.push_back(offset);
    li.copy_layer.push_back(layer);
    return std::uint32_t(li.copy_base.size()) - 1;
}

} // namespace

void stack_layer(LayeredInstance& current, const std::vector<std::vector<std::uint32_t>>& tuples) {
    const std::uint32_t k = current.k();
    const std::uint32_t universe = current.pair_universe();  // k_i

    for (const auto& tuple : tuples) {
        if (tuple.size() != k)
            throw Error(ErrorCode::TupleOutOfRange,
                        "tuple length " + std::to_string(tuple.size()) + ", expected " +
                            std::to_string(k));
        for (std::uint32_t r : tuple)
            if (r >= universe)
                throw Error(ErrorCode::TupleOutOfRange,
                            "tuple coordinate " + std::to_string(r) + " outside [0, " +
                                std::to_string(universe) + ")");
    }

    // k vertex-disjoint copies of the whole current instance: coordinate j
    // draws from the j-th one, so no path can shortcut across coordinates
    const std::uint32_t n_old = current.instance.n;
    const std::vector<VertexPair> prev_pairs = current.instance.pairs;
    const std::size_t old_copies = current.copy_base.size();
    const std::vector<VertexPair> old_arcs = current.instance.arcs;
    const std::vector<VertexPair> old_edges = current.instance.edges;
    for (std::uint32_t dup = 1; dup < k; ++dup) {
        const std::uint32_t offset = dup * n_old;
        for (const auto& [u, v] : old_arcs)
            current.instance.arcs.push_back({u + offset, v + offset});
        for (const auto& [u, v] : old_edges)
            current.instance.edges.push_back({u + offset, v + offset});
        for (std::size_t c = 0; c < old_copies; ++c) {
            current.copy_base.push_back(current.copy_base[c] + offset);
            current.copy_layer.push_back(current.copy_layer[c]);
        }
    }
    current.instance.n = k * n_old;

    std::vector<VertexPair> new_pairs;
    std::vector<PairProvenance> new_provenance;
    std::set<VertexPair> connecting;  // selected sinks may repeat across tuples

    const std::uint32_t new_layer = current.layers + 1;
    for (const auto& tuple : tuples) {
        std::uint32_t copy = append_copy(current, new_layer);
        std::uint32_t offset = current.copy_base[copy];
        for (std::uint32_t j = 0; j < k; ++j) {
            VertexPair selected{j * n_old + prev_pairs[tuple[j]].first,
                                j * n_old + prev_pairs[tuple[j]].second};
            connecting.insert({selected.second, offset + current.base.pairs[j].first});
            new_pairs.push_back({selected.first, offset + current.base.pairs[j].second});
            new_provenance.push_back({copy, new_layer, tuple});
        }
    }

    current.instance.arcs.insert(current.instance.arcs.end(), connecting.begin(),
                                 connecting.end());
    current.instance.pairs = std::move(new_pairs);
    current.provenance = std::move(new_provenance);
    current.layers = new_layer;
    canonicalize(current.instance);
}

LayeredInstance amplify(const MixedInstance& base, const LayerPlan& plan, WiringMode mode,
                        std::uint64_t size_cap) {
    if (plan.q < 2)
        throw Error(ErrorCode::QTooSmall, "gap q must be at least 2");
    if (!plan.layers)
        throw Error(ErrorCode::CapExceeded, "layer count exists only symbolically");
    const std::uint64_t layers = *plan.layers;
    if (layers < 1)
        throw Error(ErrorCode::CapExceeded, "plan needs at least one layer");

    const std::uint32_t k = std::uint32_t(base.pairs.size());

    // per-layer copy counts: recurrence for sampled mode, k_i^k for full space
    auto layer_copies = [&](std::uint64_t layer_index,
                            std::uint64_t prev_p) -> std::optional<std::uint64_t> {
        if (mode.full_space) {
            auto ki = checked_mul(k, prev_p);
            if (!ki)
                return std::nullopt;
            return checked_pow(*ki, k);
        }
        (void)layer_index;
        if (!plan.multiplier)
            return std::nullopt;
        return checked_mul(prev_p, *plan.multiplier);
    };

    // project the final size before building anything: each step takes k
    // disjoint copies of the current instance plus p_{i+1} fresh base copies
    {
        std::uint64_t copies = 1;
        std::uint64_t p = 1;
        for (std::uint64_t i = 2; i <= layers; ++i) {
            auto next = layer_copies(i, p);
            if (!next || *next > size_cap)
                throw Error(ErrorCode::CapExceeded,
                            "layer " + std::to_string(i) + " copy count exceeds the cap");
            p = *next;
            auto grown = checked_mul(copies, k);
            if (!grown || *grown > size_cap - p)
                throw Error(ErrorCode::CapExceeded, "total copy count exceeds the cap");
            copies = *grown + p;
            if (checked_mul(k, p).value_or(UINT64_MAX) > UINT32_MAX)
                throw Error(ErrorCode::CapExceeded, "pair count exceeds uint32");
        }
        auto verts = checked_mul(copies, base.n);
        auto arcs = checked_mul(copies, base.arcs.size() + k);
        if (!verts || !arcs || *verts > size_cap || *arcs > size_cap)
            throw Error(ErrorCode::CapExceeded,
                        "projected size exceeds the cap of " + std::to_string(size_cap));
    }

    LayeredInstance out = initial_layered(base);
    Rng rng(mode.seed);
    std::uint64_t p = 1;
    for (std::uint64_t i = 2; i <= layers; ++i) {
        const std::uint32_t universe = out.layers == 1 ? k : out.pair_universe();
        p = *layer_copies(i, p);
        std::vector<std::vector<std::uint32_t>> tuples;
        tuples.reserve(p);
        if (mode.full_space) {
            std::vector<std::uint32_t> tuple(k, 0);
            for (std::uint64_t t = 0; t < p; ++t) {
                tuples.push_back(tuple);
                for (std::uint32_t c = k; c-- > 0;) {
                    if (++tuple[c] < universe)
                        break;
                    tuple[c] = 0;
                }
            }
        } else {
            for (std::uint64_t t = 0; t < p; ++t) {
                std::vector<std::uint32_t> tuple(k);
                for (std::uint32_t c = 0; c < k; ++c)
                    tuple[c] = std::uint32_t(rng.below(universe));
                tuples.push_back(std::move(tuple));
            }
        }
        stack_layer(out, tuples);
    }
    return out;
}

Orientation witness_lift(const Orientation& base_witness, const LayeredInstance& result) {
    EvalResult eval = satisfied_pairs_so(result.base, base_witness);
    if (eval.count != result.base.pairs.size())
        throw Error(ErrorCode::NotFullySatisfying,
                    "base witness satisfies only " + std::to_string(eval.count) + " of " +
                        std::to_string(result.base.pairs.size()) + " pairs");

    const std::size_t base_edges = result.base.edges.size();
    const std::size_t copies = result.copy_base.size();
    assert(result.instance.edges.size() == base_edges * copies);

    // sorted edge order concatenates per-copy blocks because vertex ids are
    // copy_base + original and copy bases increase with the copy index
    Orientation lifted;
    lifted.bits.resize(base_edges * copies);
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t e = 0; e < base_edges; ++e)
            lifted.bits[c * base_edges + e] = base_witness.bits[e];
    return lifted;
}

Rational configuration_bound(const Configuration& config) {
    const std::uint32_t k = std::uint32_t(config.satisfied.size());
    assert(k >= 1);
    Rational sum(0), prod(1);
    for (const auto& set : config.satisfied) {
        for (std::uint32_t idx : set)
            if (idx >= config.pair_universe)
                throw Error(ErrorCode::TupleOutOfRange,
                            "configuration entry outside the pair universe");
        Rational c(std::int64_t(set.size()), std::int64_t(config.pair_universe));
        sum = sum + c;
        prod = prod * c;
    }
    return (sum - prod) / Rational(k);
}

std::string provenance_to_text(const LayeredInstance& result) {
    std::ostringstream out;
    out << "# pair_index layer tuple...\n";
    for (std::size_t i = 0; i < result.provenance.size(); ++i) {
        const auto& prov = result.provenance[i];
        out << i << ' ' << prov.layer;
        for (std::uint32_t r : prov.tuple)
            out << ' ' << r;
        out << '\n';
    }
    return out.str();
}

} // namespace gapamp
