#include "gapamp/generators.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "gapamp/rng.hpp"

namespace gapamp {

MixedInstance gen_no_edge() {
    MixedInstance inst;
    inst.n = 2;
    inst.edges = {{0, 1}};
    inst.pairs = {{0, 1}, {1, 0}};
    canonicalize(inst);
    return inst;
}

MixedInstance gen_yes_chain(std::uint32_t k, std::uint32_t links, std::uint32_t undirected) {
    assert(k >= 1 && links >= 1);
    undirected = std::min(undirected, links);
    MixedInstance inst;
    inst.n = k * (links + 1);
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint32_t base = i * (links + 1);
        for (std::uint32_t j = 0; j < links; ++j) {
            if (j < undirected)
                inst.edges.push_back({base + j, base + j + 1});
            else
                inst.arcs.push_back({base + j, base + j + 1});
        }
        inst.pairs.push_back({base, base + links});
    }
    canonicalize(inst);
    return inst;
}

Orientation yes_chain_witness(const MixedInstance& inst) {
    // chain edges are stored (lower, higher) pointing toward the sink
    return Orientation{std::vector<std::uint8_t>(inst.edges.size(), 0)};
}

MulticutInstance gen_dmc_no() {
    MulticutInstance inst;
    inst.n = 4;
    inst.arcs = {{0, 1}, {2, 3}};
    inst.pairs = {{0, 1}, {0, 1}, {2, 3}, {2, 3}};
    inst.budget = 1;
    canonicalize(inst);
    return inst;
}

MulticutInstance gen_dmc_yes() {
    MulticutInstance inst;
    inst.n = 8;
    inst.arcs = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    inst.pairs = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    inst.budget = 4;
    canonicalize(inst);
    return inst;
}

namespace {

struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        parent[b] = a;  // roots stay the smallest member
    }
};

} // namespace

MixedInstance gen_random_mixed(const RandomMixedOptions& options) {
    assert(options.n >= 2 && options.k >= 1);
    Rng rng(options.seed);
    MixedInstance inst;
    inst.n = options.n;

    // undirected forest: an edge is kept only if it joins two components
    Dsu comp(options.n);
    for (std::uint32_t attempt = 0; attempt < options.edges; ++attempt) {
        std::uint32_t u = std::uint32_t(rng.below(options.n));
        std::uint32_t v = std::uint32_t(rng.below(options.n));
        if (u == v || comp.find(u) == comp.find(v))
            continue;
        comp.unite(u, v);
        inst.edges.push_back({std::min(u, v), std::max(u, v)});
    }

    // arcs only from a lower-rooted component to a higher-rooted one, so
    // the component condensation stays acyclic under every orientation
    std::sort(inst.edges.begin(), inst.edges.end());
    for (std::uint32_t attempt = 0; attempt < options.arcs; ++attempt) {
        std::uint32_t u = std::uint32_t(rng.below(options.n));
        std::uint32_t v = std::uint32_t(rng.below(options.n));
        if (u == v || comp.find(u) == comp.find(v))
            continue;
        if (comp.find(u) > comp.find(v))
            std::swap(u, v);
        VertexPair arc{u, v};
        if (std::find(inst.arcs.begin(), inst.arcs.end(), arc) != inst.arcs.end())
            continue;
        inst.arcs.push_back(arc);
    }

    if (options.planted) {
        auto adj = relaxation_adjacency(inst);
        for (std::uint32_t i = 0; i < options.k; ++i) {
            std::uint32_t s = std::uint32_t(rng.below(options.n));
            std::uint32_t t = s;
            for (std::uint32_t step = 0; step < options.n; ++step) {
                if (adj[t].empty())
                    break;
                t = adj[t][rng.below(adj[t].size())];
            }
            inst.pairs.push_back({s, t});
        }
    } else {
        for (std::uint32_t i = 0; i < options.k; ++i) {
            std::uint32_t s = std::uint32_t(rng.below(options.n));
            std::uint32_t t = std::uint32_t(rng.below(options.n));
            inst.pairs.push_back({s, t});
        }
    }
    canonicalize(inst);
    assert(is_acyclic(inst));
    return inst;
}

} // namespace gapamp
