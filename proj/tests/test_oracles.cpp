#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <variant>

#include "gapamp/generators.hpp"
#include "gapamp/oracles.hpp"
#include "gapamp/rng.hpp"
#include "test_util.hpp"

using namespace gapamp;
using test::thrown_code;

namespace {

// ---- independent reference implementations ----------------------------
// deliberately different code paths from the library: adjacency matrices,
// recursive enumeration, no shared evaluators

bool matrix_reachable(const std::vector<std::vector<char>>& adj, std::uint32_t s,
                      std::uint32_t t) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::uint32_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        if (u == t)
            return true;
        for (std::uint32_t w = 0; w < adj.size(); ++w)
            if (adj[u][w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return s == t;
}

std::uint32_t count_satisfied(const MixedInstance& inst,
                              const std::vector<std::vector<char>>& adj) {
    std::uint32_t count = 0;
    for (const auto& [s, t] : inst.pairs)
        count += matrix_reachable(adj, s, t);
    return count;
}

std::uint32_t recursive_opt_so(const MixedInstance& inst, std::size_t edge,
                               std::vector<std::vector<char>>& adj) {
    if (edge == inst.edges.size())
        return count_satisfied(inst, adj);
    auto [u, v] = inst.edges[edge];
    adj[u][v] = 1;
    std::uint32_t forward = recursive_opt_so(inst, edge + 1, adj);
    adj[u][v] = 0;
    adj[v][u] = 1;
    std::uint32_t backward = recursive_opt_so(inst, edge + 1, adj);
    adj[v][u] = 0;
    return std::max(forward, backward);
}

std::uint32_t recursive_opt_so(const MixedInstance& inst) {
    std::vector<std::vector<char>> adj(inst.n, std::vector<char>(inst.n, 0));
    for (const auto& [u, v] : inst.arcs)
        adj[u][v] = 1;
    return recursive_opt_so(inst, 0, adj);
}

std::uint32_t subset_opt_dmc(const MulticutInstance& inst) {
    REQUIRE(inst.arcs.size() <= 20);
    std::uint32_t best = 0;
    for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << inst.arcs.size()); ++subset) {
        if (std::uint32_t(__builtin_popcountll(subset)) > inst.budget)
            continue;
        std::vector<std::vector<char>> adj(inst.n, std::vector<char>(inst.n, 0));
        for (std::size_t i = 0; i < inst.arcs.size(); ++i)
            if (!((subset >> i) & 1))
                adj[inst.arcs[i].first][inst.arcs[i].second] = 1;
        std::uint32_t separated = 0;
        for (const auto& [s, t] : inst.pairs)
            separated += !matrix_reachable(adj, s, t);
        best = std::max(best, separated);
    }
    return best;
}

bool subset_has_clique(const PartGraph& g, std::uint32_t target) {
    REQUIRE(g.n <= 20);
    for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << g.n); ++subset) {
        if (std::uint32_t(__builtin_popcountll(subset)) != target)
            continue;
        std::vector<std::uint32_t> verts;
        for (std::uint32_t v = 0; v < g.n; ++v)
            if ((subset >> v) & 1)
                verts.push_back(v);
        bool clique = true;
        for (std::size_t a = 0; a < verts.size() && clique; ++a)
            for (std::size_t b = a + 1; b < verts.size() && clique; ++b)
                clique = g.adjacent(verts[a], verts[b]);
        if (clique)
            return true;
    }
    return target == 0;
}

MixedInstance random_so(std::uint64_t seed, std::uint32_t edges) {
    return gen_random_mixed({.n = 6, .k = 3, .edges = edges, .arcs = 5,
                             .planted = seed % 2 == 0, .seed = seed});
}

PartGraph random_graph(std::uint64_t seed, std::uint32_t n, double density) {
    Rng rng(seed);
    PartGraph g;
    g.init(n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            if (rng.below(100) < std::uint64_t(density * 100))
                g.add_edge(a, b);
    return g;
}

} // namespace

TEST_CASE("opt_so on the documented micro cases") {
    CHECK(opt_so(gen_no_edge()).value == 1);

    // fully directed instance: no search, value of the empty orientation
    MixedInstance directed =
        std::get<MixedInstance>(parse_instance("so 3\narc 0 1\narc 1 2\npair 0 2\npair 2 1\n"));
    SoOracleResult r = opt_so(directed);
    CHECK(r.value == 1);
    CHECK(r.witness.bits.empty());
}

TEST_CASE("opt_so matches an independently coded recursive search") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        MixedInstance inst = random_so(seed, 3);
        CHECK(opt_so(inst).value == recursive_opt_so(inst));
    }
}

TEST_CASE("opt_so witness re-evaluates to the reported value") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        MixedInstance inst = random_so(seed, 5);
        SoOracleResult r = opt_so(inst);
        CHECK(satisfied_pairs_so(inst, r.witness).count == r.value);
    }
}

TEST_CASE("opt_so is monotone under pre-orienting an edge") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        MixedInstance inst = random_so(seed, 4);
        std::uint32_t base = opt_so(inst).value;
        for (std::size_t e = 0; e < inst.edges.size(); ++e)
            for (int dir = 0; dir < 2; ++dir) {
                MixedInstance fixed = inst;
                auto [u, v] = fixed.edges[e];
                fixed.edges.erase(fixed.edges.begin() + std::ptrdiff_t(e));
                if (dir == 0)
                    fixed.arcs.push_back({u, v});
                else
                    fixed.arcs.push_back({v, u});
                canonicalize(fixed);
                CHECK(opt_so(fixed).value <= base);
            }
    }
}

TEST_CASE("opt_so is independent of the thread count") {
    MixedInstance inst = random_so(7, 6);
    SoOracleResult one = opt_so(inst, kOrientationCap, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        SoOracleResult many = opt_so(inst, kOrientationCap, threads);
        CHECK(many.value == one.value);
        CHECK(many.witness == one.witness);
    }
}

TEST_CASE("opt_so refuses oversized searches") {
    MixedInstance inst = gen_yes_chain(4, 3, 3);  // 12 undirected edges
    CHECK(thrown_code([&] { opt_so(inst, 1 << 10); }) == ErrorCode::TooLarge);
}

TEST_CASE("opt_dmc on the documented micro cases") {
    CHECK(opt_dmc(gen_dmc_no()).value == 2);
    CHECK(opt_dmc(gen_dmc_yes()).value == 4);
}

TEST_CASE("opt_dmc matches subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Rng rng(seed);
        MulticutInstance inst;
        inst.n = 5;
        while (inst.arcs.size() < 6) {
            std::uint32_t u = std::uint32_t(rng.below(inst.n));
            std::uint32_t v = std::uint32_t(rng.below(inst.n));
            if (u == v ||
                std::find(inst.arcs.begin(), inst.arcs.end(), VertexPair{u, v}) != inst.arcs.end())
                continue;
            inst.arcs.push_back({u, v});
        }
        for (int i = 0; i < 4; ++i)
            inst.pairs.push_back({std::uint32_t(rng.below(inst.n)),
                                  std::uint32_t(rng.below(inst.n))});
        inst.budget = 2;
        canonicalize(inst);

        DmcOracleResult r = opt_dmc(inst);
        CHECK(r.value == subset_opt_dmc(inst));
        CHECK(separated_pairs_dmc(inst, r.witness).count == r.value);
    }
}

TEST_CASE("opt_dmc refuses oversized searches") {
    MulticutInstance inst = gen_dmc_yes();
    inst.budget = 2;  // C(4, 2) = 6 candidate cutsets
    CHECK(thrown_code([&] { opt_dmc(inst, 5); }) == ErrorCode::TooLarge);
}

TEST_CASE("opt_dmc with a zero budget scores the empty cut") {
    // one pair is born separated: its sink is unreachable
    MulticutInstance inst =
        std::get<MulticutInstance>(parse_instance("dmc 3 0\narc 0 1\npair 0 1\npair 0 2\n"));
    DmcOracleResult r = opt_dmc(inst);
    CHECK(r.value == 1);
    CHECK(r.witness.indices.empty());
}

TEST_CASE("clique search on labeled toys") {
    PartGraph triangle;
    triangle.init(3, 0);
    triangle.add_edge(0, 1);
    triangle.add_edge(1, 2);
    triangle.add_edge(0, 2);
    auto w = max_clique_at_least(triangle, 3);
    REQUIRE(w.has_value());
    CHECK(w->size() == 3);

    PartGraph bipartite;  // K_{2,2} has no triangle
    bipartite.init(4, 0);
    bipartite.add_edge(0, 2);
    bipartite.add_edge(0, 3);
    bipartite.add_edge(1, 2);
    bipartite.add_edge(1, 3);
    CHECK_FALSE(max_clique_at_least(bipartite, 3).has_value());
}

TEST_CASE("clique search agrees with subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        PartGraph g = random_graph(seed, 10, 0.5);
        for (std::uint32_t target = 2; target <= 5; ++target) {
            auto witness = max_clique_at_least(g, target);
            CHECK(witness.has_value() == subset_has_clique(g, target));
            if (witness) {
                CHECK(witness->size() == target);
                for (std::size_t a = 0; a < witness->size(); ++a)
                    for (std::size_t b = a + 1; b < witness->size(); ++b)
                        CHECK(g.adjacent((*witness)[a], (*witness)[b]));
            }
        }
    }
}

TEST_CASE("multipartite search picks one vertex per part") {
    // parts {0,1}, {2,3}, {4}; chain-like adjacency
    PartGraph g;
    g.init(5, 3);
    g.set_part(0, 0);
    g.set_part(1, 0);
    g.set_part(2, 1);
    g.set_part(3, 1);
    g.set_part(4, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 4);
    g.add_edge(1, 4);
    auto w = max_clique_at_least(g, 3);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<std::uint32_t>{1, 2, 4});

    // drop one side of the triangle: no transversal clique remains
    PartGraph g2;
    g2.init(5, 3);
    g2.set_part(0, 0);
    g2.set_part(1, 0);
    g2.set_part(2, 1);
    g2.set_part(3, 1);
    g2.set_part(4, 2);
    g2.add_edge(1, 2);
    g2.add_edge(2, 4);
    CHECK_FALSE(max_clique_at_least(g2, 3).has_value());
}
