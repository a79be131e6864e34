#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gapamp/generators.hpp"
#include "gapamp/oracles.hpp"
#include "gapamp/so_amplify.hpp"
#include "test_util.hpp"

using namespace gapamp;
using test::thrown_code;

namespace {

LayerPlan desk_plan(std::uint32_t k, std::uint64_t layers, std::uint64_t multiplier) {
    return plan(k, 2, layers, multiplier);
}

} // namespace

TEST_CASE("plan reproduces the construction arithmetic") {
    LayerPlan p = plan(2, 2);
    REQUIRE(p.layers.has_value());
    CHECK(*p.layers == 16);  // 2*k*q^k
    REQUIRE(p.multiplier.has_value());
    CHECK(*p.multiplier == 10240);  // 40*k^4*q^{2k}
    REQUIRE(p.delta.has_value());
    CHECK(*p.delta == Rational(1, 16));  // 1/(2k*q^k)
    REQUIRE(p.copies.size() >= 2);
    CHECK(p.copies[0] == 1);      // p_1 = 1
    CHECK(p.copies[1] == 10240);  // p_2
    CHECK(p.copy_count(2) == 10240);

    CHECK(thrown_code([] { plan(2, 1); }) == ErrorCode::QTooSmall);
}

TEST_CASE("oversized plans go symbolic instead of overflowing") {
    LayerPlan p = plan(6, 8);
    CHECK_FALSE(p.pair_count.has_value());
    CHECK(p.pair_count_log2 > 64.0);
    CHECK(p.layers_log2 == doctest::Approx(1.0 + std::log2(6.0) + 6.0 * 3.0));
}

TEST_CASE("first stacking promotes the base and wires by tuple coordinates") {
    MixedInstance base = gen_no_edge();  // pairs (0,1),(1,0)
    LayeredInstance li = initial_layered(base);
    CHECK(li.layers == 1);
    CHECK(li.instance == base);

    // the documented wiring example, zero-based: tuple (0,1) draws sink of
    // pair 0 in layer-1 copy 0 and sink of pair 1 in layer-1 copy 1
    stack_layer(li, {{0, 1}});
    CHECK(li.layers == 2);
    CHECK(li.copy_base == std::vector<std::uint32_t>{0, 2, 4});
    CHECK(li.copy_layer == std::vector<std::uint32_t>{1, 1, 2});
    // copy 0 sink of pair 0 = vertex 1 -> fresh copy source of pair 0 = 4
    CHECK(arc_exists(li.instance, 1, 4));
    // copy 1 sink of pair 1 = vertex 2+0 -> fresh copy source of pair 1 = 5
    CHECK(arc_exists(li.instance, 2, 5));
    CHECK(li.instance.arcs.size() == 2);
    // new pairs: (copy0 source of pair 0, fresh sink of pair 0), ...
    CHECK(li.instance.pairs ==
          std::vector<VertexPair>{{0, 5}, {3, 4}});
    CHECK(li.provenance.size() == 2);
    CHECK(li.provenance[0].tuple == std::vector<std::uint32_t>{0, 1});
    CHECK(li.provenance[0].layer == 2);
}

TEST_CASE("tuples outside the pair universe are rejected") {
    MixedInstance base = gen_no_edge();
    LayeredInstance li = initial_layered(base);
    CHECK(thrown_code([&] { stack_layer(li, {{0, 2}}); }) == ErrorCode::TupleOutOfRange);
    CHECK(thrown_code([&] { stack_layer(li, {{0, 1, 0}}); }) == ErrorCode::TupleOutOfRange);
}

TEST_CASE("full space on the no-edge base: 4 copies and 8 pairs") {
    MixedInstance base = gen_no_edge();
    LayerPlan p = desk_plan(2, 2, 1);
    LayeredInstance h2 = amplify(base, p, WiringMode::full(), 1 << 20);
    CHECK(h2.copy_base.size() == 6);         // 2 promoted + 2^2 fresh
    CHECK(h2.instance.pairs.size() == 8);    // k_2 = k * p_2 = 2 * 4
    CHECK(h2.instance.edges.size() == 6);    // one per copy

    // exact micro soundness: opt/k2 = 3/8, matching the configuration bound
    SoOracleResult opt = opt_so(h2.instance);
    CHECK(opt.value == 3);
    CHECK(Rational(opt.value, 8) == Rational(3, 8));
    Configuration half{2, {{0}, {0}}};  // c = (1/2, 1/2)
    CHECK(configuration_bound(half) == Rational(3, 8));
}

TEST_CASE("configuration bound endpoints") {
    Configuration full{3, {{0, 1, 2}, {0, 1, 2}}};  // c_j = 1
    CHECK(configuration_bound(full) == Rational(1, 2));  // (k-1)/k for k=2
    Configuration empty{3, {{}, {}}};
    CHECK(configuration_bound(empty) == Rational(0));
    Configuration bad{2, {{5}, {}}};
    CHECK(thrown_code([&] { configuration_bound(bad); }) == ErrorCode::TupleOutOfRange);
}

TEST_CASE("two layers with multiplier three give six pairs on a yes chain") {
    MixedInstance base = gen_yes_chain(2);
    LayeredInstance h = amplify(base, desk_plan(2, 2, 3), WiringMode::sampled(1), 1 << 20);
    CHECK(h.instance.pairs.size() == 6);  // k0 = k * p_2
    Orientation lifted = witness_lift(yes_chain_witness(base), h);
    CHECK(satisfied_pairs_so(h.instance, lifted).count == 6);
}

TEST_CASE("witness lift satisfies everything, for every seed and plan") {
    for (std::uint32_t k : {2u, 3u}) {
        MixedInstance base = gen_yes_chain(k);
        Orientation witness = yes_chain_witness(base);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            LayeredInstance h = amplify(base, desk_plan(k, 3, 2),
                                        WiringMode::sampled(seed), 1 << 20);
            Orientation lifted = witness_lift(witness, h);
            CHECK(lifted.bits.size() == h.copy_base.size() * base.edges.size());
            EvalResult eval = satisfied_pairs_so(h.instance, lifted);
            CHECK(eval.count == h.instance.pairs.size());
        }
    }
}

TEST_CASE("witnesses that do not fully satisfy are rejected") {
    MixedInstance base = gen_no_edge();  // opt 1 < k
    LayeredInstance h = amplify(base, desk_plan(2, 2, 2), WiringMode::sampled(1), 1 << 20);
    CHECK(thrown_code([&] { witness_lift(Orientation{{0}}, h); }) ==
          ErrorCode::NotFullySatisfying);
}

TEST_CASE("amplification respects the size cap") {
    MixedInstance base = gen_no_edge();
    CHECK(thrown_code([&] { amplify(base, desk_plan(2, 4, 100), WiringMode::sampled(1), 100); }) ==
          ErrorCode::CapExceeded);
}

TEST_CASE("pair sources sit in layer 1, sinks in the top layer") {
    MixedInstance base = gen_yes_chain(2);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        LayeredInstance h = amplify(base, desk_plan(2, 3, 3), WiringMode::sampled(seed), 1 << 20);
        for (std::size_t i = 0; i < h.instance.pairs.size(); ++i) {
            const auto& [s, t] = h.instance.pairs[i];
            CHECK(h.layer_of_vertex(s) == 1);
            CHECK(h.layer_of_vertex(t) == h.layers);
            const auto& prov = h.provenance[i];
            CHECK(prov.layer == h.layers);
            CHECK(prov.tuple.size() == 2);
        }
    }
}

TEST_CASE("connecting arcs only run between consecutive layers") {
    MixedInstance base = gen_no_edge();
    LayeredInstance h = amplify(base, desk_plan(2, 3, 2), WiringMode::sampled(9), 1 << 20);
    std::size_t base_arcs = base.arcs.size() * h.copy_base.size();
    std::size_t connecting = 0;
    for (const auto& [u, v] : h.instance.arcs) {
        std::uint32_t lu = h.layer_of_vertex(u);
        std::uint32_t lv = h.layer_of_vertex(v);
        if (lu != lv) {
            CHECK(lv == lu + 1);
            ++connecting;
        }
    }
    CHECK(connecting == h.instance.arcs.size() - base_arcs);
}

TEST_CASE("layer ratios never increase along sampled stackings") {
    MixedInstance base = gen_no_edge();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Rational previous(1);
        for (std::uint64_t layers = 1; layers <= 3; ++layers) {
            LayeredInstance h = amplify(base, desk_plan(2, layers, 2),
                                        WiringMode::sampled(seed), 1 << 20);
            SoOracleResult opt = opt_so(h.instance);
            Rational ratio(opt.value, std::int64_t(h.instance.pairs.size()));
            CHECK(ratio <= previous);
            previous = ratio;
        }
    }
}

TEST_CASE("same seed, same instance; shorter runs are prefixes") {
    MixedInstance base = gen_no_edge();
    LayeredInstance a = amplify(base, desk_plan(2, 3, 2), WiringMode::sampled(3), 1 << 20);
    LayeredInstance b = amplify(base, desk_plan(2, 3, 2), WiringMode::sampled(3), 1 << 20);
    CHECK(a.instance == b.instance);

    // the two-layer run is structurally the first two layers of the
    // three-layer run: same copies and same connecting arcs
    LayeredInstance shorter = amplify(base, desk_plan(2, 2, 2), WiringMode::sampled(3), 1 << 20);
    REQUIRE(shorter.copy_base.size() <= a.copy_base.size());
    for (std::size_t c = 0; c < shorter.copy_base.size(); ++c) {
        CHECK(shorter.copy_base[c] == a.copy_base[c]);
        CHECK(shorter.copy_layer[c] == a.copy_layer[c]);
    }
    for (const auto& arc : shorter.instance.arcs)
        CHECK(std::binary_search(a.instance.arcs.begin(), a.instance.arcs.end(), arc));
}

TEST_CASE("provenance sidecar lists every pair") {
    MixedInstance base = gen_no_edge();
    LayeredInstance h = amplify(base, desk_plan(2, 2, 2), WiringMode::sampled(5), 1 << 20);
    std::string text = provenance_to_text(h);
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == h.instance.pairs.size() + 1);  // header comment
}
