#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gapamp/dmc_reduce.hpp"
#include "gapamp/generators.hpp"
#include "gapamp/oracles.hpp"
#include "test_util.hpp"

using namespace gapamp;
using test::thrown_code;

namespace {

// alive sets per copy after a cut: C_i = pairs of copy i still connected
std::vector<std::vector<std::uint32_t>> alive_sets(const DmcReduction& red,
                                                   const Cutset& cut) {
    std::vector<std::vector<std::uint32_t>> alive(red.copies);
    std::vector<char> removed(red.instance.arcs.size(), 0);
    for (std::uint32_t idx : cut.indices)
        removed[idx] = 1;
    for (std::uint64_t i = 0; i < red.copies; ++i) {
        std::uint32_t offset = std::uint32_t(i * red.base.n);
        for (std::uint32_t r = 0; r < 4; ++r) {
            // pair r alive in copy i iff its lifted pair survives the cut
            MulticutInstance probe = red.instance;
            std::uint32_t s = offset + red.base.pairs[r].first;
            std::uint32_t t = offset + red.base.pairs[r].second;
            probe.pairs = {{s, t}};
            probe.budget = std::uint32_t(cut.indices.size());
            if (separated_pairs_dmc(probe, cut).count == 0)
                alive[i].push_back(r);
        }
    }
    return alive;
}

} // namespace

TEST_CASE("plan_dmc reproduces the composition arithmetic") {
    DmcPlan p = plan_dmc(1, 2);
    CHECK(p.copies == 6);       // 3*(p+1)*log2 q
    CHECK(p.budget == 6);       // p0 = 3p(p+1)*log2 q = p*M
    CHECK(p.pair_count == 3840);  // 480*q^2*(p+1)*log2 q
    CHECK(p.delta == Rational(1, 4));

    DmcPlan with_override = plan_dmc(1, 2, 2);
    CHECK(with_override.copies == 2);
    CHECK(with_override.budget == 2);  // p0 = p*M holds under overrides

    CHECK(thrown_code([] { plan_dmc(1, 1); }) == ErrorCode::QTooSmall);
    CHECK(thrown_code([] { plan_dmc(0, 2); }) == ErrorCode::BudgetExceeded);

    // non-power-of-two gaps round the fractional logarithm up
    DmcPlan odd = plan_dmc(1, 3);
    CHECK(odd.copies == 10);  // ceil(3*2*log2(3)) = ceil(9.51)
    CHECK(odd.budget == 10);  // p0 = p*M keeps the identity
}

TEST_CASE("full-space micro reduction has the documented shape") {
    MulticutInstance base = gen_dmc_no();
    DmcPlan p = plan_dmc(1, 2, 2);
    DmcReduction red = reduce_dmc(base, p, WiringMode::full(), 1 << 20);
    CHECK(red.instance.pairs.size() == 16);              // 4^2 tuples
    CHECK(red.instance.arcs.size() == 2 * 2 + 2 * 2 * 16);  // 68
    CHECK(red.instance.budget == 2);
    CHECK(red.instance.n == 2 * 4 + 2 * 16);
    // terminal vertices come after all copy vertices, two per tuple
    for (std::size_t t = 0; t < red.tuples.size(); ++t) {
        CHECK(red.instance.pairs[t].first == 8 + 2 * t);
        CHECK(red.instance.pairs[t].second == 9 + 2 * t);
    }
}

TEST_CASE("tuple wiring connects the selected terminals") {
    MulticutInstance base = gen_dmc_no();
    DmcReduction red = reduce_dmc(base, plan_dmc(1, 2, 2), WiringMode::full(), 1 << 20);
    // find the tuple (0,3): s_R -> copy0 source of pair 0, copy1 source of pair 3
    for (std::size_t t = 0; t < red.tuples.size(); ++t) {
        if (red.tuples[t] != std::vector<std::uint32_t>{0, 3})
            continue;
        std::uint32_t s_r = red.instance.pairs[t].first;
        std::uint32_t t_r = red.instance.pairs[t].second;
        VertexPair into_copy0{s_r, 0 + base.pairs[0].first};
        VertexPair into_copy1{s_r, 4 + base.pairs[3].first};
        CHECK(std::binary_search(red.instance.arcs.begin(), red.instance.arcs.end(), into_copy0));
        CHECK(std::binary_search(red.instance.arcs.begin(), red.instance.arcs.end(), into_copy1));
        VertexPair out_copy0{0 + base.pairs[0].second, t_r};
        VertexPair out_copy1{4 + base.pairs[3].second, t_r};
        CHECK(std::binary_search(red.instance.arcs.begin(), red.instance.arcs.end(), out_copy0));
        CHECK(std::binary_search(red.instance.arcs.begin(), red.instance.arcs.end(), out_copy1));
        return;
    }
    FAIL("tuple (0,3) missing from the full space");
}

TEST_CASE("bases without exactly four pairs are rejected") {
    MulticutInstance base = gen_dmc_no();
    base.pairs.pop_back();
    CHECK(thrown_code([&] {
              reduce_dmc(base, plan_dmc(1, 2, 2), WiringMode::full(), 1 << 20);
          }) == ErrorCode::NotFourPairs);
}

TEST_CASE("witness lift separates everything with |cut|*M arcs") {
    MulticutInstance base = gen_dmc_yes();
    Cutset all{{0, 1, 2, 3}};
    REQUIRE(separated_pairs_dmc(base, all).count == 4);

    SUBCASE("full space") {
        DmcReduction red = reduce_dmc(base, plan_dmc(4, 2, 2), WiringMode::full(), 1 << 20);
        Cutset lifted = witness_lift_dmc(all, red);
        CHECK(lifted.indices.size() == 4 * 2);
        CHECK(separated_pairs_dmc(red.instance, lifted).count == red.instance.pairs.size());
    }
    SUBCASE("sampled, several seeds") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            DmcReduction red = reduce_dmc(base, plan_dmc(4, 2, 3, 40),
                                          WiringMode::sampled(seed), 1 << 20);
            Cutset lifted = witness_lift_dmc(all, red);
            CHECK(lifted.indices.size() == 4 * 3);
            CHECK(separated_pairs_dmc(red.instance, lifted).count == red.instance.pairs.size());
        }
    }
}

TEST_CASE("cuts that do not fully separate the base are rejected") {
    MulticutInstance base = gen_dmc_yes();
    DmcReduction red = reduce_dmc(base, plan_dmc(4, 2, 2), WiringMode::full(), 1 << 20);
    CHECK(thrown_code([&] { witness_lift_dmc(Cutset{{0, 1, 2}}, red); }) ==
          ErrorCode::NotFullySeparating);
}

TEST_CASE("soundness expectation bound") {
    CHECK(soundness_expectation_bound(0) == Rational(1));
    CHECK(soundness_expectation_bound(1) == Rational(3, 4));
    CHECK(soundness_expectation_bound(3) == Rational(27, 64));
}

TEST_CASE("full-space micro soundness: the exact quarter") {
    MulticutInstance base = gen_dmc_no();  // S(base, 1) = 2 < 4
    DmcReduction red = reduce_dmc(base, plan_dmc(1, 2, 2), WiringMode::full(), 1 << 20);
    DmcOracleResult opt = opt_dmc(red.instance, 100000);
    CHECK(opt.value == 4);
    CHECK(Rational(opt.value, std::int64_t(red.instance.pairs.size())) == Rational(1, 4));
    CHECK(Rational(1, 4) <= soundness_expectation_bound(1));

    // the optimal cut leaves at least ceil(M/(p+1)) = 1 copy with a live pair
    auto alive = alive_sets(red, opt.witness);
    std::uint32_t live_copies = 0;
    for (const auto& set : alive)
        live_copies += !set.empty();
    CHECK(live_copies >= 1);
}

TEST_CASE("a pair is connected iff some copy threads a live terminal") {
    MulticutInstance base = gen_dmc_no();
    DmcReduction red = reduce_dmc(base, plan_dmc(1, 2, 2), WiringMode::full(), 1 << 20);
    Cutset cut{{0, 1}};  // arbitrary budget-2 cut
    auto alive = alive_sets(red, cut);
    EvalResult eval = separated_pairs_dmc(red.instance, cut);
    for (std::size_t t = 0; t < red.tuples.size(); ++t) {
        bool exists_live = false;
        for (std::uint64_t i = 0; i < red.copies; ++i)
            exists_live |= std::find(alive[i].begin(), alive[i].end(), red.tuples[t][i]) !=
                           alive[i].end();
        CHECK(eval.flags[t] == !exists_live);
    }
}

TEST_CASE("reduction respects the size cap") {
    MulticutInstance base = gen_dmc_no();
    CHECK(thrown_code([&] { reduce_dmc(base, plan_dmc(1, 2), WiringMode::sampled(1), 100); }) ==
          ErrorCode::CapExceeded);
}

TEST_CASE("sampled reductions are reproducible and seed-sensitive") {
    MulticutInstance base = gen_dmc_no();
    DmcPlan p = plan_dmc(1, 2, 3, 25);
    DmcReduction a = reduce_dmc(base, p, WiringMode::sampled(4), 1 << 20);
    DmcReduction b = reduce_dmc(base, p, WiringMode::sampled(4), 1 << 20);
    CHECK(a.instance == b.instance);
    DmcReduction c = reduce_dmc(base, p, WiringMode::sampled(5), 1 << 20);
    CHECK(a.instance != c.instance);
}

TEST_CASE("provenance sidecar lists every pair") {
    MulticutInstance base = gen_dmc_no();
    DmcReduction red = reduce_dmc(base, plan_dmc(1, 2, 2), WiringMode::full(), 1 << 20);
    std::string text = dmc_provenance_to_text(red);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // 16 pairs + header
}
