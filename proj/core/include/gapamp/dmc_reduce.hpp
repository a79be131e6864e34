#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapamp/instances.hpp"
#include "gapamp/rational.hpp"
#include "gapamp/so_amplify.hpp"  // WiringMode

namespace gapamp {

/// Parameters of the parallel composition. Defaults:
/// M = ceil(3*(p+1)*log2 q) copies, budget p0 = p*M (equal to
/// 3p(p+1)*log2 q), and k0 = ceil(480*q^2*(p+1)*log2 q) terminal pairs.
/// The 480 comes from the sample count with delta = 1/(2q) and
/// log2|configurations| <= 4M; it is a configuration default, not a pinned
/// constant. Overrides keep the identity p0 = p*M.
struct DmcPlan {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::optional<std::uint64_t> copies;      // M
    double copies_log2 = 0.0;
    std::optional<std::uint64_t> pair_count;  // k0
    double pair_count_log2 = 0.0;
    std::optional<std::uint64_t> budget;      // p0 = p * M
    double budget_log2 = 0.0;
    std::optional<Rational> delta;            // 1/(2q)
};

DmcPlan plan_dmc(std::uint32_t p, std::uint32_t q,
                 std::optional<std::uint64_t> copies_override = {},
                 std::optional<std::uint64_t> pair_count_override = {});

/// Result of the composition, with the wiring tuple behind every pair.
struct DmcReduction {
    MulticutInstance base;
    MulticutInstance instance;
    std::uint64_t copies = 0;                        // M
    std::vector<std::vector<std::uint32_t>> tuples;  // one per pair, values in [0,4)
};

/// M disjoint copies of a 4-pair base; per tuple R a fresh pair (s_R, t_R)
/// wired through terminal r_i of every copy i; budget p0. Full space uses
/// all 4^M tuples, sampled mode draws plan.pair_count of them.
DmcReduction reduce_dmc(const MulticutInstance& base, const DmcPlan& plan, WiringMode mode,
                        std::uint64_t size_cap);

/// Union of a fully separating base cut applied in every copy; separates
/// all pairs with exactly |base_cut| * M arcs.
Cutset witness_lift_dmc(const Cutset& base_cut, const DmcReduction& result);

/// (3/4)^alive_copies: the chance a uniform tuple threads only dead pairs.
Rational soundness_expectation_bound(std::uint32_t alive_copies);

/// Sidecar text mapping pair index to its wiring tuple.
std::string dmc_provenance_to_text(const DmcReduction& result);

} // namespace gapamp
