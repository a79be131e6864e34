#include "gapamp/dmc_reduce.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
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

// ceil(x * log2(q)): exact for powers of two, conservative otherwise
std::optional<std::uint64_t> ceil_mul_log2(std::uint64_t x, std::uint32_t q) {
    if ((q & (q - 1)) == 0) {
        std::uint32_t e = 0;
        while ((std::uint64_t(1) << e) < q)
            ++e;
        return checked_mul(x, e);
    }
    double value = std::ceil(double(x) * std::log2(double(q)) - 1e-9);
    if (value >= double(std::numeric_limits<std::uint64_t>::max()))
        return std::nullopt;
    return std::uint64_t(value);
}

} // namespace

DmcPlan plan_dmc(std::uint32_t p, std::uint32_t q,
                 std::optional<std::uint64_t> copies_override,
                 std::optional<std::uint64_t> pair_count_override) {
    if (p < 1)
        throw Error(ErrorCode::BudgetExceeded, "budget p must be at least 1");
    if (q < 2)
        throw Error(ErrorCode::QTooSmall, "gap q must be at least 2");

    DmcPlan out;
    out.p = p;
    out.q = q;
    out.delta = Rational(1, 2 * std::int64_t(q));
    const double log2q = std::log2(double(q));

    // M = 3*(p+1)*log2 q
    out.copies_log2 = std::log2(3.0 * (double(p) + 1.0)) + std::log2(log2q);
    out.copies = ceil_mul_log2(3 * (std::uint64_t(p) + 1), q);
    if (copies_override)
        out.copies = *copies_override;
    if (out.copies)
        out.copies_log2 = std::log2(double(*out.copies));

    // k0 = 480*q^2*(p+1)*log2 q  (sample count, delta = 1/(2q), log2|F| = 4M)
    out.pair_count_log2 =
        std::log2(480.0) + 2.0 * log2q + std::log2(double(p) + 1.0) + std::log2(log2q);
    if (auto q2 = checked_mul(q, q)) {
        if (auto base = checked_mul(480, *q2)) {
            if (auto scaled = checked_mul(*base, std::uint64_t(p) + 1))
                out.pair_count = ceil_mul_log2(*scaled, q);
        }
    }
    if (pair_count_override)
        out.pair_count = *pair_count_override;
    if (out.pair_count)
        out.pair_count_log2 = std::log2(double(*out.pair_count));

    // p0 = p * M
    if (out.copies)
        out.budget = checked_mul(p, *out.copies);
    out.budget_log2 = std::log2(double(p)) + out.copies_log2;
    if (out.budget)
        out.budget_log2 = std::log2(double(*out.budget));
    return out;
}

DmcReduction reduce_dmc(const MulticutInstance& base, const DmcPlan& plan, WiringMode mode,
                        std::uint64_t size_cap) {
    if (base.pairs.size() != 4)
        throw Error(ErrorCode::NotFourPairs,
                    "composition needs exactly 4 terminal pairs, got " +
                        std::to_string(base.pairs.size()));
    if (!plan.copies || !plan.budget)
        throw Error(ErrorCode::CapExceeded, "plan exists only symbolically");
    const std::uint64_t m = *plan.copies;
    if (m < 1)
        throw Error(ErrorCode::CapExceeded, "plan needs at least one copy");

    std::uint64_t pair_count;
    if (mode.full_space) {
        if (m >= 32)
            throw Error(ErrorCode::CapExceeded, "full tuple space 4^M too large");
        pair_count = std::uint64_t(1) << (2 * m);
    } else {
        if (!plan.pair_count)
            throw Error(ErrorCode::CapExceeded, "pair count exists only symbolically");
        pair_count = *plan.pair_count;
    }

    // projected size
    auto verts = checked_mul(m, base.n);
    auto term_arcs = checked_mul(2 * m, pair_count);
    auto copy_arcs = checked_mul(m, base.arcs.size());
    if (!verts || !term_arcs || !copy_arcs)
        throw Error(ErrorCode::CapExceeded, "projected size overflows");
    std::uint64_t total_verts = *verts + 2 * pair_count;
    std::uint64_t total_arcs = *copy_arcs + *term_arcs;
    if (total_verts > size_cap || total_arcs > size_cap || total_verts > UINT32_MAX)
        throw Error(ErrorCode::CapExceeded,
                    "projected size exceeds the cap of " + std::to_string(size_cap));

    DmcReduction out;
    out.base = base;
    out.copies = m;
    out.instance.n = std::uint32_t(total_verts);
    out.instance.budget = std::uint32_t(*plan.budget);
    out.instance.arcs.reserve(total_arcs);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint32_t offset = std::uint32_t(i * base.n);
        for (const auto& [u, v] : base.arcs)
            out.instance.arcs.push_back({u + offset, v + offset});
    }

    // tuples in [0,4)^M: lexicographic for full space, seeded otherwise
    out.tuples.reserve(pair_count);
    if (mode.full_space) {
        std::vector<std::uint32_t> tuple(m, 0);
        for (std::uint64_t t = 0; t < pair_count; ++t) {
            out.tuples.push_back(tuple);
            for (std::uint64_t c = m; c-- > 0;) {
                if (++tuple[c] < 4)
                    break;
                tuple[c] = 0;
            }
        }
    } else {
        Rng rng(mode.seed);
        for (std::uint64_t t = 0; t < pair_count; ++t) {
            std::vector<std::uint32_t> tuple(m);
            for (std::uint64_t c = 0; c < m; ++c)
                tuple[c] = std::uint32_t(rng.below(4));
            out.tuples.push_back(std::move(tuple));
        }
    }

    // fresh s_R, t_R after all copy vertices, two per tuple, in tuple order
    const std::uint32_t first_terminal = std::uint32_t(m * base.n);
    for (std::uint64_t t = 0; t < pair_count; ++t) {
        std::uint32_t s_r = first_terminal + std::uint32_t(2 * t);
        std::uint32_t t_r = s_r + 1;
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uint32_t offset = std::uint32_t(i * base.n);
            std::uint32_t r = out.tuples[t][i];
            out.instance.arcs.push_back({s_r, offset + base.pairs[r].first});
            out.instance.arcs.push_back({offset + base.pairs[r].second, t_r});
        }
        out.instance.pairs.push_back({s_r, t_r});
    }
    canonicalize(out.instance);
    return out;
}

Cutset witness_lift_dmc(const Cutset& base_cut, const DmcReduction& result) {
    if (base_cut.indices.size() > result.base.budget)
        throw Error(ErrorCode::BudgetExceeded, "base cut exceeds the base budget");
    EvalResult eval = separated_pairs_dmc(result.base, base_cut);
    if (eval.count != result.base.pairs.size())
        throw Error(ErrorCode::NotFullySeparating,
                    "base cut separates only " + std::to_string(eval.count) + " of " +
                        std::to_string(result.base.pairs.size()) + " pairs");

    Cutset lifted;
    const auto& arcs = result.instance.arcs;
    for (std::uint64_t i = 0; i < result.copies; ++i) {
        std::uint32_t offset = std::uint32_t(i * result.base.n);
        for (std::uint32_t idx : base_cut.indices) {
            VertexPair key{result.base.arcs[idx].first + offset,
                           result.base.arcs[idx].second + offset};
            auto it = std::lower_bound(arcs.begin(), arcs.end(), key);
            assert(it != arcs.end() && *it == key);
            lifted.indices.push_back(std::uint32_t(it - arcs.begin()));
        }
    }
    std::sort(lifted.indices.begin(), lifted.indices.end());
    assert(lifted.indices.size() == base_cut.indices.size() * result.copies);
    return lifted;
}

Rational soundness_expectation_bound(std::uint32_t alive_copies) {
    return rational_pow(Rational(3, 4), alive_copies);
}

std::string dmc_provenance_to_text(const DmcReduction& result) {
    std::ostringstream out;
    out << "# pair_index tuple...\n";
    for (std::size_t i = 0; i < result.tuples.size(); ++i) {
        out << i;
        for (std::uint32_t r : result.tuples[i])
            out << ' ' << r;
        out << '\n';
    }
    return out.str();
}

} // namespace gapamp
