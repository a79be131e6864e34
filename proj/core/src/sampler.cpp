#include "gapamp/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <memory>

#include "gapamp/error.hpp"
#include "gapamp/rng.hpp"

namespace gapamp {

std::optional<std::uint64_t> TupleDomain::total_size() const {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < length; ++i) {
        if (radix != 0 && total > std::numeric_limits<std::uint64_t>::max() / radix)
            return std::nullopt;
        total *= radix;
    }
    return total;
}

std::uint64_t required_sample_count(const Rational& delta,
                                    const Rational& family_size_log2,
                                    std::uint32_t multiplier) {
    if (!delta.is_positive())
        throw Error(ErrorCode::ZeroDelta, "delta must be positive");
    if (family_size_log2.num < 0)
        throw Error(ErrorCode::NumericOverflow, "negative family size log");

    // ceil(mult * log2F * den^2 / num^2) in 128-bit arithmetic
    using u128 = unsigned __int128;
    u128 numerator = u128(multiplier) * u128(family_size_log2.num) * u128(delta.den) *
                     u128(delta.den);
    u128 denominator = u128(family_size_log2.den) * u128(delta.num) * u128(delta.num);
    u128 m = (numerator + denominator - 1) / denominator;
    if (m > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::NumericOverflow, "sample count exceeds uint64");
    return std::max<std::uint64_t>(1, std::uint64_t(m));
}

SamplerFamily sample_tuples(const TupleDomain& domain, std::uint64_t m, std::uint64_t seed) {
    assert(m >= 1);
    SamplerFamily family;
    family.domain = domain;
    family.seed = seed;
    family.tuples.reserve(m);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::vector<std::uint32_t> tuple(domain.length);
        for (std::uint32_t c = 0; c < domain.length; ++c)
            tuple[c] = std::uint32_t(rng.below(domain.radix));
        family.tuples.push_back(std::move(tuple));
    }
    return family;
}

std::uint64_t tuple_rank(const TupleDomain& domain, std::span<const std::uint32_t> tuple) {
    assert(tuple.size() == domain.length);
    std::uint64_t rank = 0;
    for (std::uint32_t c = 0; c < domain.length; ++c)
        rank = rank * domain.radix + tuple[c];
    return rank;
}

namespace {

// lexicographic odometer over the domain; calls fn for every tuple
template <class Fn>
void for_each_tuple(const TupleDomain& domain, Fn&& fn) {
    std::vector<std::uint32_t> tuple(domain.length, 0);
    for (;;) {
        fn(std::span<const std::uint32_t>(tuple));
        std::uint32_t c = domain.length;
        while (c > 0) {
            if (++tuple[c - 1] < domain.radix)
                break;
            tuple[c - 1] = 0;
            --c;
        }
        if (c == 0)
            break;
    }
}

} // namespace

VerifyResult verify_sampler(const SamplerFamily& family, const FunctionFamily& functions,
                            const Rational& delta, std::uint64_t domain_cap) {
    if (!delta.is_positive())
        throw Error(ErrorCode::ZeroDelta, "delta must be positive");
    auto total = family.domain.total_size();
    if (!total || *total > domain_cap)
        throw Error(ErrorCode::DomainTooLarge,
                    "exact domain mean needs a materializable domain");

    // multiset histogram over tuple ranks: each function is then evaluated
    // once per domain element instead of once per family member
    std::vector<std::uint64_t> counts(*total, 0);
    for (const auto& tuple : family.tuples)
        counts[tuple_rank(family.domain, tuple)]++;

    VerifyResult result{true, 0.0};
    const double threshold = delta.to_double();
    for (std::uint64_t f = 0; f < functions.size; ++f) {
        double domain_sum = 0.0;
        double family_sum = 0.0;
        std::uint64_t rank = 0;
        for_each_tuple(family.domain, [&](std::span<const std::uint32_t> tuple) {
            double value = functions.eval(f, tuple);
            domain_sum += value;
            if (counts[rank])
                family_sum += double(counts[rank]) * value;
            ++rank;
        });
        double deviation = std::fabs(family_sum / double(family.tuples.size()) -
                                     domain_sum / double(*total));
        result.max_deviation = std::max(result.max_deviation, deviation);
        if (deviation > threshold)
            result.ok = false;
    }
    return result;
}

SamplerFamily derandomize_family(const TupleDomain& domain, const FunctionFamily& functions,
                                 const Rational& delta, std::uint64_t size_cap) {
    auto total = domain.total_size();
    if (!total || *total > kDomainCap)
        throw Error(ErrorCode::DomainTooLarge, "enumeration needs a materializable domain");
    const std::uint64_t domain_size = *total;

    // materialize the domain once, in lexicographic order
    std::vector<std::vector<std::uint32_t>> universe;
    universe.reserve(domain_size);
    for_each_tuple(domain, [&](std::span<const std::uint32_t> tuple) {
        universe.emplace_back(tuple.begin(), tuple.end());
    });

    std::uint64_t examined = 0;
    for (std::uint64_t size = 1; size <= domain_size; ++size) {
        // multisets as non-decreasing index sequences, lexicographic
        std::vector<std::uint64_t> pick(size, 0);
        for (;;) {
            if (++examined > size_cap)
                throw Error(ErrorCode::CapExceeded,
                            "examined more than " + std::to_string(size_cap) +
                                " candidate families");
            SamplerFamily candidate;
            candidate.domain = domain;
            for (std::uint64_t idx : pick)
                candidate.tuples.push_back(universe[idx]);
            if (verify_sampler(candidate, functions, delta).ok)
                return candidate;

            // next non-decreasing sequence
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == domain_size - 1)
                --i;
            if (i == 0)
                break;
            std::uint64_t v = pick[i - 1] + 1;
            for (std::size_t j = i - 1; j < size; ++j)
                pick[j] = v;
        }
    }
    // the full domain (deviation 0) is enumerated at size == domain_size,
    // so with a positive delta this is unreachable under a generous cap
    throw Error(ErrorCode::NotFound, "no family passed verification");
}

FunctionFamily indicator_mixture_family(const TupleDomain& domain, std::uint64_t count,
                                        std::uint64_t seed) {
    auto total = domain.total_size();
    if (!total || *total > kDomainCap)
        throw Error(ErrorCode::DomainTooLarge, "indicator family needs a small domain");
    const std::uint64_t domain_size = *total;
    const std::size_t words = std::size_t((domain_size + 63) / 64);

    auto masks = std::make_shared<std::vector<std::uint64_t>>(count * words, 0);
    Rng rng(seed);
    for (std::uint64_t f = 0; f < count; ++f)
        for (std::uint64_t x = 0; x < domain_size; ++x)
            if (rng.below(2))
                (*masks)[f * words + x / 64] |= std::uint64_t(1) << (x % 64);

    FunctionFamily family;
    family.size = count;
    family.eval = [domain, words, masks](std::uint64_t f,
                                         std::span<const std::uint32_t> tuple) -> double {
        std::uint64_t x = tuple_rank(domain, tuple);
        return double(((*masks)[f * words + x / 64] >> (x % 64)) & 1);
    };
    return family;
}

} // namespace gapamp
