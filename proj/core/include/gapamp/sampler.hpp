#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gapamp/rational.hpp"

namespace gapamp {

// function families larger than this are never materialized as tables
inline constexpr std::uint64_t kDomainCap = std::uint64_t(1) << 20;

/// Product domain of fixed-length tuples with a uniform per-coordinate radix.
struct TupleDomain {
    std::uint32_t length = 1;
    std::uint32_t radix = 1;

    /// radix^length, or nullopt when it only exists symbolically.
    std::optional<std::uint64_t> total_size() const;
};

/// Multiset of domain tuples plus the seed that produced it.
struct SamplerFamily {
    TupleDomain domain;
    std::vector<std::vector<std::uint32_t>> tuples;
    std::uint64_t seed = 0;
};

/// Enumerable family of functions domain -> [0, 1].
struct FunctionFamily {
    std::uint64_t size = 0;
    std::function<double(std::uint64_t index, std::span<const std::uint32_t> tuple)> eval;
};

/// ceil(multiplier * delta^-2 * log2(family_size)), at least 1.
/// Exact integer arithmetic; logarithms are base 2 throughout.
std::uint64_t required_sample_count(const Rational& delta,
                                    const Rational& family_size_log2,
                                    std::uint32_t multiplier = 10);

/// m independent uniform tuples, reproducible from the seed.
SamplerFamily sample_tuples(const TupleDomain& domain, std::uint64_t m, std::uint64_t seed);

struct VerifyResult {
    bool ok = false;
    double max_deviation = 0.0;
};

/// True iff |family mean - domain mean| <= delta for every function.
/// Requires the exact domain mean to be computable (micro scale).
VerifyResult verify_sampler(const SamplerFamily& family, const FunctionFamily& functions,
                            const Rational& delta, std::uint64_t domain_cap = kDomainCap);

/// Smallest family passing verify_sampler, searched in increasing size
/// over multisets in lexicographic order. size_cap bounds the number of
/// candidate families examined.
SamplerFamily derandomize_family(const TupleDomain& domain, const FunctionFamily& functions,
                                 const Rational& delta, std::uint64_t size_cap);

/// `count` random subset indicators over the domain, seeded; a standard
/// stress family for sampler verification.
FunctionFamily indicator_mixture_family(const TupleDomain& domain, std::uint64_t count,
                                        std::uint64_t seed);

/// Rank of a tuple in the lexicographic enumeration of the domain.
std::uint64_t tuple_rank(const TupleDomain& domain, std::span<const std::uint32_t> tuple);

} // namespace gapamp
