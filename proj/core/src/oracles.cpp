#include "gapamp/oracles.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <limits>

namespace gapamp {

namespace {

Orientation mask_to_orientation(std::uint64_t mask, std::size_t edges) {
    Orientation o;
    o.bits.resize(edges);
    for (std::size_t e = 0; e < edges; ++e)
        o.bits[e] = (mask >> e) & 1;
    return o;
}

struct MaskBest {
    std::uint32_t value = 0;
    std::uint64_t mask = 0;
    bool any = false;

    void offer(std::uint32_t v, std::uint64_t m) {
        if (!any || v > value || (v == value && m < mask)) {
            value = v;
            mask = m;
            any = true;
        }
    }
};

MaskBest scan_range(const MixedInstance& inst, std::uint64_t begin, std::uint64_t end) {
    SoEvaluator eval(inst);
    MaskBest best;
    const std::uint32_t k = std::uint32_t(inst.pairs.size());
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        std::uint32_t v = eval.eval_mask(mask);
        best.offer(v, mask);
        if (best.value == k)
            break;  // cannot improve; lowest mask attaining k is kept
    }
    return best;
}

} // namespace

SoOracleResult opt_so(const MixedInstance& inst, std::uint64_t limit, unsigned threads) {
    const std::size_t edges = inst.edges.size();
    if (edges >= 63 || (std::uint64_t(1) << edges) > limit)
        throw Error(ErrorCode::TooLarge,
                    "2^" + std::to_string(edges) + " orientations exceed the cap of " +
                        std::to_string(limit));
    const std::uint64_t total = std::uint64_t(1) << edges;

    if (edges == 0) {
        // fully directed: nothing to search
        SoEvaluator eval(inst);
        return {eval.eval_mask(0), Orientation{}};
    }

    MaskBest best;
    if (threads <= 1 || total < 1024) {
        best = scan_range(inst, 0, total);
    } else {
        unsigned t = std::min<std::uint64_t>(threads, 64);
        std::uint64_t chunk = (total + t - 1) / t;
        std::vector<std::future<MaskBest>> futures;
        for (unsigned i = 0; i < t; ++i) {
            std::uint64_t begin = std::uint64_t(i) * chunk;
            std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end)
                break;
            futures.push_back(std::async(std::launch::async, scan_range,
                                         std::cref(inst), begin, end));
        }
        for (auto& f : futures) {
            MaskBest local = f.get();
            if (local.any)
                best.offer(local.value, local.mask);
        }
    }
    // early break in scan_range keeps per-chunk minimality; the merge above
    // then picks the globally lowest mask among full-value chunks
    return {best.value, mask_to_orientation(best.mask, edges)};
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    // C(n-k+i, i) grows monotonically toward C(n, k), so capping the
    // running value mid-loop never rejects a fitting search
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t factor = n - k + i;
        if (result > cap || result > std::numeric_limits<std::uint64_t>::max() / factor)
            return cap == std::numeric_limits<std::uint64_t>::max() ? cap : cap + 1;
        result = result * factor / i;
    }
    return result;
}

// separated count for the arc subset flagged in `removed`
std::uint32_t separated_count(const MulticutInstance& inst,
                              const std::vector<char>& removed,
                              std::vector<std::vector<std::uint32_t>>& adj_scratch,
                              std::vector<std::uint32_t>& mark,
                              std::uint32_t& epoch) {
    for (auto& list : adj_scratch)
        list.clear();
    for (std::size_t i = 0; i < inst.arcs.size(); ++i)
        if (!removed[i])
            adj_scratch[inst.arcs[i].first].push_back(inst.arcs[i].second);

    std::uint32_t count = 0;
    std::vector<std::uint32_t> stack;
    for (const auto& [s, t] : inst.pairs) {
        ++epoch;
        bool reached = false;
        stack.clear();
        stack.push_back(s);
        mark[s] = epoch;
        if (s == t)
            reached = true;
        while (!stack.empty() && !reached) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj_scratch[u]) {
                if (mark[w] != epoch) {
                    mark[w] = epoch;
                    if (w == t) {
                        reached = true;
                        break;
                    }
                    stack.push_back(w);
                }
            }
        }
        count += !reached;
    }
    return count;
}

} // namespace

DmcOracleResult opt_dmc(const MulticutInstance& inst, std::uint64_t limit) {
    const std::uint64_t m = inst.arcs.size();
    const std::uint64_t p = std::min<std::uint64_t>(inst.budget, m);
    if (binomial_capped(m, p, limit) > limit)
        throw Error(ErrorCode::TooLarge,
                    "C(" + std::to_string(m) + ", " + std::to_string(p) +
                        ") cutsets exceed the cap of " + std::to_string(limit));

    std::vector<std::vector<std::uint32_t>> adj(inst.n);
    std::vector<std::uint32_t> mark(inst.n, 0);
    std::uint32_t epoch = 0;
    std::vector<char> removed(m, 0);

    // separation is monotone under supersets, so scanning size-p subsets
    // in lexicographic order finds the optimum and the first witness
    std::vector<std::uint32_t> comb(p);
    for (std::uint32_t i = 0; i < p; ++i)
        comb[i] = i;

    DmcOracleResult best;
    bool first = true;
    for (;;) {
        std::fill(removed.begin(), removed.end(), 0);
        for (std::uint32_t idx : comb)
            removed[idx] = 1;
        std::uint32_t value = separated_count(inst, removed, adj, mark, epoch);
        if (first || value > best.value) {
            best.value = value;
            best.witness.indices.assign(comb.begin(), comb.end());
            first = false;
        }
        if (best.value == inst.pairs.size())
            break;

        // next combination
        if (p == 0)
            break;
        std::size_t i = p;
        while (i > 0 && comb[i - 1] == m - p + (i - 1))
            --i;
        if (i == 0)
            break;
        ++comb[i - 1];
        for (std::size_t j = i; j < p; ++j)
            comb[j] = comb[j - 1] + 1;
    }
    return best;
}

void PartGraph::init(std::uint32_t vertex_count, std::uint32_t part_count) {
    n = vertex_count;
    parts = part_count;
    part.assign(n, -1);
    adj.assign(std::size_t(n) * words(), 0);
}

void PartGraph::add_edge(std::uint32_t a, std::uint32_t b) {
    assert(a != b && a < n && b < n);
    adj[std::size_t(a) * words() + b / 64] |= std::uint64_t(1) << (b % 64);
    adj[std::size_t(b) * words() + a / 64] |= std::uint64_t(1) << (a % 64);
}

bool PartGraph::adjacent(std::uint32_t a, std::uint32_t b) const {
    return (adj[std::size_t(a) * words() + b / 64] >> (b % 64)) & 1;
}

namespace {

// one vertex per part, parts in label order, candidates pruned eagerly
bool multipartite_search(const PartGraph& g,
                         const std::vector<std::vector<std::uint32_t>>& members,
                         std::uint32_t depth,
                         std::vector<std::uint64_t>& candidates,
                         std::vector<std::uint32_t>& picked) {
    if (depth == members.size())
        return true;
    const std::size_t w = g.words();
    const std::uint64_t* cur = candidates.data() + std::size_t(depth) * w;
    for (std::uint32_t v : members[depth]) {
        if (!((cur[v / 64] >> (v % 64)) & 1))
            continue;
        // running intersection of neighborhoods of everything picked so far
        std::uint64_t* next = candidates.data() + std::size_t(depth + 1) * w;
        for (std::size_t i = 0; i < w; ++i)
            next[i] = cur[i] & g.adj[std::size_t(v) * w + i];
        // forward check: every remaining part must keep a candidate
        bool ok = true;
        for (std::size_t d = depth + 1; d < members.size() && ok; ++d) {
            bool nonempty = false;
            for (std::uint32_t u : members[d])
                if ((next[u / 64] >> (u % 64)) & 1) {
                    nonempty = true;
                    break;
                }
            ok = nonempty;
        }
        if (!ok)
            continue;
        picked.push_back(v);
        if (multipartite_search(g, members, depth + 1, candidates, picked))
            return true;
        picked.pop_back();
    }
    return false;
}

bool plain_search(const PartGraph& g, std::uint32_t target, std::uint32_t min_vertex,
                  std::vector<std::uint64_t>& cand, std::vector<std::uint32_t>& picked) {
    if (picked.size() == target)
        return true;
    const std::size_t w = g.words();
    std::uint32_t remaining = 0;
    for (std::size_t i = 0; i < w; ++i)
        remaining += std::uint32_t(__builtin_popcountll(cand[i]));
    if (picked.size() + remaining < target)
        return false;
    for (std::uint32_t v = min_vertex; v < g.n; ++v) {
        if (!((cand[v / 64] >> (v % 64)) & 1))
            continue;
        std::vector<std::uint64_t> next(w);
        for (std::size_t i = 0; i < w; ++i)
            next[i] = cand[i] & g.adj[std::size_t(v) * w + i];
        picked.push_back(v);
        if (plain_search(g, target, v + 1, next, picked))
            return true;
        picked.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<std::uint32_t>> max_clique_at_least(const PartGraph& graph,
                                                              std::uint32_t target) {
    if (target == 0)
        return std::vector<std::uint32_t>{};
    const std::size_t w = graph.words();

    if (graph.parts > 0) {
        assert(target == graph.parts);
        std::vector<std::vector<std::uint32_t>> members(graph.parts);
        for (std::uint32_t v = 0; v < graph.n; ++v) {
            assert(graph.part[v] >= 0 && std::uint32_t(graph.part[v]) < graph.parts);
            members[graph.part[v]].push_back(v);
        }
        for (const auto& m : members)
            if (m.empty())
                return std::nullopt;
        std::vector<std::uint64_t> candidates((graph.parts + 1) * w, 0);
        for (std::uint32_t v = 0; v < graph.n; ++v)
            candidates[v / 64] |= std::uint64_t(1) << (v % 64);
        std::vector<std::uint32_t> picked;
        if (multipartite_search(graph, members, 0, candidates, picked))
            return picked;
        return std::nullopt;
    }

    std::vector<std::uint64_t> cand(w, 0);
    for (std::uint32_t v = 0; v < graph.n; ++v)
        cand[v / 64] |= std::uint64_t(1) << (v % 64);
    std::vector<std::uint32_t> picked;
    if (plain_search(graph, target, 0, cand, picked))
        return picked;
    return std::nullopt;
}

} // namespace gapamp
