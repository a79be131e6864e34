#include "gapamp/instances.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace gapamp {

namespace {

VertexPair normalized(std::uint32_t a, std::uint32_t b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

void check_adjacency(std::uint32_t n, std::vector<VertexPair>& list, bool normalize,
                     const char* what) {
    for (auto& [a, b] : list) {
        if (a == b)
            throw Error(ErrorCode::SyntaxError,
                        std::string("self-loop ") + what + " " + std::to_string(a));
        if (a >= n || b >= n)
            throw Error(ErrorCode::IndexOutOfRange,
                        std::string(what) + " endpoint exceeds vertex count");
        if (normalize && a > b)
            std::swap(a, b);
    }
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
        throw Error(ErrorCode::DuplicateAdjacency, std::string("duplicate ") + what);
}

void check_pairs(std::uint32_t n, const std::vector<VertexPair>& pairs) {
    if (pairs.empty())
        throw Error(ErrorCode::EmptyTerminals, "instance has no terminal pairs");
    for (const auto& [s, t] : pairs)
        if (s >= n || t >= n)
            throw Error(ErrorCode::IndexOutOfRange, "terminal exceeds vertex count");
}

// breadth-first reachability over a CSR digraph
void bfs(std::uint32_t source,
         const std::vector<std::uint32_t>& offsets,
         const std::vector<std::uint32_t>& heads,
         std::vector<char>& reach) {
    std::fill(reach.begin(), reach.end(), 0);
    std::vector<std::uint32_t> queue;
    queue.push_back(source);
    reach[source] = 1;
    while (!queue.empty()) {
        std::uint32_t u = queue.back();
        queue.pop_back();
        for (std::uint32_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            std::uint32_t w = heads[i];
            if (!reach[w]) {
                reach[w] = 1;
                queue.push_back(w);
            }
        }
    }
}

void build_csr(std::uint32_t n, const std::vector<VertexPair>& arcs,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& heads) {
    offsets.assign(n + 1, 0);
    for (const auto& [u, v] : arcs)
        offsets[u + 1]++;
    for (std::uint32_t i = 0; i < n; ++i)
        offsets[i + 1] += offsets[i];
    heads.resize(arcs.size());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : arcs)
        heads[cursor[u]++] = v;
}

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
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (a > b)
            std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

} // namespace

void canonicalize(MixedInstance& inst) {
    check_adjacency(inst.n, inst.arcs, false, "arc");
    check_adjacency(inst.n, inst.edges, true, "edge");
    for (const auto& [u, v] : inst.arcs)
        if (std::binary_search(inst.edges.begin(), inst.edges.end(), normalized(u, v)))
            throw Error(ErrorCode::DuplicateAdjacency,
                        "arc " + std::to_string(u) + " " + std::to_string(v) +
                            " also present as an undirected edge");
    check_pairs(inst.n, inst.pairs);
}

void canonicalize(MulticutInstance& inst) {
    check_adjacency(inst.n, inst.arcs, false, "arc");
    check_pairs(inst.n, inst.pairs);
    if (inst.budget > inst.arcs.size())
        throw Error(ErrorCode::BudgetExceeded, "budget exceeds arc count");
}

namespace {

struct Token {
    std::string_view text;
    int column = 0;
};

std::uint32_t parse_u32(const Token& tok, int line) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
        throw Error(ErrorCode::SyntaxError,
                    "expected unsigned integer, got '" + std::string(tok.text) + "'",
                    line, tok.column);
    return value;
}

std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), int(start) + 1});
    }
    return out;
}

} // namespace

ParsedInstance parse_instance(std::string_view text) {
    bool is_so = false;
    bool have_header = false;
    int header_line = 0;
    std::uint32_t n = 0;
    std::uint32_t budget = 0;
    std::vector<VertexPair> arcs, edges, pairs;
    std::set<VertexPair> arc_set;   // ordered pairs, exact duplicates
    std::set<VertexPair> edge_set;  // normalized pairs

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto toks = tokenize_line(line);
        if (toks.empty())
            continue;
        const std::string_view kw = toks[0].text;

        if (!have_header) {
            if (kw == "so" || kw == "dmc") {
                is_so = (kw == "so");
                std::size_t want = is_so ? 2 : 3;
                if (toks.size() != want)
                    throw Error(ErrorCode::SyntaxError,
                                std::string("malformed header '") + std::string(kw) + "'",
                                line_no, toks[0].column);
                n = parse_u32(toks[1], line_no);
                if (!is_so)
                    budget = parse_u32(toks[2], line_no);
                have_header = true;
                header_line = line_no;
                continue;
            }
            throw Error(ErrorCode::SyntaxError, "expected 'so <n>' or 'dmc <n> <p>' header",
                        line_no, toks[0].column);
        }

        if (kw == "arc" || kw == "edge") {
            if (kw == "edge" && !is_so)
                throw Error(ErrorCode::SyntaxError, "'edge' is not allowed in a dmc instance",
                            line_no, toks[0].column);
            if (toks.size() != 3)
                throw Error(ErrorCode::SyntaxError, "expected two endpoints",
                            line_no, toks[0].column);
            std::uint32_t u = parse_u32(toks[1], line_no);
            std::uint32_t v = parse_u32(toks[2], line_no);
            if (u == v)
                throw Error(ErrorCode::SyntaxError, "self-loop", line_no, toks[0].column);
            if (u >= n || v >= n)
                throw Error(ErrorCode::IndexOutOfRange, "endpoint exceeds vertex count",
                            line_no, toks[0].column);
            if (kw == "arc") {
                if (arc_set.count({u, v}) || edge_set.count(normalized(u, v)))
                    throw Error(ErrorCode::DuplicateAdjacency,
                                "arc " + std::to_string(u) + " " + std::to_string(v),
                                line_no, toks[0].column);
                arcs.push_back({u, v});
                arc_set.insert({u, v});
            } else {
                if (edge_set.count(normalized(u, v)) || arc_set.count({u, v}) ||
                    arc_set.count({v, u}))
                    throw Error(ErrorCode::DuplicateAdjacency,
                                "edge " + std::to_string(u) + " " + std::to_string(v),
                                line_no, toks[0].column);
                edges.push_back(normalized(u, v));
                edge_set.insert(normalized(u, v));
            }
            continue;
        }
        if (kw == "pair") {
            if (toks.size() != 3)
                throw Error(ErrorCode::SyntaxError, "expected source and sink",
                            line_no, toks[0].column);
            std::uint32_t s = parse_u32(toks[1], line_no);
            std::uint32_t t = parse_u32(toks[2], line_no);
            if (s >= n || t >= n)
                throw Error(ErrorCode::IndexOutOfRange, "terminal exceeds vertex count",
                            line_no, toks[0].column);
            pairs.push_back({s, t});
            continue;
        }
        throw Error(ErrorCode::SyntaxError, "unknown statement '" + std::string(kw) + "'",
                    line_no, toks[0].column);
    }

    if (!have_header)
        throw Error(ErrorCode::SyntaxError, "empty input", 1, 1);
    if (pairs.empty())
        throw Error(ErrorCode::EmptyTerminals, "instance has no terminal pairs", header_line, 1);

    if (is_so) {
        MixedInstance inst{n, std::move(arcs), std::move(edges), std::move(pairs)};
        canonicalize(inst);
        return inst;
    }
    MulticutInstance inst{n, std::move(arcs), std::move(pairs), budget};
    if (inst.budget > inst.arcs.size())
        throw Error(ErrorCode::BudgetExceeded, "budget exceeds arc count", header_line, 1);
    canonicalize(inst);
    return inst;
}

namespace {

void emit_adjacency(std::ostringstream& out, const char* kw,
                    const std::vector<VertexPair>& list) {
    for (const auto& [a, b] : list)
        out << kw << ' ' << a << ' ' << b << '\n';
}

} // namespace

std::string serialize_instance(const MixedInstance& inst) {
    std::ostringstream out;
    out << "so " << inst.n << '\n';
    emit_adjacency(out, "arc", inst.arcs);
    emit_adjacency(out, "edge", inst.edges);
    emit_adjacency(out, "pair", inst.pairs);
    return out.str();
}

std::string serialize_instance(const MulticutInstance& inst) {
    std::ostringstream out;
    out << "dmc " << inst.n << ' ' << inst.budget << '\n';
    emit_adjacency(out, "arc", inst.arcs);
    emit_adjacency(out, "pair", inst.pairs);
    return out.str();
}

SoEvaluator::SoEvaluator(const MixedInstance& inst) : inst_(&inst) {
    build_csr(inst.n, inst.arcs, arc_offsets_, arc_heads_);

    edge_offsets_.assign(inst.n + 1, 0);
    for (const auto& [u, v] : inst.edges) {
        edge_offsets_[u + 1]++;
        edge_offsets_[v + 1]++;
    }
    for (std::uint32_t i = 0; i < inst.n; ++i)
        edge_offsets_[i + 1] += edge_offsets_[i];
    edge_slots_.resize(2 * inst.edges.size());
    edge_others_.resize(2 * inst.edges.size());
    std::vector<std::uint32_t> cursor(edge_offsets_.begin(), edge_offsets_.end() - 1);
    for (std::uint32_t e = 0; e < inst.edges.size(); ++e) {
        auto [u, v] = inst.edges[e];
        edge_slots_[cursor[u]] = e;
        edge_others_[cursor[u]++] = v;
        edge_slots_[cursor[v]] = e;
        edge_others_[cursor[v]++] = u;
    }

    source_slot_.assign(inst.n, UINT32_MAX);
    for (const auto& [s, t] : inst.pairs) {
        if (source_slot_[s] == UINT32_MAX) {
            source_slot_[s] = std::uint32_t(sources_.size());
            sources_.push_back(s);
        }
    }
    visit_mark_.assign(inst.n, 0);
    reach_.assign(sources_.size() * inst.n, 0);
}

std::uint32_t SoEvaluator::satisfied_count(std::uint64_t mask, std::vector<char>* flags) {
    const std::uint32_t n = inst_->n;
    for (std::uint32_t si = 0; si < sources_.size(); ++si) {
        ++epoch_;
        char* reach = reach_.data() + std::size_t(si) * n;
        queue_.clear();
        queue_.push_back(sources_[si]);
        visit_mark_[sources_[si]] = epoch_;
        while (!queue_.empty()) {
            std::uint32_t u = queue_.back();
            queue_.pop_back();
            for (std::uint32_t i = arc_offsets_[u]; i < arc_offsets_[u + 1]; ++i) {
                std::uint32_t w = arc_heads_[i];
                if (visit_mark_[w] != epoch_) {
                    visit_mark_[w] = epoch_;
                    queue_.push_back(w);
                }
            }
            for (std::uint32_t i = edge_offsets_[u]; i < edge_offsets_[u + 1]; ++i) {
                std::uint32_t e = edge_slots_[i];
                std::uint32_t w = edge_others_[i];
                // bit 0 orients first -> second; edges store first < second
                bool along = u < w ? ((mask >> e) & 1) == 0 : ((mask >> e) & 1) == 1;
                if (along && visit_mark_[w] != epoch_) {
                    visit_mark_[w] = epoch_;
                    queue_.push_back(w);
                }
            }
        }
        for (std::uint32_t v = 0; v < n; ++v)
            reach[v] = visit_mark_[v] == epoch_;
    }

    std::uint32_t count = 0;
    if (flags)
        flags->assign(inst_->pairs.size(), 0);
    for (std::size_t i = 0; i < inst_->pairs.size(); ++i) {
        const auto& [s, t] = inst_->pairs[i];
        bool ok = reach_[std::size_t(source_slot_[s]) * n + t] != 0;
        count += ok;
        if (flags)
            (*flags)[i] = ok;
    }
    return count;
}

std::uint32_t SoEvaluator::eval_mask(std::uint64_t mask) {
    assert(inst_->edges.size() <= 64);
    return satisfied_count(mask, nullptr);
}

EvalResult SoEvaluator::eval(const Orientation& o) {
    if (o.bits.size() != inst_->edges.size())
        throw Error(ErrorCode::LengthMismatch,
                    "orientation has " + std::to_string(o.bits.size()) + " bits, instance has " +
                        std::to_string(inst_->edges.size()) + " edges");
    EvalResult result;
    if (inst_->edges.size() <= 64) {
        std::uint64_t mask = 0;
        for (std::size_t e = 0; e < o.bits.size(); ++e)
            if (o.bits[e])
                mask |= std::uint64_t(1) << e;
        result.count = satisfied_count(mask, &result.flags);
        return result;
    }
    // wide instances: evaluate as an explicit digraph
    std::vector<VertexPair> arcs = inst_->arcs;
    arcs.reserve(arcs.size() + inst_->edges.size());
    for (std::size_t e = 0; e < inst_->edges.size(); ++e) {
        auto [u, v] = inst_->edges[e];
        if (o.bits[e])
            arcs.push_back({v, u});
        else
            arcs.push_back({u, v});
    }
    std::vector<std::uint32_t> offsets, heads;
    std::sort(arcs.begin(), arcs.end());
    build_csr(inst_->n, arcs, offsets, heads);
    std::vector<char> reach(inst_->n, 0);
    std::vector<char> have(inst_->n, 0);
    std::vector<std::vector<char>> rows(sources_.size());
    result.flags.assign(inst_->pairs.size(), 0);
    for (std::size_t i = 0; i < inst_->pairs.size(); ++i) {
        const auto& [s, t] = inst_->pairs[i];
        std::uint32_t slot = source_slot_[s];
        if (!have[s]) {
            rows[slot].assign(inst_->n, 0);
            bfs(s, offsets, heads, rows[slot]);
            have[s] = 1;
        }
        bool ok = rows[slot][t] != 0;
        result.flags[i] = ok;
        result.count += ok;
    }
    return result;
}

EvalResult satisfied_pairs_so(const MixedInstance& inst, const Orientation& o) {
    SoEvaluator eval(inst);
    return eval.eval(o);
}

EvalResult separated_pairs_dmc(const MulticutInstance& inst, const Cutset& cut) {
    if (cut.indices.size() > inst.budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "cutset of size " + std::to_string(cut.indices.size()) +
                        " exceeds budget " + std::to_string(inst.budget));
    std::vector<char> removed(inst.arcs.size(), 0);
    for (std::uint32_t idx : cut.indices) {
        if (idx >= inst.arcs.size())
            throw Error(ErrorCode::BadIndex, "cut arc index " + std::to_string(idx));
        removed[idx] = 1;
    }
    std::vector<VertexPair> arcs;
    arcs.reserve(inst.arcs.size());
    for (std::size_t i = 0; i < inst.arcs.size(); ++i)
        if (!removed[i])
            arcs.push_back(inst.arcs[i]);

    std::vector<std::uint32_t> offsets, heads;
    build_csr(inst.n, arcs, offsets, heads);

    // group pairs by source, one epoch-marked traversal per distinct source:
    // work stays proportional to what each search actually reaches
    std::vector<std::uint32_t> order(inst.pairs.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return inst.pairs[a].first < inst.pairs[b].first;
    });

    EvalResult result;
    result.flags.assign(inst.pairs.size(), 0);
    std::vector<std::uint32_t> mark(inst.n, 0);
    std::vector<std::uint32_t> stack;
    std::uint32_t epoch = 0;
    std::uint32_t current = UINT32_MAX;
    for (std::uint32_t i : order) {
        const auto& [s, t] = inst.pairs[i];
        if (s != current) {
            current = s;
            ++epoch;
            stack.assign(1, s);
            mark[s] = epoch;
            while (!stack.empty()) {
                std::uint32_t u = stack.back();
                stack.pop_back();
                for (std::uint32_t a = offsets[u]; a < offsets[u + 1]; ++a) {
                    std::uint32_t w = heads[a];
                    if (mark[w] != epoch) {
                        mark[w] = epoch;
                        stack.push_back(w);
                    }
                }
            }
        }
        bool separated = mark[t] != epoch;
        result.flags[i] = separated;
        result.count += separated;
    }
    return result;
}

namespace {

// undirected components of the edge set; returns per-vertex component root
std::vector<std::uint32_t> edge_components(std::uint32_t n,
                                           const std::vector<VertexPair>& edges) {
    Dsu dsu(n);
    for (const auto& [u, v] : edges)
        dsu.unite(u, v);
    std::vector<std::uint32_t> root(n);
    for (std::uint32_t v = 0; v < n; ++v)
        root[v] = dsu.find(v);
    return root;
}

} // namespace

bool is_acyclic(const MixedInstance& inst) {
    auto root = edge_components(inst.n, inst.edges);

    std::vector<std::uint32_t> comp_size(inst.n, 0), comp_edges(inst.n, 0);
    for (std::uint32_t v = 0; v < inst.n; ++v)
        comp_size[root[v]]++;
    for (const auto& [u, v] : inst.edges)
        comp_edges[root[u]]++;
    for (std::uint32_t v = 0; v < inst.n; ++v)
        if (root[v] == v && comp_edges[v] + 1 != comp_size[v] && comp_edges[v] != 0)
            return false;  // component with a cycle

    // contract components, check the arc digraph is a DAG without self-loops
    std::vector<std::uint32_t> indeg(inst.n, 0);
    std::vector<std::vector<std::uint32_t>> out(inst.n);
    for (const auto& [u, v] : inst.arcs) {
        std::uint32_t a = root[u], b = root[v];
        if (a == b)
            return false;
        out[a].push_back(b);
        indeg[b]++;
    }
    std::vector<std::uint32_t> queue;
    std::uint32_t comps = 0;
    for (std::uint32_t v = 0; v < inst.n; ++v)
        if (root[v] == v) {
            ++comps;
            if (indeg[v] == 0)
                queue.push_back(v);
        }
    std::uint32_t seen = 0;
    while (!queue.empty()) {
        std::uint32_t c = queue.back();
        queue.pop_back();
        ++seen;
        for (std::uint32_t w : out[c])
            if (--indeg[w] == 0)
                queue.push_back(w);
    }
    return seen == comps;
}

namespace {

// tree path between two groups inside one undirected component
std::vector<std::uint32_t> forest_path(std::uint32_t from, std::uint32_t to,
                                       const std::vector<std::vector<std::uint32_t>>& adj,
                                       std::uint32_t n) {
    std::vector<std::uint32_t> parent(n, UINT32_MAX);
    std::vector<std::uint32_t> queue{from};
    parent[from] = from;
    for (std::size_t qi = 0; qi < queue.size() && parent[to] == UINT32_MAX; ++qi) {
        std::uint32_t u = queue[qi];
        for (std::uint32_t w : adj[u])
            if (parent[w] == UINT32_MAX) {
                parent[w] = u;
                queue.push_back(w);
            }
    }
    assert(parent[to] != UINT32_MAX);
    std::vector<std::uint32_t> path{to};
    while (path.back() != from)
        path.push_back(parent[path.back()]);
    return path;
}

} // namespace

MixedInstance contract_cycles(const MixedInstance& inst) {
    Dsu dsu(inst.n);

    for (bool changed = true; changed;) {
        changed = false;

        // current multigraph over group representatives
        std::vector<VertexPair> arcs, edges;
        for (const auto& [u, v] : inst.arcs) {
            std::uint32_t a = dsu.find(u), b = dsu.find(v);
            if (a != b)
                arcs.push_back({a, b});
        }
        for (const auto& [u, v] : inst.edges) {
            std::uint32_t a = dsu.find(u), b = dsu.find(v);
            if (a != b)
                edges.push_back(normalized(a, b));
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        std::sort(edges.begin(), edges.end());

        // two-cycles: parallel edges, opposite arcs, arc over an edge
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i] == edges[i + 1])
                changed |= dsu.unite(edges[i].first, edges[i].second);
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& [a, b] : arcs) {
            if (std::binary_search(arcs.begin(), arcs.end(), VertexPair{b, a}))
                changed |= dsu.unite(a, b);
            if (std::binary_search(edges.begin(), edges.end(), normalized(a, b)))
                changed |= dsu.unite(a, b);
        }
        if (changed)
            continue;

        // undirected cycles: an edge closing a walk inside the growing forest
        {
            Dsu forest(inst.n);
            std::vector<std::vector<std::uint32_t>> adj(inst.n);
            for (const auto& [a, b] : edges) {
                if (forest.find(a) == forest.find(b)) {
                    auto path = forest_path(a, b, adj, inst.n);
                    for (std::uint32_t v : path)
                        changed |= dsu.unite(path[0], v);
                    break;
                }
                forest.unite(a, b);
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
        if (changed)
            continue;

        // the undirected part is now a forest; look for a directed cycle in
        // the component condensation and contract the mixed cycle behind it
        Dsu comp(inst.n);
        std::vector<std::vector<std::uint32_t>> tree_adj(inst.n);
        for (const auto& [a, b] : edges) {
            comp.unite(a, b);
            tree_adj[a].push_back(b);
            tree_adj[b].push_back(a);
        }

        // arc between two groups of the same component closes a mixed cycle
        for (const auto& [a, b] : arcs) {
            if (comp.find(a) == comp.find(b)) {
                auto path = forest_path(b, a, tree_adj, inst.n);
                for (std::uint32_t v : path)
                    changed |= dsu.unite(a, v);
                break;
            }
        }
        if (changed)
            continue;

        // DFS for a cycle over components; arcs keep their group endpoints
        std::vector<std::vector<std::pair<std::uint32_t, const VertexPair*>>> comp_out(inst.n);
        for (const auto& arc : arcs)
            comp_out[comp.find(arc.first)].push_back({comp.find(arc.second), &arc});

        std::vector<int> color(inst.n, 0);  // only component roots are used
        std::vector<const VertexPair*> via(inst.n, nullptr);
        std::vector<std::uint32_t> pred(inst.n, UINT32_MAX);
        std::uint32_t cycle_head = UINT32_MAX, cycle_tail = UINT32_MAX;

        auto dfs = [&](auto&& self, std::uint32_t c) -> bool {
            color[c] = 1;
            for (const auto& [d, arc] : comp_out[c]) {
                if (color[d] == 1) {
                    cycle_head = d;
                    cycle_tail = c;
                    via[d] = arc;  // closing arc: from c's groups into d
                    return true;
                }
                if (color[d] == 0) {
                    pred[d] = c;
                    via[d] = arc;
                    if (self(self, d))
                        return true;
                }
            }
            color[c] = 2;
            return false;
        };
        for (std::uint32_t v = 0; v < inst.n && cycle_head == UINT32_MAX; ++v)
            if (dsu.find(v) == v && comp.find(v) == v && color[v] == 0)
                dfs(dfs, v);

        if (cycle_head != UINT32_MAX) {
            // walk the component cycle, merging each arc's endpoints and the
            // tree path that connects entry to exit inside each component
            std::vector<const VertexPair*> cycle_arcs{via[cycle_head]};
            for (std::uint32_t c = cycle_tail; c != cycle_head; c = pred[c])
                cycle_arcs.push_back(via[c]);
            std::reverse(cycle_arcs.begin(), cycle_arcs.end());
            // cycle_arcs[i] leaves the component that cycle_arcs[i-1] enters
            std::uint32_t anchor = cycle_arcs.front()->first;
            for (std::size_t i = 0; i < cycle_arcs.size(); ++i) {
                const VertexPair* arc = cycle_arcs[i];
                const VertexPair* next = cycle_arcs[(i + 1) % cycle_arcs.size()];
                changed |= dsu.unite(anchor, arc->first);
                changed |= dsu.unite(anchor, arc->second);
                // entry arc->second and exit next->first share a component
                assert(comp.find(arc->second) == comp.find(next->first));
                auto path = forest_path(arc->second, next->first, tree_adj, inst.n);
                for (std::uint32_t v : path)
                    changed |= dsu.unite(anchor, v);
            }
            assert(changed);
        }
    }

    // relabel groups densely, ordered by smallest original vertex
    std::vector<std::uint32_t> label(inst.n, UINT32_MAX);
    std::uint32_t next_label = 0;
    for (std::uint32_t v = 0; v < inst.n; ++v) {
        std::uint32_t r = dsu.find(v);
        if (label[r] == UINT32_MAX)
            label[r] = next_label++;
    }

    MixedInstance out;
    out.n = next_label;
    std::set<VertexPair> arc_set, edge_set;
    for (const auto& [u, v] : inst.arcs) {
        std::uint32_t a = label[dsu.find(u)], b = label[dsu.find(v)];
        if (a != b)
            arc_set.insert({a, b});
    }
    for (const auto& [u, v] : inst.edges) {
        std::uint32_t a = label[dsu.find(u)], b = label[dsu.find(v)];
        if (a != b)
            edge_set.insert(normalized(a, b));
    }
    out.arcs.assign(arc_set.begin(), arc_set.end());
    out.edges.assign(edge_set.begin(), edge_set.end());
    for (const auto& [s, t] : inst.pairs)
        out.pairs.push_back({label[dsu.find(s)], label[dsu.find(t)]});
    canonicalize(out);
    assert(is_acyclic(out));
    return out;
}

std::vector<std::vector<std::uint32_t>> relaxation_adjacency(const MixedInstance& inst) {
    std::vector<std::vector<std::uint32_t>> adj(inst.n);
    for (const auto& [u, v] : inst.arcs)
        adj[u].push_back(v);
    for (const auto& [u, v] : inst.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end());
    return adj;
}

std::optional<std::uint32_t> edge_index(const MixedInstance& inst,
                                        std::uint32_t a, std::uint32_t b) {
    VertexPair key = normalized(a, b);
    auto it = std::lower_bound(inst.edges.begin(), inst.edges.end(), key);
    if (it != inst.edges.end() && *it == key)
        return std::uint32_t(it - inst.edges.begin());
    return std::nullopt;
}

bool arc_exists(const MixedInstance& inst, std::uint32_t from, std::uint32_t to) {
    return std::binary_search(inst.arcs.begin(), inst.arcs.end(), VertexPair{from, to});
}

} // namespace gapamp
