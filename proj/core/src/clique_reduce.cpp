#include "gapamp/clique_reduce.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <sstream>

namespace gapamp {

std::vector<std::uint32_t> CanonicalFamily::path(std::uint32_t u, std::uint32_t v) const {
    assert(reachable(u, v));
    std::vector<std::uint32_t> out{u};
    while (out.back() != v)
        out.push_back(next_hop[out.back()][v]);
    return out;
}

CanonicalFamily canonical_family(const MixedInstance& inst) {
    if (!is_acyclic(inst))
        throw Error(ErrorCode::NotAcyclic, "canonical families need an acyclic instance");

    CanonicalFamily family;
    family.n = inst.n;
    family.dist.assign(inst.n, std::vector<std::int32_t>(inst.n, -1));
    family.next_hop.assign(inst.n, std::vector<std::uint32_t>(inst.n, UINT32_MAX));

    auto adj = relaxation_adjacency(inst);
    std::vector<std::vector<std::uint32_t>> radj(inst.n);
    for (std::uint32_t u = 0; u < inst.n; ++u)
        for (std::uint32_t w : adj[u])
            radj[w].push_back(u);

    // BFS from every target over reversed adjacency gives dist(x, v)
    std::vector<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < inst.n; ++v) {
        family.dist[v][v] = 0;
        queue.assign(1, v);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::uint32_t x = queue[qi];
            for (std::uint32_t w : radj[x])
                if (family.dist[w][v] < 0) {
                    family.dist[w][v] = family.dist[x][v] + 1;
                    queue.push_back(w);
                }
        }
    }

    // first hop: smallest neighbor that still decreases the distance
    for (std::uint32_t u = 0; u < inst.n; ++u)
        for (std::uint32_t v = 0; v < inst.n; ++v) {
            if (u == v || family.dist[u][v] < 0)
                continue;
            for (std::uint32_t w : adj[u])  // sorted, so the first hit is smallest
                if (family.dist[w][v] == family.dist[u][v] - 1) {
                    family.next_hop[u][v] = w;
                    break;
                }
            assert(family.next_hop[u][v] != UINT32_MAX);
        }
    return family;
}

namespace {

// direction per undirected edge: 0 unused, 1 forward (as written), 2 back
std::vector<std::uint8_t> edge_usage(std::span<const std::uint32_t> path,
                                     const MixedInstance& inst) {
    std::vector<std::uint8_t> usage(inst.edges.size(), 0);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        auto e = edge_index(inst, path[i], path[i + 1]);
        if (!e)
            continue;  // a directed arc
        usage[*e] = path[i] < path[i + 1] ? 1 : 2;
    }
    return usage;
}

} // namespace

bool paths_conflict(std::span<const std::uint32_t> p, std::span<const std::uint32_t> q,
                    const MixedInstance& inst) {
    auto up = edge_usage(p, inst);
    auto uq = edge_usage(q, inst);
    for (std::size_t e = 0; e < up.size(); ++e)
        if (up[e] != 0 && uq[e] != 0 && up[e] != uq[e])
            return true;
    return false;
}

Support min_support(std::span<const std::uint32_t> path, const CanonicalFamily& family) {
    if (path.empty())
        throw Error(ErrorCode::NotAPath, "empty vertex sequence");
    std::vector<char> seen(family.n, 0);
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] >= family.n || seen[path[i]])
            throw Error(ErrorCode::NotAPath, "vertex repeats or is out of range");
        seen[path[i]] = 1;
        if (i + 1 < path.size() && family.dist[path[i]][path[i + 1]] != 1)
            throw Error(ErrorCode::NotAPath,
                        "consecutive vertices are not adjacent in the relaxation");
    }
    if (path.size() == 1)
        return Support{{path[0]}};

    // canonical[i][j]: the subpath i..j equals P_{path[i], path[j]}
    const std::size_t m = path.size();
    auto is_canonical = [&](std::size_t i, std::size_t j) {
        if (!family.reachable(path[i], path[j]) ||
            family.dist[path[i]][path[j]] != std::int32_t(j - i))
            return false;
        std::uint32_t x = path[i];
        for (std::size_t step = i; step < j; ++step) {
            x = family.next_hop[x][path[j]];
            if (x != path[step + 1])
                return false;
        }
        return true;
    };

    std::vector<std::uint32_t> best(m, UINT32_MAX);
    std::vector<std::size_t> prev(m, SIZE_MAX);
    best[0] = 1;
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (best[i] == UINT32_MAX || best[i] + 1 >= best[j])
                continue;
            if (is_canonical(i, j)) {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    assert(best[m - 1] != UINT32_MAX);  // single steps are always canonical

    Support support;
    for (std::size_t j = m - 1; j != SIZE_MAX; j = prev[j]) {
        support.breakpoints.push_back(path[j]);
        if (j == 0)
            break;
    }
    std::reverse(support.breakpoints.begin(), support.breakpoints.end());
    return support;
}

CliqueInstance build_clique_instance(const MixedInstance& inst, std::uint32_t beta) {
    assert(beta >= 1);
    CanonicalFamily family = canonical_family(inst);

    CliqueInstance out;
    out.k = std::uint32_t(inst.pairs.size());
    out.beta = beta;
    out.target = out.k * beta;

    for (std::uint32_t i = 0; i < out.k; ++i) {
        const auto [s, t] = inst.pairs[i];
        for (std::uint32_t j = 0; j < beta; ++j)
            for (std::uint32_t u = 0; u < inst.n; ++u) {
                if (j == 0 && u != s)
                    continue;
                for (std::uint32_t v = 0; v < inst.n; ++v) {
                    if (j + 1 == beta && v != t)
                        continue;
                    if (!family.reachable(u, v))
                        continue;
                    out.verts.push_back({i, j, u, v});
                }
            }
    }

    // cache edge-direction signatures per distinct payload
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint8_t>> usage;
    for (const auto& vert : out.verts) {
        auto key = std::make_pair(vert.u, vert.v);
        if (!usage.count(key))
            usage[key] = edge_usage(family.path(vert.u, vert.v), inst);
    }
    auto conflict = [&](const CliqueVertex& a, const CliqueVertex& b) {
        const auto& ua = usage[{a.u, a.v}];
        const auto& ub = usage[{b.u, b.v}];
        for (std::size_t e = 0; e < ua.size(); ++e)
            if (ua[e] != 0 && ub[e] != 0 && ua[e] != ub[e])
                return true;
        return false;
    };

    for (std::uint32_t a = 0; a < out.verts.size(); ++a)
        for (std::uint32_t b = a + 1; b < out.verts.size(); ++b) {
            const auto& va = out.verts[a];
            const auto& vb = out.verts[b];
            if (va.row == vb.row && va.col == vb.col)
                continue;  // parts are independent sets
            if (conflict(va, vb))
                continue;
            // consecutive columns of one row must chain
            if (va.row == vb.row && vb.col == va.col + 1 && va.v != vb.u)
                continue;
            if (va.row == vb.row && va.col == vb.col + 1 && vb.v != va.u)
                continue;
            out.edges.push_back({a, b});
        }
    return out;
}

PartGraph to_part_graph(const CliqueInstance& inst) {
    PartGraph g;
    g.init(std::uint32_t(inst.verts.size()), inst.k * inst.beta);
    for (std::uint32_t v = 0; v < inst.verts.size(); ++v)
        g.set_part(v, inst.verts[v].row * inst.beta + inst.verts[v].col);  // row-major
    for (const auto& [a, b] : inst.edges)
        g.add_edge(a, b);
    return g;
}

Orientation clique_to_orientation(const MixedInstance& inst, const CliqueInstance& clique_inst,
                                  std::span<const std::uint32_t> clique) {
    if (clique.size() != clique_inst.target)
        throw Error(ErrorCode::NotAClique,
                    "expected " + std::to_string(clique_inst.target) + " vertices, got " +
                        std::to_string(clique.size()));
    std::vector<std::uint32_t> by_part(clique_inst.target, UINT32_MAX);
    for (std::uint32_t idx : clique) {
        if (idx >= clique_inst.verts.size())
            throw Error(ErrorCode::NotAClique, "clique vertex out of range");
        const auto& vert = clique_inst.verts[idx];
        std::uint32_t part = vert.row * clique_inst.beta + vert.col;
        if (by_part[part] != UINT32_MAX)
            throw Error(ErrorCode::NotAClique, "two picks in one part");
        by_part[part] = idx;
    }
    for (std::uint32_t part = 0; part < clique_inst.target; ++part)
        if (by_part[part] == UINT32_MAX)
            throw Error(ErrorCode::PartMissing,
                        "no pick in part (" + std::to_string(part / clique_inst.beta) + ", " +
                            std::to_string(part % clique_inst.beta) + ")");

    PartGraph g = to_part_graph(clique_inst);
    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t b = a + 1; b < clique.size(); ++b)
            if (!g.adjacent(clique[a], clique[b]))
                throw Error(ErrorCode::NotAClique, "selected vertices are not pairwise adjacent");

    CanonicalFamily family = canonical_family(inst);
    Orientation o;
    o.bits.assign(inst.edges.size(), 0);  // unused edges stay as written
    for (std::uint32_t idx : clique) {
        const auto& vert = clique_inst.verts[idx];
        auto path = family.path(vert.u, vert.v);
        auto usage = edge_usage(path, inst);
        for (std::size_t e = 0; e < usage.size(); ++e)
            if (usage[e] != 0)
                o.bits[e] = usage[e] == 2;  // conflict-freeness keeps this consistent
    }
    return o;
}

std::optional<std::uint64_t> canonical_beta_bound(std::uint32_t k) {
    std::uint64_t out = 4 * std::uint64_t(k);
    auto mul = [&out](std::uint64_t factor) {
        if (factor != 0 && out > UINT64_MAX / factor) {
            out = 0;
            return false;
        }
        out *= factor;
        return true;
    };
    for (std::uint32_t i = 0; i < k; ++i)
        if (!mul(4))
            return std::nullopt;
    for (std::uint32_t i = 0; i < 2 * k; ++i)
        if (!mul(2 * std::uint64_t(k)))
            return std::nullopt;
    return out;
}

std::optional<MinBetaResult> min_beta(const MixedInstance& inst, std::uint32_t beta_max,
                                      std::uint64_t vertex_cap) {
    assert(beta_max >= 1);
    const std::uint64_t k = inst.pairs.size();
    const std::uint64_t worst = k * beta_max * std::uint64_t(inst.n) * inst.n;
    if (worst > vertex_cap)
        throw Error(ErrorCode::OracleTooLarge,
                    "clique instance may need " + std::to_string(worst) + " vertices");

    for (std::uint32_t beta = 1; beta <= beta_max; ++beta) {
        CliqueInstance ci = build_clique_instance(inst, beta);
        PartGraph g = to_part_graph(ci);
        if (auto witness = max_clique_at_least(g, ci.target))
            return MinBetaResult{beta, *witness};
    }
    return std::nullopt;
}

std::string serialize_clique(const CliqueInstance& inst) {
    std::ostringstream out;
    out << "clique " << inst.verts.size() << ' ' << inst.target << '\n';
    for (std::uint32_t v = 0; v < inst.verts.size(); ++v)
        out << "part " << v << ' ' << inst.verts[v].row << ' ' << inst.verts[v].col << '\n';
    for (std::uint32_t v = 0; v < inst.verts.size(); ++v)
        out << "payload " << v << ' ' << inst.verts[v].u << ' ' << inst.verts[v].v << '\n';
    for (const auto& [a, b] : inst.edges)
        out << "cedge " << a << ' ' << b << '\n';
    return out.str();
}

namespace {

std::uint32_t parse_field(std::istringstream& in, int line) {
    std::uint64_t value;
    if (!(in >> value) || value > UINT32_MAX)
        throw Error(ErrorCode::SyntaxError, "expected unsigned integer", line);
    return std::uint32_t(value);
}

} // namespace

CliqueInstance parse_clique(std::string_view text) {
    CliqueInstance out;
    bool have_header = false;
    std::uint32_t nv = 0;

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        std::istringstream in(raw);
        std::string kw;
        if (!(in >> kw))
            continue;
        if (!have_header) {
            if (kw != "clique")
                throw Error(ErrorCode::SyntaxError, "expected 'clique <nv> <target>'", line_no);
            nv = parse_field(in, line_no);
            out.target = parse_field(in, line_no);
            out.verts.assign(nv, CliqueVertex{});
            have_header = true;
            continue;
        }
        if (kw == "part") {
            std::uint32_t v = parse_field(in, line_no);
            if (v >= nv)
                throw Error(ErrorCode::IndexOutOfRange, "vertex out of range", line_no);
            out.verts[v].row = parse_field(in, line_no);
            out.verts[v].col = parse_field(in, line_no);
        } else if (kw == "payload") {
            std::uint32_t v = parse_field(in, line_no);
            if (v >= nv)
                throw Error(ErrorCode::IndexOutOfRange, "vertex out of range", line_no);
            out.verts[v].u = parse_field(in, line_no);
            out.verts[v].v = parse_field(in, line_no);
        } else if (kw == "cedge") {
            std::uint32_t a = parse_field(in, line_no);
            std::uint32_t b = parse_field(in, line_no);
            if (a >= nv || b >= nv || a == b)
                throw Error(ErrorCode::IndexOutOfRange, "bad edge", line_no);
            out.edges.push_back({std::min(a, b), std::max(a, b)});
        } else {
            throw Error(ErrorCode::SyntaxError, "unknown statement '" + kw + "'", line_no);
        }
    }
    if (!have_header)
        throw Error(ErrorCode::SyntaxError, "empty input", 1);

    for (const auto& vert : out.verts) {
        out.k = std::max(out.k, vert.row + 1);
        out.beta = std::max(out.beta, vert.col + 1);
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

} // namespace gapamp
