#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gapamp/error.hpp"

namespace gapamp {

using VertexPair = std::pair<std::uint32_t, std::uint32_t>;

/// Mixed graph plus an ordered list of terminal pairs. Instances are kept
/// canonical: arcs and edges sorted and duplicate-free, edges stored with
/// the smaller endpoint first, terminal pairs in their original order.
struct MixedInstance {
    std::uint32_t n = 0;
    std::vector<VertexPair> arcs;   // directed (from, to)
    std::vector<VertexPair> edges;  // undirected, normalized first < second
    std::vector<VertexPair> pairs;  // (source, sink), duplicates and s==t allowed

    bool operator==(const MixedInstance&) const = default;
};

/// One direction bit per undirected edge, in edge order.
/// 0 = as written (first -> second), 1 = reversed.
struct Orientation {
    std::vector<std::uint8_t> bits;

    bool operator==(const Orientation&) const = default;
};

struct MulticutInstance {
    std::uint32_t n = 0;
    std::vector<VertexPair> arcs;
    std::vector<VertexPair> pairs;
    std::uint32_t budget = 0;

    bool operator==(const MulticutInstance&) const = default;
};

/// Sorted set of arc indices, at most `budget` of them.
struct Cutset {
    std::vector<std::uint32_t> indices;

    bool operator==(const Cutset&) const = default;
};

/// Sorts adjacency lists, normalizes edge endpoints and checks all data
/// model invariants. Throws on self-loops, duplicates, arc/edge overlap,
/// out-of-range endpoints or an empty terminal list.
void canonicalize(MixedInstance& inst);
void canonicalize(MulticutInstance& inst);

using ParsedInstance = std::variant<MixedInstance, MulticutInstance>;

/// Parses the line-oriented text format. Diagnostics carry line/column.
ParsedInstance parse_instance(std::string_view text);

std::string serialize_instance(const MixedInstance& inst);
std::string serialize_instance(const MulticutInstance& inst);

struct EvalResult {
    std::uint32_t count = 0;
    std::vector<char> flags;  // one per terminal pair
};

/// flags[i] is true iff sink i is reachable from source i after orienting.
EvalResult satisfied_pairs_so(const MixedInstance& inst, const Orientation& o);

/// flags[i] is true iff sink i is unreachable from source i after deleting
/// the cut arcs.
EvalResult separated_pairs_dmc(const MulticutInstance& inst, const Cutset& cut);

/// True iff no orientation of the instance contains a directed cycle:
/// every undirected component is a tree and the digraph obtained by
/// contracting undirected components is a DAG without self-loops.
bool is_acyclic(const MixedInstance& inst);

/// Contracts cycles until the instance is acyclic. Terminal pairs are
/// remapped to the contracted representatives (self-pairs may appear and
/// count as always satisfied). The optimum is preserved.
MixedInstance contract_cycles(const MixedInstance& inst);

/// Adjacency of the relaxation digraph: arcs plus both directions of
/// every undirected edge. Neighbor lists are sorted.
std::vector<std::vector<std::uint32_t>> relaxation_adjacency(const MixedInstance& inst);

/// Index into inst.edges of the undirected edge {a, b}, if present.
std::optional<std::uint32_t> edge_index(const MixedInstance& inst,
                                        std::uint32_t a, std::uint32_t b);

bool arc_exists(const MixedInstance& inst, std::uint32_t from, std::uint32_t to);

/// Reusable evaluator for scanning many orientations of one instance.
/// Buffers are allocated once; eval_mask additionally requires |E| <= 64
/// (bit e of the mask is the direction of edge e, 1 = reversed).
class SoEvaluator {
public:
    explicit SoEvaluator(const MixedInstance& inst);

    std::uint32_t eval_mask(std::uint64_t mask);
    EvalResult eval(const Orientation& o);

private:
    std::uint32_t satisfied_count(std::uint64_t mask, std::vector<char>* flags);

    const MixedInstance* inst_;
    std::vector<std::uint32_t> arc_heads_;
    std::vector<std::uint32_t> arc_offsets_;
    std::vector<std::uint32_t> edge_slots_;    // edge index per endpoint slot
    std::vector<std::uint32_t> edge_others_;   // opposite endpoint per slot
    std::vector<std::uint32_t> edge_offsets_;
    std::vector<std::uint32_t> sources_;       // distinct pair sources
    std::vector<std::uint32_t> source_slot_;   // vertex -> index into sources_
    std::vector<std::uint32_t> visit_mark_;
    std::vector<std::uint32_t> queue_;
    std::vector<char> reach_;                  // sources_ x n, row-major
    std::uint32_t epoch_ = 0;
};

} // namespace gapamp
