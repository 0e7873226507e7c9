#pragma once

// Acyclic networks with per-edge integer delays, local encoding kernels, and
// the S_i -> T_j transfer polynomials M_ij(D) they induce.
//
// Sources and destinations are indexed 0..2 in code (S_1..S_3 and T_1..T_3 in
// file formats and reports). A path's delay is the sum of its edge delays; a
// destination reads its incoming edges with no extra delay.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netalign/errors.hpp"
#include "netalign/galois.hpp"

namespace netalign {

using Rng = std::mt19937_64;

struct Edge {
    std::string id;
    int tail = 0;
    int head = 0;
    int delay = 1;
};

// Edge given by node names, as it appears in a network file.
struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    int delay = 1;
};

class DelayNetwork {
public:
    // Checks names, ids and delays; acyclicity and connectivity are checked
    // by validate() so that cyclic inputs can still be represented.
    DelayNetwork(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges,
                 const std::array<std::string, 3>& sources, const std::array<std::string, 3>& destinations);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    int source(int i) const { return sources_[static_cast<std::size_t>(i)]; }
    int destination(int j) const { return destinations_[static_cast<std::size_t>(j)]; }
    // Index of the source living at `node`, or -1.
    int source_at(int node) const;

    const std::vector<int>& in_edges(int node) const { return in_[static_cast<std::size_t>(node)]; }
    const std::vector<int>& out_edges(int node) const { return out_[static_cast<std::size_t>(node)]; }

    std::optional<int> find_node(std::string_view name) const;

    // Nodes in topological order, or nullopt if the graph has a cycle.
    std::optional<std::vector<int>> topological_order() const;
    // Edges sorted by the topological position of their tails; throws
    // InvalidNetwork on a cycle.
    std::vector<int> edge_order() const;

private:
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::array<int, 3> sources_{};
    std::array<int, 3> destinations_{};
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
    std::unordered_map<std::string, int> index_;
};

struct Connectivity {
    std::array<std::array<bool, 3>, 3> reachable{};  // [i][j]: S_i reaches T_j

    bool full() const;
    // Off-diagonal pairs without a path (the unsupported zero min-cut regime).
    std::vector<std::pair<int, int>> missing_pairs() const;
};

// Throws InvalidNetwork on a cycle or when some S_i cannot reach T_i.
Connectivity validate(const DelayNetwork& net);

// Global path-delay normalisation: `shift` is the least total delay over all
// paths of all connected pairs and `spread` (d_max) is the largest such delay
// minus `shift`.
struct DelaySpan {
    int shift = 0;
    int spread = 0;
};

DelaySpan delay_extrema(const DelayNetwork& net);

// Local encoding kernels for one block.
struct LekAssignment {
    // Per edge: alpha_{i,e} when tail(e) is S_i, zero otherwise.
    std::vector<Element> source;
    // relay[e][q] is beta_{e',e} for e' = in_edges(tail(e))[q].
    std::vector<std::vector<Element>> relay;
    // sink[j][q] is epsilon_{e',j} for e' = in_edges(T_j)[q].
    std::array<std::vector<Element>, 3> sink;
};

// Every kernel drawn uniformly from the whole field, zero included.
LekAssignment random_leks(const DelayNetwork& net, const Field& field, Rng& rng);
// Every kernel equal to `value` (source kernels only on edges leaving a source).
LekAssignment constant_leks(const DelayNetwork& net, const Element& value);

struct LekSchedule {
    std::vector<LekAssignment> blocks;  // 2n + 1 blocks
    int n = 0;
    int k = 1;
    int cp = 0;  // cyclic prefix length (d_max)

    int block_span() const { return k + cp; }
};

LekSchedule random_schedule(const DelayNetwork& net, const Field& field, int n, int k, int cp, Rng& rng);

// M_ij(D) = sum_d coeffs[d] D^d, where coeffs[d] collects the gains of the
// S_i -> T_j paths of total delay shift + d.
struct TransferPoly {
    int source = 0;
    int dest = 0;
    int shift = 0;
    std::vector<Element> coeffs;  // spread + 1 entries

    bool is_zero() const;
};

using TransferMatrix = std::array<std::array<TransferPoly, 3>, 3>;

// One topological dynamic-programming pass per source; no path enumeration.
TransferPoly transfer_poly(const DelayNetwork& net, const LekAssignment& leks, const DelaySpan& span, int i, int j);
TransferMatrix transfer_matrix(const DelayNetwork& net, const LekAssignment& leks, const DelaySpan& span);

Element eval_transfer(const TransferPoly& tp, const Element& x);

struct PathRecord {
    std::vector<int> edges;
    Element gain;
    int delay = 0;
};

inline constexpr std::size_t kDefaultPathLimit = 100000;

// Depth-first enumeration of every S_i -> T_j path; throws Error beyond
// `limit` paths.
std::vector<PathRecord> enumerate_paths(const DelayNetwork& net, const LekAssignment& leks, int i, int j,
                                        std::size_t limit = kDefaultPathLimit);

// Brute-force reference for transfer_poly: sums path gains by delay, with the
// global normalisation recomputed from the enumerated paths of every pair.
TransferPoly transfer_oracle(const DelayNetwork& net, const LekAssignment& leks, int i, int j,
                             std::size_t limit = kDefaultPathLimit);

}  // namespace netalign
