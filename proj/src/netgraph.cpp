#include "netalign/netgraph.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace netalign {

ZeroMinCut::ZeroMinCut(std::vector<std::pair<int, int>> pairs)
    : Error([&] {
          std::ostringstream os;
          os << "zero min-cut between";
          for (auto [i, j] : pairs) os << " (S" << i + 1 << ", T" << j + 1 << ")";
          return os.str();
      }()),
      pairs_(std::move(pairs)) {}

DelayNetwork::DelayNetwork(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges,
                           const std::array<std::string, 3>& sources,
                           const std::array<std::string, 3>& destinations)
    : nodes_(std::move(nodes)) {
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        if (!index_.emplace(nodes_[v], static_cast<int>(v)).second)
            throw InvalidNetwork("duplicate node '" + nodes_[v] + "'");
    }
    auto lookup = [&](const std::string& name, const std::string& what) {
        auto it = index_.find(name);
        if (it == index_.end()) throw InvalidNetwork(what + " refers to unknown node '" + name + "'");
        return it->second;
    };

    in_.resize(nodes_.size());
    out_.resize(nodes_.size());
    std::set<std::string> ids;
    for (const auto& spec : edges) {
        if (!ids.insert(spec.id).second) throw InvalidNetwork("duplicate edge id '" + spec.id + "'");
        if (spec.delay < 1)
            throw InvalidNetwork("edge '" + spec.id + "' has delay " + std::to_string(spec.delay) +
                                 "; delays must be positive");
        Edge e{spec.id, lookup(spec.tail, "edge '" + spec.id + "'"), lookup(spec.head, "edge '" + spec.id + "'"),
               spec.delay};
        const int idx = static_cast<int>(edges_.size());
        out_[static_cast<std::size_t>(e.tail)].push_back(idx);
        in_[static_cast<std::size_t>(e.head)].push_back(idx);
        edges_.push_back(std::move(e));
    }

    std::set<int> terminals;
    for (int i = 0; i < 3; ++i) {
        sources_[static_cast<std::size_t>(i)] = lookup(sources[static_cast<std::size_t>(i)], "source");
        destinations_[static_cast<std::size_t>(i)] =
            lookup(destinations[static_cast<std::size_t>(i)], "destination");
        terminals.insert(sources_[static_cast<std::size_t>(i)]);
        terminals.insert(destinations_[static_cast<std::size_t>(i)]);
    }
    if (terminals.size() != 6) throw InvalidNetwork("sources and destinations must be six distinct nodes");
}

int DelayNetwork::source_at(int node) const {
    for (int i = 0; i < 3; ++i)
        if (sources_[static_cast<std::size_t>(i)] == node) return i;
    return -1;
}

std::optional<int> DelayNetwork::find_node(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::vector<int>> DelayNetwork::topological_order() const {
    std::vector<int> indegree(nodes_.size(), 0);
    for (const auto& e : edges_) ++indegree[static_cast<std::size_t>(e.head)];
    std::vector<int> order;
    order.reserve(nodes_.size());
    for (int v = 0; v < node_count(); ++v)
        if (indegree[static_cast<std::size_t>(v)] == 0) order.push_back(v);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        for (int e : out_edges(order[pos])) {
            const int h = edges_[static_cast<std::size_t>(e)].head;
            if (--indegree[static_cast<std::size_t>(h)] == 0) order.push_back(h);
        }
    }
    if (order.size() != nodes_.size()) return std::nullopt;
    return order;
}

std::vector<int> DelayNetwork::edge_order() const {
    auto order = topological_order();
    if (!order) throw InvalidNetwork("network has a directed cycle");
    std::vector<int> edges;
    edges.reserve(edges_.size());
    for (int v : *order)
        for (int e : out_edges(v)) edges.push_back(e);
    return edges;
}

bool Connectivity::full() const {
    for (const auto& row : reachable)
        for (bool b : row)
            if (!b) return false;
    return true;
}

std::vector<std::pair<int, int>> Connectivity::missing_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!reachable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) out.emplace_back(i, j);
    return out;
}

namespace {

// Reachability from S_i over the topological edge order.
std::vector<bool> reach_from(const DelayNetwork& net, const std::vector<int>& order, int i) {
    std::vector<bool> seen(static_cast<std::size_t>(net.node_count()), false);
    seen[static_cast<std::size_t>(net.source(i))] = true;
    for (int e : order) {
        const Edge& edge = net.edges()[static_cast<std::size_t>(e)];
        if (seen[static_cast<std::size_t>(edge.tail)]) seen[static_cast<std::size_t>(edge.head)] = true;
    }
    return seen;
}

constexpr int kUnreached = std::numeric_limits<int>::min();

}  // namespace

Connectivity validate(const DelayNetwork& net) {
    const auto order = net.edge_order();
    Connectivity c;
    for (int i = 0; i < 3; ++i) {
        const auto seen = reach_from(net, order, i);
        for (int j = 0; j < 3; ++j)
            c.reachable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                seen[static_cast<std::size_t>(net.destination(j))];
    }
    for (int i = 0; i < 3; ++i) {
        if (!c.reachable[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
            throw InvalidNetwork("no path from S" + std::to_string(i + 1) + " to T" + std::to_string(i + 1));
    }
    return c;
}

DelaySpan delay_extrema(const DelayNetwork& net) {
    const auto order = net.edge_order();
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (int i = 0; i < 3; ++i) {
        std::vector<int> shortest(static_cast<std::size_t>(net.node_count()), std::numeric_limits<int>::max());
        std::vector<int> longest(static_cast<std::size_t>(net.node_count()), kUnreached);
        shortest[static_cast<std::size_t>(net.source(i))] = 0;
        longest[static_cast<std::size_t>(net.source(i))] = 0;
        for (int e : order) {
            const Edge& edge = net.edges()[static_cast<std::size_t>(e)];
            const auto t = static_cast<std::size_t>(edge.tail);
            const auto h = static_cast<std::size_t>(edge.head);
            if (longest[t] == kUnreached) continue;
            shortest[h] = std::min(shortest[h], shortest[t] + edge.delay);
            longest[h] = std::max(longest[h], longest[t] + edge.delay);
        }
        for (int j = 0; j < 3; ++j) {
            const auto d = static_cast<std::size_t>(net.destination(j));
            if (longest[d] == kUnreached) continue;
            lo = std::min(lo, shortest[d]);
            hi = std::max(hi, longest[d]);
        }
    }
    if (hi == std::numeric_limits<int>::min()) return {};
    return {lo, hi - lo};
}

LekAssignment random_leks(const DelayNetwork& net, const Field& field, Rng& rng) {
    LekAssignment leks;
    leks.source.reserve(net.edges().size());
    leks.relay.reserve(net.edges().size());
    for (const auto& e : net.edges()) {
        leks.source.push_back(net.source_at(e.tail) >= 0 ? field.random(rng) : field.zero());
        std::vector<Element> betas;
        for (std::size_t q = 0; q < net.in_edges(e.tail).size(); ++q) betas.push_back(field.random(rng));
        leks.relay.push_back(std::move(betas));
    }
    for (int j = 0; j < 3; ++j)
        for (std::size_t q = 0; q < net.in_edges(net.destination(j)).size(); ++q)
            leks.sink[static_cast<std::size_t>(j)].push_back(field.random(rng));
    return leks;
}

LekAssignment constant_leks(const DelayNetwork& net, const Element& value) {
    LekAssignment leks;
    for (const auto& e : net.edges()) {
        leks.source.push_back(net.source_at(e.tail) >= 0 ? value : Element(0));
        leks.relay.emplace_back(net.in_edges(e.tail).size(), value);
    }
    for (int j = 0; j < 3; ++j)
        leks.sink[static_cast<std::size_t>(j)].assign(net.in_edges(net.destination(j)).size(), value);
    return leks;
}

LekSchedule random_schedule(const DelayNetwork& net, const Field& field, int n, int k, int cp, Rng& rng) {
    if (n < 0) throw std::invalid_argument("alignment parameter n must be non-negative");
    LekSchedule s;
    s.n = n;
    s.k = k;
    s.cp = cp;
    for (int l = 0; l < 2 * n + 1; ++l) s.blocks.push_back(random_leks(net, field, rng));
    return s;
}

bool TransferPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Element& c) { return c.is_zero(); });
}

namespace {

// Per-edge polynomials (indexed by absolute path delay) of the symbol
// arriving at head(e) from S_i, then read out at every destination.
std::array<TransferPoly, 3> transfers_from(const DelayNetwork& net, const std::vector<int>& order,
                                           const LekAssignment& leks, const DelaySpan& span, int i) {
    const auto edge_count = net.edges().size();
    int horizon = 0;
    {
        std::vector<int> longest(static_cast<std::size_t>(net.node_count()), kUnreached);
        longest[static_cast<std::size_t>(net.source(i))] = 0;
        for (int e : order) {
            const Edge& edge = net.edges()[static_cast<std::size_t>(e)];
            if (longest[static_cast<std::size_t>(edge.tail)] == kUnreached) continue;
            auto& h = longest[static_cast<std::size_t>(edge.head)];
            h = std::max(h, longest[static_cast<std::size_t>(edge.tail)] + edge.delay);
            horizon = std::max(horizon, h);
        }
    }
    const auto len = static_cast<std::size_t>(horizon) + 1;

    std::vector<std::vector<Element>> arriving(edge_count, std::vector<Element>(len, Element(0)));
    for (int e : order) {
        const auto ue = static_cast<std::size_t>(e);
        const Edge& edge = net.edges()[ue];
        auto& poly = arriving[ue];
        const auto d = static_cast<std::size_t>(edge.delay);
        if (edge.tail == net.source(i)) poly[d] += leks.source[ue];
        const auto& ins = net.in_edges(edge.tail);
        for (std::size_t q = 0; q < ins.size(); ++q) {
            const Element beta = leks.relay[ue][q];
            if (beta.is_zero()) continue;
            const auto& upstream = arriving[static_cast<std::size_t>(ins[q])];
            for (std::size_t t = 0; t + d < len; ++t)
                if (!upstream[t].is_zero()) poly[t + d] += beta * upstream[t];
        }
    }

    std::array<TransferPoly, 3> out;
    for (int j = 0; j < 3; ++j) {
        TransferPoly& tp = out[static_cast<std::size_t>(j)];
        tp.source = i;
        tp.dest = j;
        tp.shift = span.shift;
        tp.coeffs.assign(static_cast<std::size_t>(span.spread) + 1, Element(0));
        const auto& ins = net.in_edges(net.destination(j));
        for (std::size_t q = 0; q < ins.size(); ++q) {
            const Element eps = leks.sink[static_cast<std::size_t>(j)][q];
            const auto& poly = arriving[static_cast<std::size_t>(ins[q])];
            for (std::size_t t = 0; t < len; ++t) {
                if (poly[t].is_zero()) continue;
                const long d = static_cast<long>(t) - span.shift;
                if (d < 0 || d > span.spread)
                    throw std::logic_error("path delay outside the normalised delay window");
                tp.coeffs[static_cast<std::size_t>(d)] += eps * poly[t];
            }
        }
    }
    return out;
}

}  // namespace

TransferPoly transfer_poly(const DelayNetwork& net, const LekAssignment& leks, const DelaySpan& span, int i, int j) {
    return transfers_from(net, net.edge_order(), leks, span, i)[static_cast<std::size_t>(j)];
}

TransferMatrix transfer_matrix(const DelayNetwork& net, const LekAssignment& leks, const DelaySpan& span) {
    const auto order = net.edge_order();
    TransferMatrix m;
    for (int i = 0; i < 3; ++i) m[static_cast<std::size_t>(i)] = transfers_from(net, order, leks, span, i);
    return m;
}

Element eval_transfer(const TransferPoly& tp, const Element& x) {
    Element acc(0);
    for (auto it = tp.coeffs.rbegin(); it != tp.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<PathRecord> enumerate_paths(const DelayNetwork& net, const LekAssignment& leks, int i, int j,
                                        std::size_t limit) {
    if (!net.topological_order()) throw InvalidNetwork("network has a directed cycle");
    const int target = net.destination(j);
    std::vector<PathRecord> paths;
    std::vector<int> stack;

    auto relay_gain = [&](int from, int to) {
        const auto& ins = net.in_edges(net.edges()[static_cast<std::size_t>(to)].tail);
        const auto pos = std::find(ins.begin(), ins.end(), from) - ins.begin();
        return leks.relay[static_cast<std::size_t>(to)][static_cast<std::size_t>(pos)];
    };
    auto sink_gain = [&](int last) {
        const auto& ins = net.in_edges(target);
        const auto pos = std::find(ins.begin(), ins.end(), last) - ins.begin();
        return leks.sink[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)];
    };

    auto visit = [&](auto&& self, int node) -> void {
        if (node == target) {
            PathRecord rec;
            rec.edges = stack;
            rec.gain = leks.source[static_cast<std::size_t>(stack.front())];
            for (std::size_t q = 1; q < stack.size(); ++q) rec.gain *= relay_gain(stack[q - 1], stack[q]);
            rec.gain *= sink_gain(stack.back());
            for (int e : stack) rec.delay += net.edges()[static_cast<std::size_t>(e)].delay;
            paths.push_back(std::move(rec));
            if (paths.size() > limit)
                throw Error("path enumeration exceeded " + std::to_string(limit) + " paths");
        }
        for (int e : net.out_edges(node)) {
            stack.push_back(e);
            self(self, net.edges()[static_cast<std::size_t>(e)].head);
            stack.pop_back();
        }
    };
    visit(visit, net.source(i));
    return paths;
}

TransferPoly transfer_oracle(const DelayNetwork& net, const LekAssignment& leks, int i, int j, std::size_t limit) {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    std::vector<PathRecord> mine;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            auto paths = enumerate_paths(net, leks, a, b, limit);
            for (const auto& p : paths) {
                lo = std::min(lo, p.delay);
                hi = std::max(hi, p.delay);
            }
            if (a == i && b == j) mine = std::move(paths);
        }
    }
    TransferPoly tp;
    tp.source = i;
    tp.dest = j;
    tp.shift = hi < lo ? 0 : lo;
    tp.coeffs.assign(hi < lo ? 1 : static_cast<std::size_t>(hi - lo) + 1, Element(0));
    for (const auto& p : mine) tp.coeffs[static_cast<std::size_t>(p.delay - tp.shift)] += p.gain;
    return tp;
}

}  // namespace netalign
