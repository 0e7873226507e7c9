#pragma once

// Shared fixtures: hand-built networks with known ratio structure.

#include <array>
#include <cstdint>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "netalign/generator.hpp"
#include "netalign/netgraph.hpp"

namespace fixtures {

using netalign::DelayNetwork;
using netalign::EdgeSpec;

inline const std::array<std::string, 3> kSources{"s1", "s2", "s3"};
inline const std::array<std::string, 3> kDests{"t1", "t2", "t3"};

inline DelayNetwork make(const std::vector<std::string>& relays,
                         const std::vector<std::tuple<std::string, std::string, int>>& arcs) {
    std::vector<std::string> nodes(kSources.begin(), kSources.end());
    nodes.insert(nodes.end(), relays.begin(), relays.end());
    nodes.insert(nodes.end(), kDests.begin(), kDests.end());
    std::vector<EdgeSpec> edges;
    for (const auto& [tail, head, delay] : arcs) edges.push_back({"e" + std::to_string(edges.size() + 1), tail, head, delay});
    return DelayNetwork(nodes, edges, kSources, kDests);
}

// S_i -> T_i only.
inline DelayNetwork diagonal(std::array<int, 3> delays = {1, 2, 3}) {
    return make({}, {{"s1", "t1", delays[0]}, {"s2", "t2", delays[1]}, {"s3", "t3", delays[2]}});
}

// Every source feeds u -> v, which fans out to every destination:
// M_ij = a_i c e_j, so eta == 1 and every b_i == 1.
inline DelayNetwork bottleneck_all() {
    std::vector<std::tuple<std::string, std::string, int>> arcs;
    for (const auto& s : kSources) arcs.emplace_back(s, "u", 1);
    arcs.emplace_back("u", "v", 1);
    for (const auto& t : kDests) arcs.emplace_back("v", t, 1);
    return make({"u", "v"}, arcs);
}

// bottleneck_all plus S_i -> T_i shortcuts: eta == 1, each b_i varies.
inline DelayNetwork bottleneck_direct() {
    std::vector<std::tuple<std::string, std::string, int>> arcs;
    for (const auto& s : kSources) arcs.emplace_back(s, "u", 1);
    arcs.emplace_back("u", "v", 1);
    for (const auto& t : kDests) arcs.emplace_back("v", t, 1);
    for (int i = 0; i < 3; ++i) arcs.emplace_back(kSources[static_cast<std::size_t>(i)], kDests[static_cast<std::size_t>(i)], 1);
    return make({"u", "v"}, arcs);
}

// T1 and T3 hang off one bottleneck, T2 hears every source directly:
// M_i1 and M_i3 share all path gains up to the last hop, so b1 == 1 while
// eta = a1 g3 / (a3 g1) varies.
inline DelayNetwork bottleneck_b1() {
    std::vector<std::tuple<std::string, std::string, int>> arcs;
    for (const auto& s : kSources) arcs.emplace_back(s, "u", 1);
    arcs.emplace_back("u", "v", 1);
    arcs.emplace_back("v", "t1", 1);
    arcs.emplace_back("v", "t3", 1);
    for (const auto& s : kSources) arcs.emplace_back(s, "t2", 1);
    return make({"u", "v"}, arcs);
}

// x -> x2 mixes S1 and S3 for T1 and T2, y -> y2 mixes S1 and S2 for T1 and
// T3: M11 = M31 M12 / M32 + M21 M13 / M23, i.e. b1 == eta / (eta + 1).
inline DelayNetwork split_relays() {
    return make({"x", "x2", "y", "y2"},
                {{"s1", "x", 1}, {"s3", "x", 2}, {"x", "x2", 1}, {"x2", "t1", 1}, {"x2", "t2", 1}, {"s1", "y", 2},
                 {"s2", "y", 1}, {"y", "y2", 1}, {"y2", "t1", 1}, {"y2", "t3", 1}, {"s2", "t2", 1}, {"s3", "t3", 1}});
}

// S1 and S3 reach T1 and T2 only through u -> v: M31 M12 == M11 M32, so
// b1 == eta.
inline DelayNetwork shared_pair() {
    return make({"u", "v"}, {{"s1", "u", 1}, {"s3", "u", 1}, {"u", "v", 1}, {"v", "t1", 1}, {"v", "t2", 1},
                             {"s2", "t1", 2}, {"s2", "t2", 1}, {"s2", "t3", 1}, {"s1", "t3", 1}, {"s3", "t3", 2}});
}

// Generated network with every pair connected and d_max <= max_spread.
inline DelayNetwork generated(std::uint64_t seed, int relays = 3, int edges = 14, int max_delay = 2,
                              int max_spread = 4) {
    for (std::uint64_t s = seed;; s += 1000003) {
        netalign::GenParams g;
        g.relays = relays;
        g.edges = edges;
        g.max_delay = max_delay;
        g.seed = s;
        DelayNetwork net = netalign::generate_network(g);
        if (netalign::delay_extrema(net).spread <= max_spread) return net;
    }
}

}  // namespace fixtures
