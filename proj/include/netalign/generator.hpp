#pragma once

#include <cstdint>

#include "netalign/netgraph.hpp"

namespace netalign {

// Random forward-ordered DAG: nodes s1..s3, r1..rR, t1..t3 in that order,
// each edge going from an earlier to a later node (never into a source,
// never out of a destination), no parallel edges.
struct GenParams {
    int relays = 8;
    int edges = 20;
    int min_delay = 1;
    int max_delay = 3;
    // Extra attempts after the first one.
    int retries = 1000;
    std::uint64_t seed = 0;
};

// Deterministic in `params`. Throws Error when no attempt connects all nine
// (S_i, T_j) pairs, std::invalid_argument on impossible parameters.
DelayNetwork generate_network(const GenParams& params);

}  // namespace netalign
