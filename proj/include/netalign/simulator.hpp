#pragma once

// Time-domain reference simulation of a delayed network under a block
// schedule of LEKs, and the full precode -> DFT -> cyclic prefix -> network
// -> strip -> inverse DFT -> decode pipeline built on it.
//
// LEK switching. Block l (0-based) nominally covers source times
// [-cp + l (k+cp), -cp + (l+1)(k+cp)). A node switches blocks when the
// earliest wavefront from any source reaches it: node v applies block l to
// symbols it forms at time tau when tau - offset(v) falls in block l's range,
// offset(v) being the least path delay from any source to v. Every hop of
// every contribution to a received payload window then uses the same block,
// so the prefix region absorbs all switching transients.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "netalign/alignment.hpp"
#include "netalign/galois.hpp"
#include "netalign/netgraph.hpp"

namespace netalign {

struct SourceTimeline {
    int start = 0;  // time of symbols[i][0]
    std::array<std::vector<Element>, 3> symbols;
};

struct TimeTrace {
    int start = 0;
    int end = 0;  // exclusive
    // edge[e][t - start]: symbol arriving at head(e) at time t.
    std::vector<std::vector<Element>> edge;
    // output[j][t - start]: Y_j at time t.
    std::array<std::vector<Element>, 3> output;

    Element edge_at(int e, int t) const;
    Element output_at(int j, int t) const;
};

// Least path delay from any source to each node (0 for sources and for nodes
// no source reaches).
std::vector<int> switch_offsets(const DelayNetwork& net);

// Simulates source times [in.start, end). Inputs outside the timeline and
// all edge states before in.start are zero.
TimeTrace run_time_domain(const DelayNetwork& net, const LekSchedule& sched, const SourceTimeline& in, int end);

// Drives the schedule's 2n+1 blocks. tone_blocks[i] is (2n+1) x k with row l
// holding S_i's pre-DFT block l in tone order. Each block is multiplied by F,
// prefixed, and sent back to back from t = -cp; each received block is
// stripped and multiplied by F^-1. Returns the (2n+1) x k received tone
// blocks per destination.
std::array<Matrix, 3> transmit_blocks(const DelayNetwork& net, const LekSchedule& sched, const DelaySpan& span,
                                      const RootOfUnity& root, const std::array<Matrix, 3>& tone_blocks);

struct PipelineConfig {
    int n = 2;
    int k = 5;
    unsigned m = 16;
    std::uint64_t seed = 0;
    // Tones to decode; empty means 1..k-1.
    std::vector<int> tones;
    int max_schedule_attempts = 32;

    std::vector<int> decode_tones() const;
};

struct SimResult {
    FieldPtr field;
    PipelineConfig config;
    DelaySpan span;
    LekSchedule schedule;
    int schedule_attempts = 0;

    // Indexed by tone p = 0..k-1, then source / destination.
    std::vector<std::array<Vector, 3>> transmitted;
    std::vector<std::array<Vector, 3>> received;
    std::vector<std::array<std::optional<Vector>, 3>> recovered;
    std::vector<std::array<Eigen::Index, 3>> decode_rank;
    std::vector<bool> decoded_tone;  // tone is in the decode set

    bool success(int p, int j) const;
    // Decoded independent symbols per pair.
    std::array<long long, 3> decoded_symbols() const;
};

// Throws InvalidNetwork / ZeroMinCut on bad networks, std::invalid_argument
// on bad parameters, DegenerateLeks when no usable schedule is found, and
// std::logic_error if received tones ever disagree with the per-tone channel
// model (a framing bug, never a property of the network).
SimResult pbna_pipeline(const DelayNetwork& net, const PipelineConfig& cfg);

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct Throughput {
    // Symbols per k(2n+1) payload channel uses (prefix excluded).
    std::array<Rational, 3> payload;
    // Symbols per (2n+1)(k+cp) time slots.
    std::array<Rational, 3> wall_clock;
};

Throughput throughput(const SimResult& sr);

}  // namespace netalign
