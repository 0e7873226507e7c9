#include "netalign/simulator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "netalign/transform.hpp"

namespace netalign {

namespace {

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace

Element TimeTrace::edge_at(int e, int t) const {
    if (t < start || t >= end) return Element(0);
    return edge[static_cast<std::size_t>(e)][static_cast<std::size_t>(t - start)];
}

Element TimeTrace::output_at(int j, int t) const {
    if (t < start || t >= end) return Element(0);
    return output[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - start)];
}

std::vector<int> switch_offsets(const DelayNetwork& net) {
    const auto order = net.edge_order();
    constexpr int inf = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(net.node_count()), inf);
    for (int i = 0; i < 3; ++i) dist[static_cast<std::size_t>(net.source(i))] = 0;
    for (int e : order) {
        const Edge& edge = net.edges()[static_cast<std::size_t>(e)];
        const int t = dist[static_cast<std::size_t>(edge.tail)];
        if (t == inf) continue;
        auto& h = dist[static_cast<std::size_t>(edge.head)];
        h = std::min(h, t + edge.delay);
    }
    for (auto& d : dist)
        if (d == inf) d = 0;
    return dist;
}

TimeTrace run_time_domain(const DelayNetwork& net, const LekSchedule& sched, const SourceTimeline& in, int end) {
    if (sched.blocks.empty() || static_cast<int>(sched.blocks.size()) != 2 * sched.n + 1)
        throw std::invalid_argument("schedule must hold 2n+1 LEK blocks");
    if (end < in.start) throw std::invalid_argument("simulation ends before it starts");
    if (sched.block_span() < 1) throw std::invalid_argument("block span must be positive");

    const auto offsets = switch_offsets(net);
    const int first_block = -sched.cp;
    const int last = static_cast<int>(sched.blocks.size()) - 1;
    auto leks_at = [&](int tau, int node) -> const LekAssignment& {
        const int l = floor_div(tau - offsets[static_cast<std::size_t>(node)] - first_block, sched.block_span());
        return sched.blocks[static_cast<std::size_t>(std::clamp(l, 0, last))];
    };

    const auto len = static_cast<std::size_t>(end - in.start);
    const auto edge_count = net.edges().size();
    // formed[e][t - start]: symbol put on e at its tail at time t.
    std::vector<std::vector<Element>> formed(edge_count, std::vector<Element>(len, Element(0)));
    auto formed_at = [&](int e, int t) {
        if (t < in.start) return Element(0);
        return formed[static_cast<std::size_t>(e)][static_cast<std::size_t>(t - in.start)];
    };
    auto input_at = [&](int i, int t) {
        const auto& x = in.symbols[static_cast<std::size_t>(i)];
        const int idx = t - in.start;
        if (idx < 0 || idx >= static_cast<int>(x.size())) return Element(0);
        return x[static_cast<std::size_t>(idx)];
    };

    TimeTrace trace;
    trace.start = in.start;
    trace.end = end;
    for (auto& y : trace.output) y.assign(len, Element(0));

    for (int t = in.start; t < end; ++t) {
        const auto slot = static_cast<std::size_t>(t - in.start);
        for (std::size_t e = 0; e < edge_count; ++e) {
            const Edge& edge = net.edges()[e];
            const LekAssignment& leks = leks_at(t, edge.tail);
            Element v(0);
            if (const int i = net.source_at(edge.tail); i >= 0) v += leks.source[e] * input_at(i, t);
            const auto& ins = net.in_edges(edge.tail);
            for (std::size_t q = 0; q < ins.size(); ++q) {
                const Edge& up = net.edges()[static_cast<std::size_t>(ins[q])];
                v += leks.relay[e][q] * formed_at(ins[q], t - up.delay);
            }
            formed[e][slot] = v;
        }
        for (int j = 0; j < 3; ++j) {
            const int node = net.destination(j);
            const LekAssignment& leks = leks_at(t, node);
            const auto& ins = net.in_edges(node);
            Element y(0);
            for (std::size_t q = 0; q < ins.size(); ++q) {
                const Edge& up = net.edges()[static_cast<std::size_t>(ins[q])];
                y += leks.sink[static_cast<std::size_t>(j)][q] * formed_at(ins[q], t - up.delay);
            }
            trace.output[static_cast<std::size_t>(j)][slot] = y;
        }
    }

    trace.edge.assign(edge_count, std::vector<Element>(len, Element(0)));
    for (std::size_t e = 0; e < edge_count; ++e)
        for (int t = in.start; t < end; ++t)
            trace.edge[e][static_cast<std::size_t>(t - in.start)] =
                formed_at(static_cast<int>(e), t - net.edges()[e].delay);
    return trace;
}

std::array<Matrix, 3> transmit_blocks(const DelayNetwork& net, const LekSchedule& sched, const DelaySpan& span,
                                      const RootOfUnity& root, const std::array<Matrix, 3>& tone_blocks) {
    const int k = sched.k, cp = sched.cp;
    const int blocks = static_cast<int>(sched.blocks.size());
    if (static_cast<int>(root.k) != k) throw std::invalid_argument("root of unity order differs from block length");
    if (cp != span.spread) throw std::invalid_argument("cyclic prefix must equal d_max");
    for (const auto& tb : tone_blocks)
        if (tb.rows() != blocks || tb.cols() != k)
            throw std::invalid_argument("tone blocks must be (2n+1) x k");

    const auto [f, f_inv] = dft_matrix(root);

    SourceTimeline in;
    in.start = -cp;
    for (std::size_t i = 0; i < 3; ++i) {
        auto& stream = in.symbols[i];
        for (int l = 0; l < blocks; ++l) {
            const Vector time_desc = f * tone_blocks[i].row(l).transpose();
            const std::vector<Element> ascending(time_desc.reverse().begin(), time_desc.reverse().end());
            const auto frame = add_cp(ascending, cp);
            stream.insert(stream.end(), frame.begin(), frame.end());
        }
    }

    const int end = -cp + blocks * sched.block_span() + span.shift;
    const TimeTrace trace = run_time_domain(net, sched, in, end);

    std::array<Matrix, 3> out;
    for (int j = 0; j < 3; ++j) {
        Matrix& rx = out[static_cast<std::size_t>(j)];
        rx.resize(blocks, k);
        for (int l = 0; l < blocks; ++l) {
            const int frame_start = -cp + l * sched.block_span() + span.shift;
            std::vector<Element> frame;
            for (int t = frame_start; t < frame_start + k + cp; ++t) frame.push_back(trace.output_at(j, t));
            const auto payload = strip_cp(frame, k, cp);
            Vector time_desc(k);
            for (int r = 0; r < k; ++r) time_desc(r) = payload[static_cast<std::size_t>(k - 1 - r)];
            rx.row(l) = (f_inv * time_desc).transpose();
        }
    }
    return out;
}

std::vector<int> PipelineConfig::decode_tones() const {
    if (tones.empty()) {
        std::vector<int> all(static_cast<std::size_t>(std::max(0, k - 1)));
        std::iota(all.begin(), all.end(), 1);
        return all;
    }
    for (int p : tones)
        if (p < 0 || p >= k) throw std::invalid_argument("tone " + std::to_string(p) + " outside [0, k)");
    return tones;
}

bool SimResult::success(int p, int j) const {
    return recovered[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)].has_value();
}

std::array<long long, 3> SimResult::decoded_symbols() const {
    std::array<long long, 3> out{};
    for (std::size_t p = 0; p < recovered.size(); ++p)
        for (int j = 0; j < 3; ++j)
            if (success(static_cast<int>(p), j)) out[static_cast<std::size_t>(j)] += PrecodeSet::streams(j, config.n);
    return out;
}

SimResult pbna_pipeline(const DelayNetwork& net, const PipelineConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("alignment parameter n must be at least 1");
    const Connectivity conn = validate(net);
    if (!conn.full()) throw ZeroMinCut(conn.missing_pairs());

    SimResult sr;
    sr.config = cfg;
    sr.field = make_field(cfg.m);
    const Field& field = *sr.field;
    const RootOfUnity root = root_of_unity(field, static_cast<unsigned>(cfg.k));
    sr.span = delay_extrema(net);
    if (cfg.k < sr.span.spread + 1)
        throw std::invalid_argument("block length " + std::to_string(cfg.k) + " must be at least d_max + 1 = " +
                                    std::to_string(sr.span.spread + 1));
    const auto tones = cfg.decode_tones();
    const auto k = static_cast<std::size_t>(cfg.k);

    Rng rng(cfg.seed);
    std::vector<ToneChannel> channels;
    for (sr.schedule_attempts = 1;; ++sr.schedule_attempts) {
        sr.schedule = random_schedule(net, field, cfg.n, cfg.k, sr.span.spread, rng);
        const auto transfers = block_transfers(net, sr.schedule, sr.span);
        try {
            channels.clear();
            for (int p = 0; p < cfg.k; ++p) channels.push_back(tone_channel(transfers, p, root));
            break;
        } catch (const DegenerateLeks& e) {
            if (sr.schedule_attempts >= cfg.max_schedule_attempts)
                throw DegenerateLeks(std::string("no usable LEK schedule after ") +
                                     std::to_string(sr.schedule_attempts) + " draws: " + e.what());
        }
    }

    std::vector<PrecodeSet> precoders;
    for (const auto& tc : channels) precoders.push_back(build_precoders(tc, cfg.n));

    const Eigen::Index blocks = 2 * cfg.n + 1;
    std::array<Matrix, 3> tone_blocks;
    for (auto& tb : tone_blocks) tb.resize(blocks, cfg.k);
    sr.transmitted.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
        for (int i = 0; i < 3; ++i) {
            Vector x = random_vector(field, PrecodeSet::streams(i, cfg.n), rng);
            tone_blocks[static_cast<std::size_t>(i)].col(static_cast<Eigen::Index>(p)) = precoders[p].v(i) * x;
            sr.transmitted[p][static_cast<std::size_t>(i)] = std::move(x);
        }
    }

    const auto rx = transmit_blocks(net, sr.schedule, sr.span, root, tone_blocks);

    sr.received.resize(k);
    sr.recovered.resize(k);
    sr.decode_rank.resize(k);
    sr.decoded_tone.assign(k, false);
    for (std::size_t p = 0; p < k; ++p) {
        for (int j = 0; j < 3; ++j) {
            Vector expected = zeros(blocks);
            for (int i = 0; i < 3; ++i)
                expected += received_block(channels[p], precoders[p], i, j) * sr.transmitted[p][static_cast<std::size_t>(i)];
            Vector got = rx[static_cast<std::size_t>(j)].col(static_cast<Eigen::Index>(p));
            if (!equal(got, expected))
                throw std::logic_error("received tone " + std::to_string(p) + " at T" + std::to_string(j + 1) +
                                       " disagrees with the per-tone channel model");
            sr.received[p][static_cast<std::size_t>(j)] = std::move(got);
        }
    }

    for (int p : tones) {
        const auto up = static_cast<std::size_t>(p);
        sr.decoded_tone[up] = true;
        ToneDecode d = decode(channels[up], precoders[up], sr.received[up]);
        for (int j = 0; j < 3; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (d.success(j) && !equal(*d.recovered[uj], sr.transmitted[up][uj]))
                throw std::logic_error("full-rank decode returned wrong symbols at tone " + std::to_string(p));
        }
        sr.recovered[up] = std::move(d.recovered);
        sr.decode_rank[up] = d.rank;
    }
    return sr;
}

Rational Rational::make(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    const long long g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Throughput throughput(const SimResult& sr) {
    const long long blocks = 2LL * sr.config.n + 1;
    const auto symbols = sr.decoded_symbols();
    Throughput out;
    for (std::size_t j = 0; j < 3; ++j) {
        out.payload[j] = Rational::make(symbols[j], blocks * sr.config.k);
        out.wall_clock[j] = Rational::make(symbols[j], blocks * (sr.config.k + sr.span.spread));
    }
    return out;
}

}  // namespace netalign
