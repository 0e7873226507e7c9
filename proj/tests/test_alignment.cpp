#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netalign/alignment.hpp"
#include "netalign/feasibility.hpp"
#include "netalign/linalg.hpp"
#include "support.hpp"

using namespace netalign;

namespace {

struct Instance {
    DelayNetwork net;
    FieldPtr field;
    RootOfUnity root;
    DelaySpan span;
    LekSchedule sched;
};

Instance instance(DelayNetwork net, int n, std::uint64_t seed, int k = 5) {
    Instance in{std::move(net), make_field(16), {}, {}, {}};
    in.root = root_of_unity(*in.field, static_cast<unsigned>(k));
    in.span = delay_extrema(in.net);
    Rng rng(seed);
    in.sched = random_schedule(in.net, *in.field, n, k, in.span.spread, rng);
    return in;
}

// Same LEKs in every block.
LekSchedule repeated(const Instance& in, int n, std::uint64_t seed) {
    Rng rng(seed);
    LekSchedule s = in.sched;
    s.n = n;
    s.blocks.assign(static_cast<std::size_t>(2 * n + 1), random_leks(in.net, *in.field, rng));
    return s;
}

}  // namespace

TEST_CASE("a single block gives 1 x 1 channels equal to scalar evaluations") {
    const Instance in = instance(fixtures::generated(1), 0, 3);
    for (int p = 0; p < 5; ++p) {
        const ToneChannel tc = tone_channel(in.net, in.sched, in.span, p, in.root);
        CHECK(tc.blocks() == 1);
        const TransferMatrix tm = transfer_matrix(in.net, in.sched.blocks[0], in.span);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(tc.m(i, j)(0) == eval_transfer(tm[i][j], pow(in.root.alpha, p)));
    }
}

TEST_CASE("tone channel entries recompute per block") {
    const Instance in = instance(fixtures::bottleneck_direct(), 2, 4);
    for (int p = 0; p < 5; ++p) {
        const ToneChannel tc = tone_channel(in.net, in.sched, in.span, p, in.root);
        for (int l = 0; l < 5; ++l) {
            const TransferMatrix tm = transfer_matrix(in.net, in.sched.blocks[static_cast<std::size_t>(l)], in.span);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(tc.m(i, j)(l) == eval_transfer(tm[i][j], pow(in.root.alpha, p)));
        }
    }
}

TEST_CASE("identical LEKs in every block give constant diagonals") {
    Instance in = instance(fixtures::generated(2), 2, 5);
    in.sched = repeated(in, 2, 6);
    const ToneChannel tc = tone_channel(in.net, in.sched, in.span, 1, in.root);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 1; l < 5; ++l) CHECK(tc.m(i, j)(l) == tc.m(i, j)(0));
}

TEST_CASE("vanishing transfer values are reported as degenerate LEKs") {
    const Instance in = instance(fixtures::bottleneck_b1(), 1, 1);
    LekSchedule zero = in.sched;
    zero.blocks[1] = constant_leks(in.net, in.field->zero());
    CHECK_THROWS_AS(tone_channel(in.net, zero, in.span, 1, in.root), DegenerateLeks);
}

TEST_CASE("precoder shapes") {
    const Instance in = instance(fixtures::generated(3), 1, 7);
    const PrecodeSet pc = build_precoders(tone_channel(in.net, in.sched, in.span, 2, in.root), 1);
    CHECK(pc.v1.rows() == 3);
    CHECK(pc.v1.cols() == 2);
    CHECK(pc.v2.cols() == 1);
    CHECK(pc.v3.cols() == 1);
    CHECK(equal(pc.v1.col(0), Vector::Constant(3, Element(1))));
    CHECK(equal(pc.v1.col(1), pc.u));
    CHECK_THROWS_AS(build_precoders(tone_channel(in.net, in.sched, in.span, 2, in.root), 2), std::invalid_argument);
}

TEST_CASE("U's diagonal is eta evaluated per block") {
    const Instance in = instance(fixtures::generated(4), 2, 8);
    for (int p = 0; p < 5; ++p) {
        const PrecodeSet pc = build_precoders(tone_channel(in.net, in.sched, in.span, p, in.root), 2);
        for (int l = 0; l < 5; ++l) {
            const RatioSample s =
                ratios_at(transfer_matrix(in.net, in.sched.blocks[static_cast<std::size_t>(l)], in.span), p, in.root);
            CHECK(pc.u(l) == s.eta.value());
        }
    }
}

TEST_CASE("aligned precoders satisfy the containments column by column") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (int n = 1; n <= 3; ++n) {
            const Instance in = instance(fixtures::generated(seed), n, 100 + seed);
            for (int p = 0; p < 5; ++p) {
                const ToneChannel tc = tone_channel(in.net, in.sched, in.span, p, in.root);
                const PrecodeSet pc = build_precoders(tc, n);
                const AlignmentVerdict v = check_alignment(tc, pc);
                CHECK(v.aligned());
                CHECK(v.columns_match[0]);
                CHECK(v.columns_match[1]);
                CHECK(v.columns_match[2]);
                CHECK(equal(received_block(tc, pc, 2, 0), received_block(tc, pc, 1, 0)));
            }
        }
    }
}

TEST_CASE("V1 rank follows the distinctness of U's diagonal") {
    Instance in = instance(fixtures::generated(5), 2, 9);
    const PrecodeSet distinct = build_precoders(tone_channel(in.net, in.sched, in.span, 1, in.root), 2);
    CHECK(rank(distinct.v1) == 3);

    in.sched = repeated(in, 2, 10);
    const ToneChannel tc = tone_channel(in.net, in.sched, in.span, 1, in.root);
    const PrecodeSet same = build_precoders(tc, 2);
    CHECK(rank(same.v1) == 1);
    const AlignmentVerdict v = check_alignment(tc, same);
    CHECK(v.aligned());
    CHECK_FALSE(v.ok());
    CHECK(v.decode_rank[0] < 5);
    CHECK(v.failure().find("rank") != std::string::npos);
}

TEST_CASE("decode inverts the channel on generic instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Instance in = instance(fixtures::generated(seed), 2, 200 + seed);
        Rng rng(seed);
        for (int p = 1; p < 5; ++p) {
            const ToneChannel tc = tone_channel(in.net, in.sched, in.span, p, in.root);
            const PrecodeSet pc = build_precoders(tc, 2);
            if (!check_alignment(tc, pc).ok()) continue;
            std::array<Vector, 3> x;
            for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = random_vector(*in.field, PrecodeSet::streams(i, 2), rng);
            std::array<Vector, 3> y;
            for (int j = 0; j < 3; ++j) {
                y[static_cast<std::size_t>(j)] = zeros(5);
                for (int i = 0; i < 3; ++i) y[static_cast<std::size_t>(j)] += received_block(tc, pc, i, j) * x[static_cast<std::size_t>(i)];
            }
            const ToneDecode d = decode(tc, pc, y);
            for (int j = 0; j < 3; ++j) {
                REQUIRE(d.success(j));
                CHECK(equal(*d.recovered[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]));
            }
        }
    }
}

TEST_CASE("T1 recovers its symbols without interference") {
    const Instance in = instance(fixtures::generated(7), 1, 11);
    const ToneChannel tc = tone_channel(in.net, in.sched, in.span, 2, in.root);
    const PrecodeSet pc = build_precoders(tc, 1);
    Rng rng(1);
    const Vector x1 = random_vector(*in.field, 2, rng);
    std::array<Vector, 3> y{received_block(tc, pc, 0, 0) * x1, zeros(3), zeros(3)};
    const ToneDecode d = decode(tc, pc, y);
    REQUIRE(d.success(0));
    CHECK(equal(*d.recovered[0], x1));
}

TEST_CASE("rank-deficient decoding returns no symbols") {
    Instance in = instance(fixtures::generated(8), 2, 12);
    in.sched = repeated(in, 2, 13);
    const ToneChannel tc = tone_channel(in.net, in.sched, in.span, 1, in.root);
    const PrecodeSet pc = build_precoders(tc, 2);
    std::array<Vector, 3> y{zeros(5), zeros(5), zeros(5)};
    const ToneDecode d = decode(tc, pc, y);
    for (int j = 0; j < 3; ++j) {
        CHECK_FALSE(d.success(j));
        CHECK(d.rank[static_cast<std::size_t>(j)] < 5);
    }
}

TEST_CASE("b1 == 1 makes T1's decode matrix singular on every tone") {
    const Instance in = instance(fixtures::bottleneck_b1(), 2, 14);
    for (int p = 0; p < 5; ++p) {
        const ToneChannel tc = tone_channel(in.net, in.sched, in.span, p, in.root);
        const AlignmentVerdict v = check_alignment(tc, build_precoders(tc, 2));
        CHECK(v.aligned());
        CHECK_FALSE(v.full_rank(0));
    }
}
