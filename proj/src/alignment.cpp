#include "netalign/alignment.hpp"

#include "netalign/linalg.hpp"

namespace netalign {

namespace {

Vector cwise_inverse(const Vector& v) {
    Vector out(v.size());
    for (Eigen::Index l = 0; l < v.size(); ++l) out(l) = inverse(v(l));
    return out;
}

Vector cwise(const Vector& a, const Vector& b) { return (a.array() * b.array()).matrix(); }

// [D^first W, ..., D^(last) W] scaled row-wise by `scale`.
Matrix power_columns(const Vector& d, const Vector& scale, int first, int last) {
    Matrix out(d.size(), std::max(0, last - first + 1));
    Vector col = scale;
    for (int q = 0; q < first; ++q) col = cwise(col, d);
    for (int q = first; q <= last; ++q) {
        out.col(q - first) = col;
        col = cwise(col, d);
    }
    return out;
}

}  // namespace

std::vector<TransferMatrix> block_transfers(const DelayNetwork& net, const LekSchedule& sched,
                                            const DelaySpan& span) {
    std::vector<TransferMatrix> out;
    out.reserve(sched.blocks.size());
    for (const auto& leks : sched.blocks) out.push_back(transfer_matrix(net, leks, span));
    return out;
}

ToneChannel tone_channel(const std::vector<TransferMatrix>& blocks, int p, const RootOfUnity& root) {
    ToneChannel tc;
    tc.p = p;
    const Element x = pow(root.alpha, p);
    const auto count = static_cast<Eigen::Index>(blocks.size());
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            Vector g(count);
            for (Eigen::Index l = 0; l < count; ++l) g(l) = eval_transfer(blocks[static_cast<std::size_t>(l)][i][j], x);
            tc.gains[i][j] = std::move(g);
        }
    }
    constexpr std::array<std::pair<int, int>, 4> inverted = {{{0, 1}, {2, 0}, {1, 2}, {2, 1}}};
    for (auto [i, j] : inverted) {
        for (Eigen::Index l = 0; l < count; ++l) {
            if (tc.m(i, j)(l).is_zero())
                throw DegenerateLeks("M" + std::to_string(i + 1) + std::to_string(j + 1) + " vanishes on block " +
                                     std::to_string(l + 1) + " at tone " + std::to_string(p));
        }
    }
    return tc;
}

ToneChannel tone_channel(const DelayNetwork& net, const LekSchedule& sched, const DelaySpan& span, int p,
                         const RootOfUnity& root) {
    return tone_channel(block_transfers(net, sched, span), p, root);
}

PrecodeSet build_precoders(const ToneChannel& tc, int n) {
    if (tc.blocks() != 2 * n + 1)
        throw std::invalid_argument("tone channel has " + std::to_string(tc.blocks()) + " blocks, expected 2n+1 = " +
                                    std::to_string(2 * n + 1));
    PrecodeSet pc;
    pc.p = tc.p;
    pc.n = n;
    const Vector inv12 = cwise_inverse(tc.m(0, 1));
    const Vector inv31 = cwise_inverse(tc.m(2, 0));
    const Vector inv23 = cwise_inverse(tc.m(1, 2));
    const Vector inv32 = cwise_inverse(tc.m(2, 1));
    pc.u = cwise(cwise(cwise(inv12, tc.m(2, 1)), cwise(inv31, tc.m(1, 0))), cwise(inv23, tc.m(0, 2)));
    pc.r = cwise(tc.m(0, 2), inv23);
    pc.s = cwise(tc.m(0, 1), inv32);

    const Vector ones = Vector::Constant(tc.blocks(), Element(1));
    pc.v1 = power_columns(pc.u, ones, 0, n);
    pc.v2 = power_columns(pc.u, pc.r, 0, n - 1);
    pc.v3 = power_columns(pc.u, pc.s, 1, n);
    return pc;
}

Matrix received_block(const ToneChannel& tc, const PrecodeSet& pc, int i, int j) {
    return tc.m(i, j).asDiagonal() * pc.v(i);
}

Matrix decode_matrix(const ToneChannel& tc, const PrecodeSet& pc, int j) {
    const Matrix desired = received_block(tc, pc, j, j);
    const Matrix interference = j == 0 ? received_block(tc, pc, 1, 0) : received_block(tc, pc, 0, j);
    Matrix out(desired.rows(), desired.cols() + interference.cols());
    out << desired, interference;
    return out;
}

std::string AlignmentVerdict::failure() const {
    static constexpr std::array<const char*, 3> spans = {
        "span(M31 V3) not in span(M21 V2)", "span(M32 V3) not in span(M12 V1)", "span(M23 V2) not in span(M13 V1)"};
    for (std::size_t q = 0; q < 3; ++q)
        if (!contained[q]) return spans[q];
    for (int j = 0; j < 3; ++j) {
        if (!full_rank(j))
            return "decode matrix at T" + std::to_string(j + 1) + " has rank " +
                   std::to_string(decode_rank[static_cast<std::size_t>(j)]) + " < " + std::to_string(required_rank);
    }
    return {};
}

AlignmentVerdict check_alignment(const ToneChannel& tc, const PrecodeSet& pc) {
    AlignmentVerdict v;
    v.required_rank = 2 * pc.n + 1;

    auto contained = [](const Matrix& inner, const Matrix& outer) {
        Matrix both(outer.rows(), outer.cols() + inner.cols());
        both << outer, inner;
        return rank(both) == rank(outer);
    };
    const Matrix m21v2 = received_block(tc, pc, 1, 0), m31v3 = received_block(tc, pc, 2, 0);
    const Matrix m12v1 = received_block(tc, pc, 0, 1), m32v3 = received_block(tc, pc, 2, 1);
    const Matrix m13v1 = received_block(tc, pc, 0, 2), m23v2 = received_block(tc, pc, 1, 2);
    const auto n = static_cast<Eigen::Index>(pc.n);

    v.contained = {contained(m31v3, m21v2), contained(m32v3, m12v1), contained(m23v2, m13v1)};
    v.columns_match = {equal(m31v3, m21v2), equal(m32v3, m12v1.rightCols(n)), equal(m23v2, m13v1.leftCols(n))};
    for (int j = 0; j < 3; ++j) v.decode_rank[static_cast<std::size_t>(j)] = rank(decode_matrix(tc, pc, j));
    return v;
}

ToneDecode decode(const ToneChannel& tc, const PrecodeSet& pc, const std::array<Vector, 3>& received) {
    ToneDecode out;
    for (int j = 0; j < 3; ++j) {
        const Matrix a = decode_matrix(tc, pc, j);
        try {
            const Matrix z = solve(a, received[static_cast<std::size_t>(j)]);
            out.rank[static_cast<std::size_t>(j)] = a.cols();
            out.recovered[static_cast<std::size_t>(j)] = z.col(0).head(PrecodeSet::streams(j, pc.n));
        } catch (const RankDeficiency& e) {
            out.rank[static_cast<std::size_t>(j)] = e.achieved();
        }
    }
    return out;
}

}  // namespace netalign
